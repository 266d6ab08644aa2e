//! Quivers with monomial relations, quotient quivers and small isomorphism search.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QwrError {
    #[error("arrow {0} refers to a missing vertex")]
    BadVertex(usize),
    #[error("relation refers to missing arrow {0}")]
    BadArrow(usize),
    #[error("relation ({0},{1}) is not composable")]
    NotComposable(usize, usize),
    #[error("degree {0} is not 0 or 1")]
    BadDegree(u8),
    #[error("arrows {0} and {1} are identified but their endpoints are not")]
    IncompatibleEquivalence(usize, usize),
    #[error("equivalence has {got} entries, expected {expected}")]
    WrongLength { got: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QArrow {
    pub src: usize,
    pub tgt: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u8>,
}

/// Two parallel paths (arrow index lists) declared equal up to the given scalar.
/// Recorded only; never normalized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearRelation {
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub scalar: String,
}

/// Vertices are `0..vertices.len()`, arrows `0..arrows.len()`. A relation
/// `(a, b)` is the path `a` then `b`, so `arrows[a].tgt == arrows[b].src`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QuiverWithRelations {
    pub vertices: Vec<String>,
    pub arrows: Vec<QArrow>,
    #[serde(default)]
    pub relations: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub linear_relations: Vec<LinearRelation>,
}

/// Partitions of vertices and arrows, given as class labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverEquivalence {
    pub vertex_class: Vec<usize>,
    pub arrow_class: Vec<usize>,
}

/// Vertex and arrow bijection `Q1 → Q2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl QuiverWithRelations {
    pub fn new(vertices: Vec<String>) -> Self {
        QuiverWithRelations { vertices, ..Default::default() }
    }

    pub fn add_arrow(&mut self, src: usize, tgt: usize, degree: Option<u8>) -> usize {
        self.arrows.push(QArrow { src, tgt, degree });
        self.arrows.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn validate(&self) -> Result<(), QwrError> {
        let nv = self.vertices.len();
        for (k, a) in self.arrows.iter().enumerate() {
            if a.src >= nv || a.tgt >= nv {
                return Err(QwrError::BadVertex(k));
            }
            if let Some(d) = a.degree {
                if d > 1 {
                    return Err(QwrError::BadDegree(d));
                }
            }
        }
        for &(a, b) in &self.relations {
            for x in [a, b] {
                if x >= self.arrows.len() {
                    return Err(QwrError::BadArrow(x));
                }
            }
            if self.arrows[a].tgt != self.arrows[b].src {
                return Err(QwrError::NotComposable(a, b));
            }
        }
        Ok(())
    }

    pub fn without_degrees(&self) -> Self {
        let mut q = self.clone();
        for a in &mut q.arrows {
            a.degree = None;
        }
        q
    }

    pub fn relation_set(&self) -> HashSet<(usize, usize)> {
        self.relations.iter().copied().collect()
    }

    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&k| self.arrows[k].src == v).collect()
    }

    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&k| self.arrows[k].tgt == v).collect()
    }

    /// True if the underlying directed graph has a directed cycle (loops included).
    pub fn has_oriented_cycle(&self) -> bool {
        self.topological_order().is_none()
    }

    /// Vertices in an order where every arrow goes forward, if one exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let nv = self.vertices.len();
        let mut indeg = vec![0usize; nv];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
        }
        let mut ready: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(nv);
        while let Some(v) = ready.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.src == v) {
                indeg[a.tgt] -= 1;
                if indeg[a.tgt] == 0 {
                    ready.push(a.tgt);
                }
            }
        }
        (order.len() == nv).then_some(order)
    }

    /// A directed cycle as a vertex list, if any.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let nv = self.vertices.len();
        let mut state = vec![0u8; nv];
        let mut stack = Vec::new();
        fn dfs(q: &QuiverWithRelations, v: usize, state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
            state[v] = 1;
            stack.push(v);
            for a in q.arrows.iter().filter(|a| a.src == v) {
                match state[a.tgt] {
                    1 => {
                        let pos = stack.iter().position(|&x| x == a.tgt).unwrap();
                        return Some(stack[pos..].to_vec());
                    }
                    0 => {
                        if let Some(c) = dfs(q, a.tgt, state, stack) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            stack.pop();
            state[v] = 2;
            None
        }
        (0..nv).find_map(|v| if state[v] == 0 { dfs(self, v, &mut state, &mut stack) } else { None })
    }

    /// Vertices on cycles of the underlying undirected multigraph (its 2-core).
    pub fn undirected_core(&self) -> Vec<usize> {
        let nv = self.vertices.len();
        let mut alive = vec![true; nv];
        let mut edges_alive = vec![true; self.arrows.len()];
        // a loop is already a cycle; parallel arrows form a 2-cycle
        loop {
            let mut deg = vec![0usize; nv];
            for (k, a) in self.arrows.iter().enumerate() {
                if edges_alive[k] {
                    deg[a.src] += 1;
                    deg[a.tgt] += 1;
                }
            }
            let leaves: Vec<usize> = (0..nv).filter(|&v| alive[v] && deg[v] <= 1).collect();
            if leaves.is_empty() {
                break;
            }
            for v in leaves {
                alive[v] = false;
                for (k, a) in self.arrows.iter().enumerate() {
                    if a.src == v || a.tgt == v {
                        edges_alive[k] = false;
                    }
                }
            }
        }
        (0..nv).filter(|&v| alive[v]).collect()
    }

    /// Full subquiver on `keep`, with relations between kept arrows.
    pub fn induced(&self, keep: &[usize]) -> QuiverWithRelations {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut out = QuiverWithRelations::new(keep.iter().map(|&v| self.vertices[v].clone()).collect());
        let mut amap = HashMap::new();
        for (k, a) in self.arrows.iter().enumerate() {
            if let (Some(&s), Some(&t)) = (pos.get(&a.src), pos.get(&a.tgt)) {
                amap.insert(k, out.add_arrow(s, t, a.degree));
            }
        }
        for &(a, b) in &self.relations {
            if let (Some(&x), Some(&y)) = (amap.get(&a), amap.get(&b)) {
                out.relations.push((x, y));
            }
        }
        out
    }
}

/// Quotient of a quiver by a compatible equivalence. A length-2 path of
/// classes is a relation when every composable preimage is a relation, or
/// when no composable preimage exists.
pub fn quotient_quiver(q: &QuiverWithRelations, eq: &QuiverEquivalence) -> Result<QuiverWithRelations, QwrError> {
    q.validate()?;
    if eq.vertex_class.len() != q.vertices.len() {
        return Err(QwrError::WrongLength { got: eq.vertex_class.len(), expected: q.vertices.len() });
    }
    if eq.arrow_class.len() != q.arrows.len() {
        return Err(QwrError::WrongLength { got: eq.arrow_class.len(), expected: q.arrows.len() });
    }
    let dense = |labels: &[usize]| -> (Vec<usize>, usize) {
        let mut ids = BTreeMap::new();
        for &l in labels {
            let next = ids.len();
            ids.entry(l).or_insert(next);
        }
        (labels.iter().map(|l| ids[l]).collect(), ids.len())
    };
    let (vc, nvc) = dense(&eq.vertex_class);
    let (ac, nac) = dense(&eq.arrow_class);
    let mut rep: Vec<Option<usize>> = vec![None; nac];
    for (k, a) in q.arrows.iter().enumerate() {
        match rep[ac[k]] {
            None => rep[ac[k]] = Some(k),
            Some(r) => {
                let b = &q.arrows[r];
                if vc[a.src] != vc[b.src] || vc[a.tgt] != vc[b.tgt] {
                    return Err(QwrError::IncompatibleEquivalence(r, k));
                }
            }
        }
    }
    let mut names: Vec<Vec<String>> = vec![Vec::new(); nvc];
    for (v, name) in q.vertices.iter().enumerate() {
        names[vc[v]].push(name.clone());
    }
    let mut out = QuiverWithRelations::new(names.into_iter().map(|n| format!("[{}]", n.join("~"))).collect());
    for c in 0..nac {
        let members: Vec<usize> = (0..q.arrows.len()).filter(|&k| ac[k] == c).collect();
        let a = &q.arrows[members[0]];
        let d0 = a.degree;
        let degree = if members.iter().all(|&k| q.arrows[k].degree == d0) { d0 } else { None };
        out.add_arrow(vc[a.src], vc[a.tgt], degree);
    }
    let rels = q.relation_set();
    for x in 0..nac {
        for y in 0..nac {
            if out.arrows[x].tgt != out.arrows[y].src {
                continue;
            }
            let na = q.arrows.len();
            let all_zero = (0..na)
                .flat_map(|a| (0..na).map(move |b| (a, b)))
                .filter(|&(a, b)| ac[a] == x && ac[b] == y && q.arrows[a].tgt == q.arrows[b].src)
                .all(|p| rels.contains(&p));
            if all_zero {
                out.relations.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Isomorphism preserving sources, targets, relations and degrees where both
/// sides carry them.
pub fn iso_with_relations(q1: &QuiverWithRelations, q2: &QuiverWithRelations) -> Option<Isomorphism> {
    let both = q1.arrows.iter().all(|a| a.degree.is_some()) && q2.arrows.iter().all(|a| a.degree.is_some());
    let class = |q: &QuiverWithRelations| -> Vec<u32> {
        q.arrows.iter().map(|a| if both { u32::from(a.degree.unwrap()) } else { 0 }).collect()
    };
    iso_by_class(q1, &class(q1), q2, &class(q2))
}

/// Isomorphism search where arrows may only map to arrows of the same class.
pub fn iso_by_class(
    q1: &QuiverWithRelations,
    c1: &[u32],
    q2: &QuiverWithRelations,
    c2: &[u32],
) -> Option<Isomorphism> {
    let nv = q1.vertices.len();
    if nv != q2.vertices.len() || q1.arrows.len() != q2.arrows.len() || q1.relations.len() != q2.relations.len() {
        return None;
    }
    let mut m1 = c1.to_vec();
    let mut m2 = c2.to_vec();
    m1.sort_unstable();
    m2.sort_unstable();
    if m1 != m2 {
        return None;
    }
    let g1 = Groups::new(q1, c1);
    let g2 = Groups::new(q2, c2);
    let sig1: Vec<_> = (0..nv).map(|v| g1.signature(v)).collect();
    let sig2: Vec<_> = (0..nv).map(|v| g2.signature(v)).collect();
    // most constrained vertices first
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g1.degree(v)));
    let mut vmap = vec![usize::MAX; nv];
    let mut used = vec![false; nv];
    let ctx = IsoCtx { q1, q2, c1, c2, g1: &g1, g2: &g2, sig1: &sig1, sig2: &sig2, order: &order };
    ctx.vertices(0, &mut vmap, &mut used)
}

type Signature = (Vec<u32>, Vec<u32>, Vec<u32>);

struct Groups {
    /// Arrow indices between an ordered pair of vertices, by class.
    between: HashMap<(usize, usize), Vec<usize>>,
    classes: Vec<u32>,
}

impl Groups {
    fn new(q: &QuiverWithRelations, c: &[u32]) -> Groups {
        let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, a) in q.arrows.iter().enumerate() {
            between.entry((a.src, a.tgt)).or_default().push(k);
        }
        Groups { between, classes: c.to_vec() }
    }

    fn profile(&self, u: usize, v: usize) -> Vec<u32> {
        let mut p: Vec<u32> = self.between.get(&(u, v)).map(|ks| ks.iter().map(|&k| self.classes[k]).collect()).unwrap_or_default();
        p.sort_unstable();
        p
    }

    fn degree(&self, v: usize) -> usize {
        self.between.iter().filter(|((s, t), _)| *s == v || *t == v).map(|(_, ks)| ks.len()).sum()
    }

    fn signature(&self, v: usize) -> Signature {
        let mut out = Vec::new();
        let mut inn = Vec::new();
        for (&(s, t), ks) in &self.between {
            for &k in ks {
                if s == v && t != v {
                    out.push(self.classes[k]);
                }
                if t == v && s != v {
                    inn.push(self.classes[k]);
                }
            }
        }
        out.sort_unstable();
        inn.sort_unstable();
        (out, inn, self.profile(v, v))
    }
}

struct IsoCtx<'a> {
    q1: &'a QuiverWithRelations,
    q2: &'a QuiverWithRelations,
    c1: &'a [u32],
    c2: &'a [u32],
    g1: &'a Groups,
    g2: &'a Groups,
    sig1: &'a [Signature],
    sig2: &'a [Signature],
    order: &'a [usize],
}

impl IsoCtx<'_> {
    fn vertices(&self, depth: usize, vmap: &mut Vec<usize>, used: &mut Vec<bool>) -> Option<Isomorphism> {
        if depth == self.order.len() {
            return self.arrows(vmap);
        }
        let u = self.order[depth];
        for v in 0..used.len() {
            if used[v] || self.sig1[u] != self.sig2[v] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&w| {
                let w2 = vmap[w];
                self.g1.profile(u, w) == self.g2.profile(v, w2) && self.g1.profile(w, u) == self.g2.profile(w2, v)
            });
            if !consistent {
                continue;
            }
            vmap[u] = v;
            used[v] = true;
            if let Some(iso) = self.vertices(depth + 1, vmap, used) {
                return Some(iso);
            }
            used[v] = false;
            vmap[u] = usize::MAX;
        }
        None
    }

    fn arrows(&self, vmap: &[usize]) -> Option<Isomorphism> {
        let na = self.q1.arrows.len();
        let mut amap = vec![usize::MAX; na];
        let mut used = vec![false; na];
        let rel2 = self.q2.relation_set();
        let mut rels_by_arrow: Vec<Vec<(usize, usize)>> = vec![Vec::new(); na];
        for &(a, b) in &self.q1.relations {
            rels_by_arrow[a].push((a, b));
            rels_by_arrow[b].push((a, b));
        }
        self.assign(0, vmap, &mut amap, &mut used, &rel2, &rels_by_arrow)
            .then(|| Isomorphism { vertices: vmap.to_vec(), arrows: amap })
    }

    fn assign(
        &self,
        k: usize,
        vmap: &[usize],
        amap: &mut Vec<usize>,
        used: &mut Vec<bool>,
        rel2: &HashSet<(usize, usize)>,
        rels_by_arrow: &[Vec<(usize, usize)>],
    ) -> bool {
        if k == amap.len() {
            return true;
        }
        let a = &self.q1.arrows[k];
        let key = (vmap[a.src], vmap[a.tgt]);
        let Some(cands) = self.g2.between.get(&key) else { return false };
        for &b in cands {
            if used[b] || self.c1[k] != self.c2[b] {
                continue;
            }
            amap[k] = b;
            let ok = rels_by_arrow[k].iter().all(|&(x, y)| {
                let (fx, fy) = (amap[x], amap[y]);
                fx == usize::MAX || fy == usize::MAX || rel2.contains(&(fx, fy))
            });
            if ok {
                used[b] = true;
                if self.assign(k + 1, vmap, amap, used, rel2, rels_by_arrow) {
                    return true;
                }
                used[b] = false;
            }
            amap[k] = usize::MAX;
        }
        false
    }
}

/// The gentle conditions for a quiver with monomial length-2 relations.
pub fn is_gentle(q: &QuiverWithRelations) -> bool {
    if q.validate().is_err() || !q.linear_relations.is_empty() {
        return false;
    }
    let rels = q.relation_set();
    for v in 0..q.vertices.len() {
        if q.out_arrows(v).len() > 2 || q.in_arrows(v).len() > 2 {
            return false;
        }
    }
    for (a, arrow) in q.arrows.iter().enumerate() {
        let next = q.out_arrows(arrow.tgt);
        let (zero, nonzero): (Vec<usize>, Vec<usize>) = next.iter().partition(|&&b| rels.contains(&(a, b)));
        if zero.len() > 1 || nonzero.len() > 1 {
            return false;
        }
        let prev = q.in_arrows(arrow.src);
        let (zero, nonzero): (Vec<usize>, Vec<usize>) = prev.iter().partition(|&&c| rels.contains(&(c, a)));
        if zero.len() > 1 || nonzero.len() > 1 {
            return false;
        }
    }
    true
}
