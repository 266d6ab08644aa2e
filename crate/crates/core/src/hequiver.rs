//! Hom-Ext quivers of module sets, the order `≤_e` and exceptional orderings.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::annulus::{ArcDiagram, ArcError};
use crate::hom::{dim_ext, dim_hom};
use crate::linalg::{Echelon, Field, Fp, Mat};
use crate::oracle::{realize, Cocycle, Morphism, PairSpaces, Representation};
use crate::quiver::{Orientation, Shape};
use crate::qwr::QuiverWithRelations;
use crate::strings::StringModule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeqError {
    #[error("module set is not exceptional")]
    NotExceptional,
    #[error("quiver has an oriented cycle or loop")]
    CyclicQuiver,
    #[error("module {0} listed twice")]
    Duplicate(StringModule),
    #[error("{0} elements exceed the supported size {1}")]
    TooLarge(usize, usize),
    #[error("arrow {0} -> {1} has neither Hom nor Ext")]
    Inconsistent(usize, usize),
}

impl From<ArcError> for HeqError {
    fn from(_: ArcError) -> Self {
        HeqError::NotExceptional
    }
}

/// Arrow degrees: 0 for morphisms, 1 for extensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomExtQuiver {
    pub modules: Vec<StringModule>,
    pub quiver: QuiverWithRelations,
    /// Facts the builder noticed but could not express as monomial relations.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

pub fn check_distinct(ms: &[StringModule]) -> Result<(), HeqError> {
    let mut seen = HashSet::new();
    for m in ms {
        if !seen.insert(*m) {
            return Err(HeqError::Duplicate(*m));
        }
    }
    Ok(())
}

/// Hom-Ext quiver read off the arc diagram: arrows from complete fans,
/// degrees from the string calculus.
pub fn build_geometric(q: &Orientation, ms: &[StringModule]) -> Result<HomExtQuiver, HeqError> {
    check_distinct(ms)?;
    let diagram = ArcDiagram::from_modules(q, ms);
    let (mut quiver, _) = diagram.tiling_with_points()?;
    quiver.vertices = ms.iter().map(StringModule::to_string).collect();
    for a in quiver.arrows.iter_mut() {
        let (x, y) = (&ms[a.src], &ms[a.tgt]);
        a.degree = if dim_hom(q, x, y) > 0 {
            Some(0)
        } else if dim_ext(q, x, y) > 0 {
            Some(1)
        } else {
            return Err(HeqError::Inconsistent(a.src, a.tgt));
        };
    }
    Ok(HomExtQuiver { modules: ms.to_vec(), quiver, diagnostics: Vec::new() })
}

/// Hom-Ext quiver from the matrix realizations, over the prime field.
/// Defined for arbitrary sets of string modules.
pub fn build_algebraic(q: &Orientation, ms: &[StringModule]) -> Result<HomExtQuiver, HeqError> {
    check_distinct(ms)?;
    let reps: Vec<Representation<Fp>> = ms.iter().map(|m| realize(q, m)).collect();
    let labels = ms.iter().map(StringModule::to_string).collect();
    let alg = HomExtAlgebra::new(&q.shape(), &reps);
    let (quiver, diagnostics) = alg.quiver(labels);
    Ok(HomExtQuiver { modules: ms.to_vec(), quiver, diagnostics })
}

/// `dim Hom ⊕ Ext` between every ordered pair of a set, with the products
/// `H(x,y) × H(y,z) → H(x,z)` and the powers of the graded radical.
///
/// A vector of `H(x,y)` lists Hom coordinates first, then Ext coordinates.
pub struct HomExtAlgebra<F> {
    shape: Shape,
    reps: Vec<Representation<F>>,
    spaces: Vec<Vec<PairSpaces<F>>>,
    ext_cocycles: Vec<Vec<Vec<Cocycle<F>>>>,
    /// `rad[k][x][y]` is the `(k+1)`-th radical power, until it vanishes.
    rad: Vec<Vec<Vec<Echelon<F>>>>,
    rad_gens: Vec<Vec<Vec<F>>>,
}

impl<F: Field> HomExtAlgebra<F> {
    pub fn new(shape: &Shape, reps: &[Representation<F>]) -> Self {
        let m = reps.len();
        let spaces: Vec<Vec<PairSpaces<F>>> =
            (0..m).map(|x| (0..m).map(|y| PairSpaces::new(shape, &reps[x], &reps[y])).collect()).collect();
        let ext_cocycles = (0..m)
            .map(|x| {
                (0..m)
                    .map(|y| (0..spaces[x][y].ext_dim()).map(|k| spaces[x][y].ext_basis_cocycle(shape, k)).collect())
                    .collect()
            })
            .collect();
        let mut alg = HomExtAlgebra {
            shape: shape.clone(),
            reps: reps.to_vec(),
            spaces,
            ext_cocycles,
            rad: Vec::new(),
            rad_gens: Vec::new(),
        };
        alg.rad_gens = (0..m * m).map(|k| alg.radical_generators(k / m, k % m)).collect();
        alg.compute_powers();
        alg
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.spaces[x][y].hom_dim()
    }

    pub fn ext_dim(&self, x: usize, y: usize) -> usize {
        self.spaces[x][y].ext_dim()
    }

    fn total(&self, x: usize, y: usize) -> usize {
        self.hom_dim(x, y) + self.ext_dim(x, y)
    }

    fn unit(&self, x: usize, y: usize, k: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.total(x, y)];
        v[k] = F::one();
        v
    }

    fn radical_generators(&self, x: usize, y: usize) -> Vec<Vec<F>> {
        let (h, e) = (self.hom_dim(x, y), self.ext_dim(x, y));
        let mut out = Vec::new();
        if x != y {
            out.extend((0..h).map(|k| self.unit(x, y, k)));
        } else {
            // End(x) = k·1 ⊕ rad for indecomposable x; rad is the trace-zero part
            let traces: Vec<F> = self.spaces[x][x].hom_basis().iter().map(Morphism::trace).collect();
            match traces.iter().position(|t| !t.is_zero()) {
                Some(k0) => {
                    for k in (0..h).filter(|&k| k != k0) {
                        let mut v = self.unit(x, y, k);
                        v[k0] = traces[k].mul(&traces[k0].inv()).neg();
                        out.push(v);
                    }
                }
                None => out.extend((0..h).map(|k| self.unit(x, y, k))),
            }
        }
        out.extend((0..e).map(|k| self.unit(x, y, h + k)));
        out
    }

    fn morphism(&self, x: usize, y: usize, v: &[F]) -> Morphism<F> {
        let (dx, dy) = (&self.reps[x].dims, &self.reps[y].dims);
        let mut blocks: Vec<Mat<F>> = dx.iter().zip(dy).map(|(&c, &r)| Mat::zeros(r, c)).collect();
        for (k, f) in self.spaces[x][y].hom_basis().iter().enumerate() {
            if !v[k].is_zero() {
                add_scaled(&mut blocks, &f.blocks, &v[k]);
            }
        }
        Morphism { blocks }
    }

    fn cocycle(&self, x: usize, y: usize, v: &[F]) -> Cocycle<F> {
        let h = self.hom_dim(x, y);
        let (dx, dy) = (&self.reps[x].dims, &self.reps[y].dims);
        let mut blocks: Vec<Mat<F>> =
            self.shape.arrows.iter().map(|a| Mat::zeros(dy[a.target - 1], dx[a.source - 1])).collect();
        for (k, c) in self.ext_cocycles[x][y].iter().enumerate() {
            if !v[h + k].is_zero() {
                add_scaled(&mut blocks, &c.blocks, &v[h + k]);
            }
        }
        Cocycle { blocks }
    }

    /// The path `a` then `b`, for `a ∈ H(x,y)` and `b ∈ H(y,z)`.
    pub fn product(&self, x: usize, y: usize, z: usize, a: &[F], b: &[F]) -> Vec<F> {
        let sp = &self.spaces[x][z];
        let (fa, fb) = (self.morphism(x, y, a), self.morphism(y, z, b));
        let mut out = sp.hom_coords(&fb.compose(&fa));
        let (ha, hb) = (self.hom_dim(x, y), self.hom_dim(y, z));
        let mut ext = vec![F::zero(); sp.ext_dim()];
        if a[ha..].iter().any(|c| !c.is_zero()) {
            let pushed = self.cocycle(x, y, a).pushforward(&self.shape, &fb);
            ext = sp.ext_coords(&pushed);
        }
        if b[hb..].iter().any(|c| !c.is_zero()) {
            let pulled = self.cocycle(y, z, b).pullback(&self.shape, &fa);
            for (e, c) in ext.iter_mut().zip(sp.ext_coords(&pulled)) {
                *e = e.add(&c);
            }
        }
        out.extend(ext);
        out
    }

    fn compute_powers(&mut self) {
        let m = self.len();
        let mut level: Vec<Vec<Echelon<F>>> = (0..m)
            .map(|x| {
                (0..m)
                    .map(|y| {
                        let mut e = Echelon::new(self.total(x, y));
                        for g in &self.rad_gens[x * m + y] {
                            e.insert_dense(g);
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        // graded radical of a finite-dimensional algebra is nilpotent
        for _ in 0..=4 * m + 4 {
            let done = level.iter().flatten().all(|e| e.rank() == 0);
            self.rad.push(level.clone());
            if done {
                return;
            }
            let mut next: Vec<Vec<Echelon<F>>> =
                (0..m).map(|x| (0..m).map(|z| Echelon::new(self.total(x, z))).collect()).collect();
            for x in 0..m {
                for y in 0..m {
                    let prev = level[x][y].basis();
                    if prev.is_empty() {
                        continue;
                    }
                    for z in 0..m {
                        for g in &self.rad_gens[y * m + z] {
                            for a in &prev {
                                let p = self.product(x, y, z, a, g);
                                next[x][z].insert_dense(&p);
                            }
                        }
                    }
                }
            }
            level = next;
        }
        panic!("graded radical failed to vanish");
    }

    fn rad_power(&self, k: usize, x: usize, y: usize) -> Option<&Echelon<F>> {
        self.rad.get(k - 1).map(|l| &l[x][y])
    }

    fn rank_in_degree(e: &Echelon<F>, h: usize, degree: u8) -> usize {
        e.pivots().filter(|&p| (p >= h) == (degree == 1)).count()
    }

    /// Dimension of the morphisms `x → y` factoring through the set.
    pub fn rhom_dim(&self, x: usize, y: usize) -> usize {
        self.rad_power(2, x, y).map_or(0, |e| Self::rank_in_degree(e, self.hom_dim(x, y), 0))
    }

    /// Dimension of `Ext(x,y)` modulo pullbacks and pushforwards.
    pub fn reduced_ext_dim(&self, x: usize, y: usize) -> usize {
        let r = self.rad_power(2, x, y).map_or(0, |e| Self::rank_in_degree(e, self.hom_dim(x, y), 1));
        self.ext_dim(x, y) - r
    }

    /// `dim rad^k(x,y)`, zero past nilpotency.
    pub fn rad_dim(&self, k: usize, x: usize, y: usize) -> usize {
        self.rad_power(k, x, y).map_or(0, Echelon::rank)
    }

    /// A basis of `rad^k(x,y)`.
    pub fn rad_basis(&self, k: usize, x: usize, y: usize) -> Vec<Vec<F>> {
        self.rad_power(k, x, y).map_or(Vec::new(), Echelon::basis)
    }

    /// Coordinates of a morphism `x → y` in `H(x,y)`.
    pub fn hom_vector(&self, x: usize, y: usize, f: &Morphism<F>) -> Vec<F> {
        let mut v = self.spaces[x][y].hom_coords(f);
        v.resize(self.total(x, y), F::zero());
        v
    }

    /// Coordinates of the class of a cocycle of `Ext(x,y)` in `H(x,y)`.
    pub fn ext_vector(&self, x: usize, y: usize, c: &Cocycle<F>) -> Vec<F> {
        let mut v = vec![F::zero(); self.hom_dim(x, y)];
        v.extend(self.spaces[x][y].ext_coords(c));
        v
    }

    /// Whether `v ∈ H(x,y)` lies in the `k`-th power of the graded radical.
    pub fn in_rad(&self, k: usize, x: usize, y: usize, v: &[F]) -> bool {
        match self.rad_power(k, x, y) {
            Some(e) => e.contains_dense(v),
            None => v.iter().all(F::is_zero),
        }
    }

    /// Arrow representatives: per pair and degree, elements of `rad` spanning
    /// a complement of `rad²`.
    fn arrow_vectors(&self) -> Vec<(usize, usize, u8, Vec<F>)> {
        let m = self.len();
        let mut out = Vec::new();
        for x in 0..m {
            for y in 0..m {
                let h = self.hom_dim(x, y);
                let mut span = self.rad_power(2, x, y).cloned().unwrap_or_else(|| Echelon::new(self.total(x, y)));
                for g in &self.rad_gens[x * m + y] {
                    let degree = u8::from(g.iter().position(|c| !c.is_zero()).is_some_and(|p| p >= h));
                    if span.insert_dense(g) {
                        out.push((x, y, degree, g.clone()));
                    }
                }
            }
        }
        out
    }

    /// Quiver with length-two monomial relations, plus diagnostics for
    /// anything those relations miss.
    pub fn quiver(&self, labels: Vec<String>) -> (QuiverWithRelations, Vec<String>) {
        let mut arrows = self.arrow_vectors();
        self.adapt_parallel(&mut arrows);
        self.adapt_parallel(&mut arrows);
        let mut qw = QuiverWithRelations::new(labels);
        for (x, y, d, _) in &arrows {
            qw.add_arrow(*x, *y, Some(*d));
        }
        let mut diagnostics = Vec::new();
        // (first arrow, second arrow, composite) keyed by the outer endpoints
        type Products<F> = HashMap<(usize, usize), Vec<(usize, usize, Vec<F>)>>;
        let mut products: Products<F> = HashMap::new();
        for (i, (x, y, _, a)) in arrows.iter().enumerate() {
            for (j, (y2, z, _, b)) in arrows.iter().enumerate() {
                if y != y2 {
                    continue;
                }
                let p = self.product(*x, *y, *z, a, b);
                if p.iter().all(F::is_zero) {
                    qw.relations.push((i, j));
                } else {
                    if self.in_rad(3, *x, *z, &p) {
                        diagnostics.push(format!("product of arrows {i},{j} is nonzero but lies in rad^3"));
                    }
                    products.entry((*x, *z)).or_default().push((i, j, p));
                }
            }
        }
        for ((x, z), ps) in &products {
            let mut e = Echelon::new(self.total(*x, *z));
            for (i, j, p) in ps {
                if !e.insert_dense(p) {
                    diagnostics.push(format!("path {i},{j} is linearly dependent on other length-2 paths {x}->{z}"));
                }
            }
        }
        diagnostics.extend(self.path_diagnostics(&qw, &arrows));
        (qw, diagnostics)
    }

    /// Replace a pair of parallel arrows by a basis adapted to the kernels of
    /// their products with neighbouring arrows.
    fn adapt_parallel(&self, arrows: &mut [(usize, usize, u8, Vec<F>)]) {
        let mut groups: HashMap<(usize, usize, u8), Vec<usize>> = HashMap::new();
        for (k, (x, y, d, _)) in arrows.iter().enumerate() {
            groups.entry((*x, *y, *d)).or_default().push(k);
        }
        let mut keys: Vec<_> = groups.keys().copied().collect();
        keys.sort();
        for key in keys {
            let g = &groups[&key];
            if g.len() != 2 {
                continue;
            }
            let (x, y, _) = key;
            let (v1, v2) = (arrows[g[0]].3.clone(), arrows[g[1]].3.clone());
            let mut lines: Vec<(F, F)> = Vec::new();
            for (k, (s, t, _, w)) in arrows.iter().enumerate() {
                if g.contains(&k) {
                    continue;
                }
                let pair = if *s == y {
                    Some((self.product(x, y, *t, &v1, w), self.product(x, y, *t, &v2, w)))
                } else if *t == x {
                    Some((self.product(*s, x, y, w, &v1), self.product(*s, x, y, w, &v2)))
                } else {
                    None
                };
                if let Some(line) = pair.and_then(|(p1, p2)| kernel_line(&p1, &p2)) {
                    if !lines.iter().any(|l| same_line(l, &line)) {
                        lines.push(line);
                    }
                }
            }
            let combine = |(c1, c2): &(F, F)| -> Vec<F> {
                v1.iter().zip(&v2).map(|(a, b)| a.mul(c1).add(&b.mul(c2))).collect()
            };
            match lines.len() {
                0 => {}
                1 => {
                    let other = if lines[0].1.is_zero() { (F::zero(), F::one()) } else { (F::one(), F::zero()) };
                    arrows[g[0]].3 = combine(&lines[0]);
                    arrows[g[1]].3 = combine(&other);
                }
                _ => {
                    arrows[g[0]].3 = combine(&lines[0]);
                    arrows[g[1]].3 = combine(&lines[1]);
                }
            }
        }
    }

    fn path_diagnostics(&self, qw: &QuiverWithRelations, arrows: &[(usize, usize, u8, Vec<F>)]) -> Vec<String> {
        let mut out = Vec::new();
        if qw.has_oriented_cycle() {
            return out;
        }
        let m = self.len();
        let rel = qw.relation_set();
        // relation-avoiding paths of length k, with their values
        let mut paths: Vec<(Vec<usize>, Vec<F>)> = arrows.iter().enumerate().map(|(k, a)| (vec![k], a.3.clone())).collect();
        let mut k = 1;
        while !paths.is_empty() {
            let mut count = vec![vec![0usize; m]; m];
            for (p, _) in &paths {
                count[arrows[p[0]].0][arrows[*p.last().unwrap()].1] += 1;
            }
            for x in 0..m {
                for y in 0..m {
                    let quotient = self.rad_dim(k, x, y) - self.rad_dim(k + 1, x, y);
                    if count[x][y] != quotient {
                        out.push(format!(
                            "{} paths of length {k} from {x} to {y}, but rad^{k}/rad^{} has dimension {quotient}",
                            count[x][y],
                            k + 1
                        ));
                    }
                }
            }
            let mut next = Vec::new();
            for (p, v) in &paths {
                let last = *p.last().unwrap();
                for (b, arr) in arrows.iter().enumerate() {
                    if arr.0 != arrows[last].1 || rel.contains(&(last, b)) {
                        continue;
                    }
                    let w = self.product(arrows[p[0]].0, arr.0, arr.1, v, &arr.3);
                    let mut p2 = p.clone();
                    p2.push(b);
                    if w.iter().all(F::is_zero) {
                        out.push(format!("relation-avoiding path {p2:?} composes to zero"));
                    } else {
                        next.push((p2, w));
                    }
                }
            }
            paths = next;
            k += 1;
        }
        out
    }
}

fn add_scaled<F: Field>(acc: &mut [Mat<F>], blocks: &[Mat<F>], c: &F) {
    for (a, b) in acc.iter_mut().zip(blocks) {
        for (x, y) in a.data.iter_mut().zip(&b.data) {
            if !y.is_zero() {
                *x = x.add(&y.mul(c));
            }
        }
    }
}

/// Kernel of `(c1,c2) ↦ c1·p1 + c2·p2` when it is exactly a line.
fn kernel_line<F: Field>(p1: &[F], p2: &[F]) -> Option<(F, F)> {
    let z1 = p1.iter().all(F::is_zero);
    let z2 = p2.iter().all(F::is_zero);
    match (z1, z2) {
        (true, true) => None,
        (true, false) => Some((F::one(), F::zero())),
        (false, true) => Some((F::zero(), F::one())),
        (false, false) => {
            let k = p1.iter().position(|c| !c.is_zero())?;
            let t = p2[k].mul(&p1[k].inv());
            let parallel = p1.iter().zip(p2).all(|(a, b)| b == &a.mul(&t));
            parallel.then(|| (t.neg(), F::one()))
        }
    }
}

fn same_line<F: Field>(a: &(F, F), b: &(F, F)) -> bool {
    a.0.mul(&b.1) == a.1.mul(&b.0)
}

/// Reflexive-transitive closure of the arrows of an acyclic quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtPoset {
    below: Vec<Vec<bool>>,
}

impl ExtPoset {
    pub fn from_quiver(q: &QuiverWithRelations) -> Result<ExtPoset, HeqError> {
        let order = q.topological_order().ok_or(HeqError::CyclicQuiver)?;
        let m = q.vertex_count();
        let mut below = vec![vec![false; m]; m];
        for &v in order.iter().rev() {
            below[v][v] = true;
            for a in q.out_arrows(v) {
                let t = q.arrows[a].tgt;
                for w in 0..m {
                    if below[t][w] {
                        below[v][w] = true;
                    }
                }
            }
        }
        Ok(ExtPoset { below })
    }

    /// Relations `x ≤ y` given as pairs over `m` elements.
    pub fn from_pairs(m: usize, pairs: &[(usize, usize)]) -> Result<ExtPoset, HeqError> {
        let mut q = QuiverWithRelations::new(vec![String::new(); m]);
        for &(x, y) in pairs {
            if x != y {
                q.add_arrow(x, y, None);
            }
        }
        Self::from_quiver(&q)
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[x][y]
    }

    /// Number of linear extensions, by dynamic programming over down-sets.
    pub fn count_linear_extensions(&self) -> Result<BigUint, HeqError> {
        let m = self.len();
        if m > 63 {
            return Err(HeqError::TooLarge(m, 63));
        }
        let preds: Vec<u64> = (0..m)
            .map(|y| (0..m).filter(|&x| x != y && self.leq(x, y)).fold(0u64, |acc, x| acc | 1 << x))
            .collect();
        let full = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
        let mut memo: HashMap<u64, BigUint> = HashMap::new();
        Ok(count_from(0, full, &preds, &mut memo))
    }

    /// Every linear extension, by permutation search. Limited to ten elements.
    pub fn brute_force_linear_extensions(&self) -> Result<Vec<Vec<usize>>, HeqError> {
        let m = self.len();
        if m > 10 {
            return Err(HeqError::TooLarge(m, 10));
        }
        let mut out = Vec::new();
        permute(&mut (0..m).collect::<Vec<_>>(), 0, &mut |p| {
            let ok = (0..m).all(|i| (i + 1..m).all(|j| !self.leq(p[j], p[i])));
            if ok {
                out.push(p.to_vec());
            }
        });
        Ok(out)
    }
}

fn count_from(placed: u64, full: u64, preds: &[u64], memo: &mut HashMap<u64, BigUint>) -> BigUint {
    if placed == full {
        return BigUint::one();
    }
    if let Some(c) = memo.get(&placed) {
        return c.clone();
    }
    let mut total = BigUint::zero();
    for (x, &p) in preds.iter().enumerate() {
        if placed & (1 << x) == 0 && p & !placed == 0 {
            total += count_from(placed | 1 << x, full, preds, memo);
        }
    }
    memo.insert(placed, total.clone());
    total
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

pub fn count_linear_extensions(q: &HomExtQuiver) -> Result<BigUint, HeqError> {
    ExtPoset::from_quiver(&q.quiver)?.count_linear_extensions()
}

/// All orderings `(E_1,…,E_m)` of the set with `Hom(E_j,E_i) = 0 = Ext(E_j,E_i)`
/// for `j > i`, found by checking every permutation. Indices refer to `ms`.
pub fn exceptional_orderings(q: &Orientation, ms: &[StringModule]) -> Result<Vec<Vec<usize>>, HeqError> {
    let m = ms.len();
    if m > 10 {
        return Err(HeqError::TooLarge(m, 10));
    }
    let exceptional: Vec<bool> = ms.iter().map(|x| dim_ext(q, x, x) == 0).collect();
    if exceptional.contains(&false) {
        return Ok(Vec::new());
    }
    let blocked: Vec<Vec<bool>> = (0..m)
        .map(|a| (0..m).map(|b| a != b && (dim_hom(q, &ms[a], &ms[b]) > 0 || dim_ext(q, &ms[a], &ms[b]) > 0)).collect())
        .collect();
    let mut out = Vec::new();
    permute(&mut (0..m).collect::<Vec<_>>(), 0, &mut |p| {
        let ok = (0..m).all(|i| (i + 1..m).all(|j| !blocked[p[j]][p[i]]));
        if ok {
            out.push(p.to_vec());
        }
    });
    Ok(out)
}

/// Whether the set can be ordered into an exceptional sequence, decided by
/// acyclicity of its algebraic Hom-Ext quiver.
pub fn is_exceptional_set(q: &Orientation, ms: &[StringModule]) -> bool {
    match build_algebraic(q, ms) {
        Ok(h) => !h.quiver.has_oriented_cycle(),
        Err(_) => false,
    }
}
