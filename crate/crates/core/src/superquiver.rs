//! Superquivers: quivers with relations whose arrows have degree 0 or 1, some
//! of them frozen, and their representations by string modules.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hequiver::{HomExtAlgebra, HomExtQuiver};
use crate::hom::{ext_basis, ext_class_cocycle, graph_map_morphism, graph_maps, ExtClass, GraphMap};
use crate::linalg::{Echelon, Field, Fp};
use crate::oracle::{realize, Representation};
use crate::quiver::Orientation;
use crate::qwr::{iso_by_class, QuiverWithRelations};
use crate::strings::{Component, StringModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperError {
    #[error("arrow {0} has no degree in {{0,1}}")]
    MissingDegree(usize),
    #[error("frozen flags: {got}, arrows: {expected}")]
    FrozenLength { got: usize, expected: usize },
    #[error("path {0},{1} has degree 2 but is not a relation")]
    DegreeTwoPath(usize, usize),
    #[error("arrow {0}: assigned value does not match its endpoints or degree")]
    InconsistentAssignment(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Superquiver {
    pub quiver: QuiverWithRelations,
    pub frozen: Vec<bool>,
}

impl Superquiver {
    pub fn validate(&self) -> Result<(), SuperError> {
        let q = &self.quiver;
        if self.frozen.len() != q.arrows.len() {
            return Err(SuperError::FrozenLength { got: self.frozen.len(), expected: q.arrows.len() });
        }
        for (k, a) in q.arrows.iter().enumerate() {
            if !matches!(a.degree, Some(0 | 1)) {
                return Err(SuperError::MissingDegree(k));
            }
        }
        let rels = q.relation_set();
        for (x, a) in q.arrows.iter().enumerate() {
            for y in q.out_arrows(a.tgt) {
                if a.degree == Some(1) && q.arrows[y].degree == Some(1) && !rels.contains(&(x, y)) {
                    return Err(SuperError::DegreeTwoPath(x, y));
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self, arrow: usize) -> u8 {
        self.quiver.arrows[arrow].degree.unwrap_or(0)
    }

    /// Unfrozen arrows set to degree 0.
    pub fn trivial_twist(&self) -> Superquiver {
        let mut out = self.clone();
        for (a, frozen) in out.quiver.arrows.iter_mut().zip(&self.frozen) {
            if !frozen {
                a.degree = Some(0);
            }
        }
        out
    }

    fn arrow_classes(&self) -> Vec<u32> {
        (0..self.quiver.arrows.len()).map(|k| if self.frozen[k] { 1 + u32::from(self.degree(k)) } else { 0 }).collect()
    }
}

/// Frozen arrows join two regular modules.
pub fn from_homext(q: &Orientation, h: &HomExtQuiver) -> Superquiver {
    let regular: Vec<bool> = h.modules.iter().map(|m| m.is_regular(q)).collect();
    let frozen = h.quiver.arrows.iter().map(|a| regular[a.src] && regular[a.tgt]).collect();
    Superquiver { quiver: h.quiver.clone(), frozen }
}

pub fn components(q: &Orientation, h: &HomExtQuiver) -> Vec<Component> {
    h.modules.iter().map(|m| m.component(q)).collect()
}

/// Isomorphism of quivers with relations sending frozen arrows to frozen
/// arrows of the same degree; unfrozen degrees are ignored.
pub fn twist_equivalent_super(s1: &Superquiver, s2: &Superquiver) -> bool {
    iso_by_class(&s1.quiver.without_degrees(), &s1.arrow_classes(), &s2.quiver.without_degrees(), &s2.arrow_classes())
        .is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ArrowValue {
    Map(GraphMap),
    Extension(ExtClass),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperRepresentation {
    pub modules: Vec<StringModule>,
    pub arrows: Vec<ArrowValue>,
}

/// The representation's graded endomorphism algebra together with the
/// coordinates of each assigned arrow.
struct Evaluated {
    alg: HomExtAlgebra<Fp>,
    values: Vec<Vec<Fp>>,
}

fn evaluate(q: &Orientation, s: &Superquiver, r: &SuperRepresentation) -> Result<Evaluated, SuperError> {
    let reps: Vec<Representation<Fp>> = r.modules.iter().map(|m| realize(q, m)).collect();
    let alg = HomExtAlgebra::new(&q.shape(), &reps);
    let mut values = Vec::new();
    for (k, (a, v)) in s.quiver.arrows.iter().zip(&r.arrows).enumerate() {
        let (x, y) = (a.src, a.tgt);
        let (mx, my) = (&r.modules[x], &r.modules[y]);
        let bad = SuperError::InconsistentAssignment(k);
        let vec = match v {
            ArrowValue::Map(g) => {
                if a.degree != Some(0) || g.source != *mx || g.target != *my {
                    return Err(bad);
                }
                alg.hom_vector(x, y, &graph_map_morphism(q, g))
            }
            ArrowValue::Extension(c) => {
                if a.degree != Some(1) || !ext_basis(q, mx, my).contains(c) {
                    return Err(bad);
                }
                alg.ext_vector(x, y, &ext_class_cocycle(q, mx, my, c))
            }
        };
        values.push(vec);
    }
    Ok(Evaluated { alg, values })
}

/// Every assigned value is nonzero and every relation evaluates to zero.
pub fn check_representation(q: &Orientation, s: &Superquiver, r: &SuperRepresentation) -> Result<bool, SuperError> {
    if r.arrows.len() != s.quiver.arrows.len() || r.modules.len() != s.quiver.vertices.len() {
        return Err(SuperError::InconsistentAssignment(r.arrows.len().min(s.quiver.arrows.len())));
    }
    let ev = evaluate(q, s, r)?;
    if ev.values.iter().any(|v| v.iter().all(Field::is_zero)) {
        return Ok(false);
    }
    let arrows = &s.quiver.arrows;
    Ok(s.quiver.relations.iter().all(|&(a, b)| {
        let (x, y, z) = (arrows[a].src, arrows[a].tgt, arrows[b].tgt);
        ev.alg.product(x, y, z, &ev.values[a], &ev.values[b]).iter().all(Field::is_zero)
    }))
}

/// No assigned arrow lies in the square of the graded radical.
pub fn is_irreducible(q: &Orientation, s: &Superquiver, r: &SuperRepresentation) -> Result<bool, SuperError> {
    let ev = evaluate(q, s, r)?;
    Ok(s.quiver.arrows.iter().zip(&ev.values).all(|(a, v)| !ev.alg.in_rad(2, a.src, a.tgt, v)))
}

/// Graph maps and extension classes for the arrows of a Hom-Ext quiver,
/// chosen from the combinatorial bases so that the result is an irreducible
/// representation satisfying the relations. `None` if no choice works.
pub fn defining_representation(q: &Orientation, h: &HomExtQuiver) -> Option<SuperRepresentation> {
    let s = from_homext(q, h);
    let ms = &h.modules;
    let reps: Vec<Representation<Fp>> = ms.iter().map(|m| realize(q, m)).collect();
    let alg = HomExtAlgebra::new(&q.shape(), &reps);
    let arrows = &h.quiver.arrows;
    // group parallel arrows of equal degree
    let mut groups: Vec<(usize, usize, u8, Vec<usize>)> = Vec::new();
    for (k, a) in arrows.iter().enumerate() {
        let d = a.degree?;
        match groups.iter_mut().find(|g| (g.0, g.1, g.2) == (a.src, a.tgt, d)) {
            Some(g) => g.3.push(k),
            None => groups.push((a.src, a.tgt, d, vec![k])),
        }
    }
    // per group, every choice of basis elements independent modulo rad²
    let mut options: Vec<Vec<Vec<ArrowValue>>> = Vec::new();
    for (x, y, d, ks) in &groups {
        let cands: Vec<(ArrowValue, Vec<Fp>)> = if *d == 0 {
            graph_maps(q, &ms[*x], &ms[*y])
                .into_iter()
                .map(|g| {
                    let v = alg.hom_vector(*x, *y, &graph_map_morphism(q, &g));
                    (ArrowValue::Map(g), v)
                })
                .collect()
        } else {
            ext_basis(q, &ms[*x], &ms[*y])
                .into_iter()
                .map(|c| {
                    let v = alg.ext_vector(*x, *y, &ext_class_cocycle(q, &ms[*x], &ms[*y], &c));
                    (ArrowValue::Extension(c), v)
                })
                .collect()
        };
        let mut choices = Vec::new();
        arrangements(cands.len(), ks.len(), &mut |idx| {
            let mut span = Echelon::new(cands.first().map_or(0, |c| c.1.len()));
            for v in alg.rad_basis(2, *x, *y) {
                span.insert_dense(&v);
            }
            if idx.iter().all(|&i| span.insert_dense(&cands[i].1)) {
                choices.push(idx.iter().map(|&i| cands[i].0.clone()).collect());
            }
        });
        options.push(choices);
    }
    let mut pick = vec![0usize; groups.len()];
    loop {
        if options.iter().any(Vec::is_empty) {
            return None;
        }
        let mut values: Vec<Option<ArrowValue>> = vec![None; arrows.len()];
        for (g, (_, _, _, ks)) in groups.iter().enumerate() {
            for (k, v) in ks.iter().zip(&options[g][pick[g]]) {
                values[*k] = Some(v.clone());
            }
        }
        let r = SuperRepresentation { modules: ms.clone(), arrows: values.into_iter().map(Option::unwrap).collect() };
        if check_representation(q, &s, &r) == Ok(true) {
            return Some(r);
        }
        // next combination
        let mut g = 0;
        loop {
            if g == pick.len() {
                return None;
            }
            pick[g] += 1;
            if pick[g] < options[g].len() {
                break;
            }
            pick[g] = 0;
            g += 1;
        }
    }
}

/// Ordered choices of `k` distinct indices below `n`.
fn arrangements(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                go(n, k, cur, f);
                cur.pop();
            }
        }
    }
    go(n, k, &mut Vec::new(), f);
}
