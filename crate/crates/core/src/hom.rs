//! Graph maps and extension bases between string modules.
//!
//! All strings are read counterclockwise, so a factorization `C = F·E·D` is a
//! pair of cut positions `p ≤ q` in the expanded walk: `F` is letters
//! `[0,p)`, `E` is `[p,q)` and `D` is `[q,len)`. Two counterclockwise
//! substrings are equal up to inversion only if they start at the same vertex
//! and have the same length.

use std::collections::HashMap;

use serde::Serialize;

use crate::linalg::{Field, Mat};
use crate::oracle::{Cocycle, Morphism};
use crate::quiver::{Orientation, Sign};
use crate::strings::StringModule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Cut {
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphMap {
    pub source: StringModule,
    pub target: StringModule,
    /// Quotient factorization of the source.
    pub quotient: Cut,
    /// Submodule factorization of the target.
    pub submodule: Cut,
    pub two_sided: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConnectionSide {
    /// `C1 α C2` with `α` direct, leaving the end of `C1`.
    AfterFirst,
    /// `C2 α⁻¹ C1` with `α` pointing from the start of `C1` to the end of `C2`.
    AfterSecond,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ExtClass {
    Connection { arrow: usize, side: ConnectionSide, middle: StringModule },
    /// A two-sided graph map `C2 → C1` with middle term `F2·E·D1 ⊕ F1·E·D2`.
    GraphMap { map: GraphMap, middle: [StringModule; 2] },
}

fn direct(q: &Orientation, v: i64) -> bool {
    q.sign(v) == Sign::Plus
}

/// Cuts `(p,q)` with `F` lazy or ending in an inverse letter and `D` lazy or
/// starting with a direct letter.
pub fn quotient_factorizations(q: &Orientation, c: &StringModule) -> Vec<Cut> {
    factorizations(q, c, false)
}

/// Cuts with `F` lazy or ending in a direct letter and `D` lazy or starting
/// with an inverse letter.
pub fn submodule_factorizations(q: &Orientation, c: &StringModule) -> Vec<Cut> {
    factorizations(q, c, true)
}

fn factorizations(q: &Orientation, c: &StringModule, sub: bool) -> Vec<Cut> {
    let a = c.start(q) as i64;
    let len = c.len(q);
    let left_ok = |p: usize| p == 0 || direct(q, a + p as i64 - 1) == sub;
    let right_ok = |e: usize| e == len || direct(q, a + e as i64) != sub;
    let mut out = Vec::new();
    for p in (0..=len).filter(|&p| left_ok(p)) {
        for e in (p..=len).filter(|&e| right_ok(e)) {
            out.push(Cut { p, q: e });
        }
    }
    out
}

/// Basis of `Hom(c1, c2)`.
pub fn graph_maps(q: &Orientation, c1: &StringModule, c2: &StringModule) -> Vec<GraphMap> {
    let n = q.n() as i64;
    let (a1, a2) = (c1.start(q) as i64, c2.start(q) as i64);
    let (l1, l2) = (c1.len(q), c2.len(q));
    let mut subs: HashMap<(usize, usize), Vec<Cut>> = HashMap::new();
    for cut in submodule_factorizations(q, c2) {
        subs.entry((q.wrap(a2 + cut.p as i64), cut.q - cut.p)).or_default().push(cut);
    }
    let mut out = Vec::new();
    for quo in quotient_factorizations(q, c1) {
        let key = (q.wrap(a1 + quo.p as i64), quo.q - quo.p);
        let Some(cands) = subs.get(&key) else { continue };
        for &sub in cands {
            let f_pos = quo.p > 0 || sub.p > 0;
            let d_pos = quo.q < l1 || sub.q < l2;
            out.push(GraphMap { source: *c1, target: *c2, quotient: quo, submodule: sub, two_sided: f_pos && d_pos });
        }
    }
    debug_assert!(out.iter().all(|g| (a1 + g.quotient.p as i64 - a2 - g.submodule.p as i64).rem_euclid(n) == 0));
    out
}

/// Arrows joining `c1` and `c2` into a longer string with `c2` as submodule.
pub fn connections(q: &Orientation, c1: &StringModule, c2: &StringModule) -> Vec<(usize, ConnectionSide, StringModule)> {
    let (a1, a2) = (c1.start(q) as i64, c2.start(q) as i64);
    let (l1, l2) = (c1.len(q), c2.len(q));
    let (b1, b2) = (a1 + l1 as i64, a2 + l2 as i64);
    let mut out = Vec::new();
    if direct(q, b1) && q.wrap(b1 + 1) == q.wrap(a2) {
        let middle = StringModule::from_start_len(q, a1, l1 + 1 + l2);
        out.push((q.wrap(b1), ConnectionSide::AfterFirst, middle));
    }
    if !direct(q, b2) && q.wrap(b2 + 1) == q.wrap(a1) {
        let middle = StringModule::from_start_len(q, a2, l2 + 1 + l1);
        let arrow = q.wrap(b2);
        if !out.iter().any(|c| c.0 == arrow) {
            out.push((arrow, ConnectionSide::AfterSecond, middle));
        }
    }
    out
}

/// Basis of `Ext¹(c1, c2)`: connections plus two-sided graph maps `c2 → c1`.
pub fn ext_basis(q: &Orientation, c1: &StringModule, c2: &StringModule) -> Vec<ExtClass> {
    let mut out: Vec<ExtClass> = connections(q, c1, c2)
        .into_iter()
        .map(|(arrow, side, middle)| ExtClass::Connection { arrow, side, middle })
        .collect();
    for g in graph_maps(q, c2, c1).into_iter().filter(|g| g.two_sided) {
        out.push(ExtClass::GraphMap { middle: graph_map_middle_terms(q, &g), map: g });
    }
    out
}

/// Middle terms `F2·E·D1` and `F1·E·D2` of the extension attached to a
/// two-sided graph map `C2 → C1` (quotient side `C2`, submodule side `C1`).
pub fn graph_map_middle_terms(q: &Orientation, g: &GraphMap) -> [StringModule; 2] {
    let (c2, c1) = (&g.source, &g.target);
    let (quo, sub) = (g.quotient, g.submodule);
    let first = StringModule::from_start_len(q, c2.start(q) as i64, quo.p + c1.len(q) - sub.p);
    let second = StringModule::from_start_len(q, c1.start(q) as i64, sub.p + c2.len(q) - quo.p);
    [first, second]
}

pub fn dim_hom(q: &Orientation, c1: &StringModule, c2: &StringModule) -> usize {
    graph_maps(q, c1, c2).len()
}

pub fn dim_ext(q: &Orientation, c1: &StringModule, c2: &StringModule) -> usize {
    ext_basis(q, c1, c2).len()
}

pub fn is_exceptional(q: &Orientation, m: &StringModule) -> bool {
    dim_ext(q, m, m) == 0
}

/// The graph map as a morphism between the walk-ordered realizations.
/// Position `k` of a counterclockwise walk is the `k / n`-th occurrence of its vertex.
pub fn graph_map_morphism<F: Field>(q: &Orientation, g: &GraphMap) -> Morphism<F> {
    let n = q.n();
    let d1 = g.source.dimension_vector(q);
    let d2 = g.target.dimension_vector(q);
    let mut blocks: Vec<Mat<F>> = (0..n).map(|v| Mat::zeros(d2[v], d1[v])).collect();
    let a1 = g.source.start(q) as i64;
    for k in 0..=(g.quotient.q - g.quotient.p) {
        let (x, y) = (g.quotient.p + k, g.submodule.p + k);
        let v = q.wrap(a1 + x as i64);
        blocks[v - 1].set(y / n, x / n, F::one());
    }
    Morphism { blocks }
}

/// A cocycle representing an extension class of `Ext(c1, c2)`, as a single
/// entry on the gluing arrow. For a two-sided graph map `C2 → C1` the glue
/// sits on the arrow just before `E`.
pub fn ext_class_cocycle<F: Field>(q: &Orientation, c1: &StringModule, c2: &StringModule, class: &ExtClass) -> Cocycle<F> {
    let n = q.n();
    let (d1, d2) = (c1.dimension_vector(q), c2.dimension_vector(q));
    let mut blocks: Vec<Mat<F>> = q.arrows().iter().map(|a| Mat::zeros(d2[a.target - 1], d1[a.source - 1])).collect();
    let (l1, l2) = (c1.len(q), c2.len(q));
    // (arrow, position in c1, position in c2)
    let (arrow, x, y) = match class {
        ExtClass::Connection { arrow, side: ConnectionSide::AfterFirst, .. } => (*arrow, l1, 0),
        ExtClass::Connection { arrow, side: ConnectionSide::AfterSecond, .. } => (*arrow, 0, l2),
        ExtClass::GraphMap { map, .. } => {
            let (quo, sub) = (map.quotient, map.submodule);
            let before_e = q.wrap(c2.start(q) as i64 + quo.p as i64 - 1);
            if quo.p > 0 {
                (before_e, sub.p, quo.p - 1)
            } else {
                (before_e, sub.p - 1, quo.p)
            }
        }
    };
    blocks[arrow - 1].set(y / n, x / n, F::one());
    Cocycle { blocks }
}
