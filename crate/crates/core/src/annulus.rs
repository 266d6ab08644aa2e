//! The marked annulus, arcs `a(i,j)[λ]` and arc diagrams.
//!
//! Arcs are handled through lifts to the universal cover, a strip whose lower
//! edge covers the inner boundary and whose upper edge covers the outer one.
//! Marked point `k` lifts to `x = k + t·n` on its edge, with `x` increasing
//! clockwise. An arc from `i` runs clockwise to `j`, so its lift is the chord
//! from `x = i` to `x = i + s` where `s = 1 + ((j−i−1) mod n) + |λ|·n`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{Boundary, Orientation};
use crate::qwr::QuiverWithRelations;
use crate::strings::{BandPower, Component, Normalized, StringModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcError {
    #[error("marked point {0} out of range 1..={1}")]
    OutOfRange(usize, usize),
    #[error("winding number {lambda} has the wrong sign for an arc starting at {i}")]
    BadWinding { i: usize, lambda: i64 },
    #[error("band powers correspond to closed curves, not arcs")]
    NotAString,
    #[error("diagram has {got} arcs, expected {expected}")]
    WrongCardinality { got: usize, expected: usize },
    #[error("arcs {0} and {1} intersect nontrivially")]
    Crossing(Arc, Arc),
    #[error("arc diagram is not exceptional")]
    NotExceptional,
    #[error("arc diagram does not enclose the inner boundary")]
    NotComplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub i: usize,
    pub j: usize,
    pub lambda: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClosedCurve {
    pub winding: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub boundary: Boundary,
    pub x: i64,
}

/// A lift with `start.x < end.x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lift {
    pub start: Endpoint,
    pub end: Endpoint,
}

impl Lift {
    pub fn new(q: &Orientation, x0: i64, x1: i64) -> Lift {
        assert_ne!(x0, x1, "degenerate lift");
        let (a, b) = if x0 < x1 { (x0, x1) } else { (x1, x0) };
        Lift {
            start: Endpoint { boundary: q.boundary(a), x: a },
            end: Endpoint { boundary: q.boundary(b), x: b },
        }
    }

    pub fn shifted(&self, dx: i64) -> Lift {
        let mv = |e: Endpoint| Endpoint { boundary: e.boundary, x: e.x + dx };
        Lift { start: mv(self.start), end: mv(self.end) }
    }

    pub fn endpoints(&self) -> [Endpoint; 2] {
        [self.start, self.end]
    }
}

/// Position on the boundary of the strip, read along the inner edge left to
/// right and then along the outer edge right to left.
fn circle_key(e: Endpoint) -> (u8, i64) {
    match e.boundary {
        Boundary::Inner => (0, e.x),
        Boundary::Outer => (1, -e.x),
    }
}

/// Two chords of the strip cross in their interiors.
fn chords_cross(l1: &Lift, l2: &Lift) -> bool {
    let (mut p1, mut p2) = (circle_key(l1.start), circle_key(l1.end));
    if p1 > p2 {
        std::mem::swap(&mut p1, &mut p2);
    }
    let (k1, k2) = (circle_key(l2.start), circle_key(l2.end));
    if [k1, k2].iter().any(|k| *k == p1 || *k == p2) {
        return false;
    }
    let inside = |k: (u8, i64)| p1 < k && k < p2;
    inside(k1) != inside(k2)
}

/// Deck shifts `t` for which `l2 + t·n` can meet `l1`.
fn shift_range(n: i64, l1: &Lift, l2: &Lift) -> std::ops::RangeInclusive<i64> {
    let lo = (l1.start.x - l2.end.x).div_euclid(n) - 1;
    let hi = (l1.end.x - l2.start.x).div_euclid(n) + 1;
    lo..=hi
}

impl Arc {
    pub fn new(q: &Orientation, i: usize, j: usize, lambda: i64) -> Result<Arc, ArcError> {
        let arc = Arc { i, j, lambda };
        arc.validate(q)?;
        Ok(arc)
    }

    pub fn validate(&self, q: &Orientation) -> Result<(), ArcError> {
        let n = q.n();
        for v in [self.i, self.j] {
            if v < 1 || v > n {
                return Err(ArcError::OutOfRange(v, n));
            }
        }
        let bridging = q.boundary(self.i as i64) != q.boundary(self.j as i64);
        let inner_start = q.boundary(self.i as i64) == Boundary::Inner;
        let ok = if bridging && inner_start { self.lambda <= 0 } else { self.lambda >= 0 };
        if ok {
            Ok(())
        } else {
            Err(ArcError::BadWinding { i: self.i, lambda: self.lambda })
        }
    }

    /// Clockwise extent of the lift.
    pub fn span(&self, q: &Orientation) -> i64 {
        let n = q.n() as i64;
        1 + (self.j as i64 - self.i as i64 - 1).rem_euclid(n) + self.lambda.abs() * n
    }

    pub fn lift(&self, q: &Orientation) -> Lift {
        Lift::new(q, self.i as i64, self.i as i64 + self.span(q))
    }

    /// The arc whose lift has endpoints `x0` and `x1`.
    pub fn from_lift(q: &Orientation, x0: i64, x1: i64) -> Arc {
        let n = q.n() as i64;
        let l = Lift::new(q, x0, x1);
        let (i, j) = (q.wrap(l.start.x), q.wrap(l.end.x));
        let s = l.end.x - l.start.x;
        let winding = (s - 1 - (j as i64 - i as i64 - 1).rem_euclid(n)) / n;
        let bridging = l.start.boundary != l.end.boundary;
        let lambda = if bridging && l.start.boundary == Boundary::Inner { -winding } else { winding };
        Arc { i, j, lambda }
    }

    pub fn is_bridging(&self, q: &Orientation) -> bool {
        q.boundary(self.i as i64) != q.boundary(self.j as i64)
    }

    pub fn is_closed(&self) -> bool {
        self.i == self.j
    }

    pub fn is_loop(&self, q: &Orientation) -> bool {
        self.is_closed() && !self_intersects(q, self)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a({},{})[{}]", self.i, self.j, self.lambda)
    }
}

pub fn phi(q: &Orientation, m: &StringModule) -> Arc {
    let l = m.l as i64;
    let lambda = if m.component(q) == Component::Preinjective { -l } else { l };
    Arc { i: m.i, j: m.j, lambda }
}

pub fn phi_normalized(q: &Orientation, m: &Normalized) -> Result<Arc, ArcError> {
    match m {
        Normalized::String(s) => Ok(phi(q, s)),
        Normalized::Band(_) => Err(ArcError::NotAString),
    }
}

pub fn phi_inv(q: &Orientation, a: &Arc) -> Result<StringModule, ArcError> {
    a.validate(q)?;
    Ok(StringModule { i: a.i, j: a.j, l: a.lambda.unsigned_abs() as usize })
}

pub fn psi(b: &BandPower) -> ClosedCurve {
    ClosedCurve { winding: b.l }
}

pub fn intersect_nontrivially(q: &Orientation, a1: &Arc, a2: &Arc) -> bool {
    let n = q.n() as i64;
    let (l1, l2) = (a1.lift(q), a2.lift(q));
    shift_range(n, &l1, &l2).any(|t| !(a1 == a2 && t == 0) && chords_cross(&l1, &l2.shifted(t * n)))
}

pub fn self_intersects(q: &Orientation, a: &Arc) -> bool {
    let n = q.n() as i64;
    let l = a.lift(q);
    shift_range(n, &l, &l).any(|t| t != 0 && chords_cross(&l, &l.shifted(t * n)))
}

/// Sort key of the far endpoint of an arc in the fan at `p`, once the lift is
/// placed with its near endpoint at `x = p`.
fn fan_key(q: &Orientation, p: i64, other: Endpoint) -> (u8, i64) {
    if other.boundary != q.boundary(p) {
        (1, other.x)
    } else if other.x < p {
        (0, p - other.x)
    } else {
        (2, -other.x)
    }
}

/// Far endpoints of the lift when placed at marked point `p`, one per
/// endpoint of the arc lying over `p`.
fn far_ends_at(q: &Orientation, lift: &Lift, p: usize) -> Vec<Endpoint> {
    let mut out = Vec::new();
    for (near, far) in [(lift.start, lift.end), (lift.end, lift.start)] {
        if q.wrap(near.x) == p {
            let dx = p as i64 - near.x;
            out.push(Endpoint { boundary: far.boundary, x: far.x + dx });
        }
    }
    out
}

/// Fan order comparison at `p`: `Greater` means later (more clockwise).
fn fan_cmp(q: &Orientation, p: usize, k1: (u8, i64), k2: (u8, i64)) -> Ordering {
    match q.boundary(p as i64) {
        Boundary::Inner => k1.cmp(&k2),
        Boundary::Outer => k2.cmp(&k1),
    }
}

/// Whether `a1` is clockwise from `a2` at some shared endpoint.
pub fn clockwise_from(q: &Orientation, a1: &Arc, a2: &Arc) -> Result<bool, ArcError> {
    if intersect_nontrivially(q, a1, a2) {
        return Err(ArcError::Crossing(*a1, *a2));
    }
    let (l1, l2) = (a1.lift(q), a2.lift(q));
    for p in 1..=q.n() {
        for f1 in far_ends_at(q, &l1, p) {
            for f2 in far_ends_at(q, &l2, p) {
                let (k1, k2) = (fan_key(q, p as i64, f1), fan_key(q, p as i64, f2));
                if fan_cmp(q, p, k1, k2) == Ordering::Greater {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Whether the clockwise relation on `arcs` has a directed cycle.
pub fn forms_cycle(q: &Orientation, arcs: &[Arc]) -> Result<bool, ArcError> {
    let m = arcs.len();
    let mut adj = vec![Vec::new(); m];
    for x in 0..m {
        for y in 0..m {
            if x != y && clockwise_from(q, &arcs[x], &arcs[y])? {
                adj[x].push(y);
            }
        }
    }
    let mut state = vec![0u8; m];
    fn dfs(v: usize, adj: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[v] = 1;
        for &w in &adj[v] {
            if state[w] == 1 || (state[w] == 0 && dfs(w, adj, state)) {
                return true;
            }
        }
        state[v] = 2;
        false
    }
    Ok((0..m).any(|v| state[v] == 0 && dfs(v, &adj, &mut state)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDiagram {
    pub epsilon: Orientation,
    pub arcs: Vec<Arc>,
}

/// No self-intersections or closed arcs, no duplicates, no crossings, no cycles.
pub fn is_exceptional_arcs(q: &Orientation, arcs: &[Arc]) -> bool {
    for (k, a) in arcs.iter().enumerate() {
        if a.validate(q).is_err() || a.is_closed() || self_intersects(q, a) || arcs[..k].contains(a) {
            return false;
        }
    }
    for x in 0..arcs.len() {
        for y in 0..x {
            if intersect_nontrivially(q, &arcs[x], &arcs[y]) {
                return false;
            }
        }
    }
    !forms_cycle(q, arcs).unwrap_or(true)
}

impl ArcDiagram {
    pub fn new(epsilon: Orientation, arcs: Vec<Arc>) -> Self {
        ArcDiagram { epsilon, arcs }
    }

    pub fn from_modules(q: &Orientation, ms: &[StringModule]) -> Self {
        ArcDiagram { epsilon: q.clone(), arcs: ms.iter().map(|m| phi(q, m)).collect() }
    }

    pub fn is_exceptional(&self) -> Result<bool, ArcError> {
        let n = self.epsilon.n();
        if self.arcs.len() != n {
            return Err(ArcError::WrongCardinality { got: self.arcs.len(), expected: n });
        }
        Ok(is_exceptional_arcs(&self.epsilon, &self.arcs))
    }

    /// Indices of the arcs at marked point `p`, in clockwise fan order.
    pub fn fan(&self, p: usize) -> Vec<usize> {
        let q = &self.epsilon;
        let mut entries: Vec<((u8, i64), usize)> = Vec::new();
        for (k, a) in self.arcs.iter().enumerate() {
            for far in far_ends_at(q, &a.lift(q), p) {
                entries.push((fan_key(q, p as i64, far), k));
            }
        }
        entries.sort_by(|x, y| fan_cmp(q, p, x.0, y.0).then(x.1.cmp(&y.1)));
        entries.into_iter().map(|e| e.1).collect()
    }

    pub fn complete_fan(&self, p: usize) -> Vec<Arc> {
        self.fan(p).into_iter().map(|k| self.arcs[k]).collect()
    }

    /// Tiling quiver together with the marked point each arrow comes from.
    pub fn tiling_with_points(&self) -> Result<(QuiverWithRelations, Vec<usize>), ArcError> {
        if !self.is_exceptional()? {
            return Err(ArcError::NotExceptional);
        }
        let mut quiver = QuiverWithRelations::new(self.arcs.iter().map(Arc::to_string).collect());
        let mut points = Vec::new();
        for p in 1..=self.epsilon.n() {
            let fan = self.fan(p);
            for w in fan.windows(2) {
                // the later arc is immediately clockwise of the earlier one
                quiver.add_arrow(w[1], w[0], None);
                points.push(p);
            }
        }
        for x in 0..quiver.arrows.len() {
            for y in 0..quiver.arrows.len() {
                if quiver.arrows[x].tgt == quiver.arrows[y].src && points[x] != points[y] {
                    quiver.relations.push((x, y));
                }
            }
        }
        Ok((quiver, points))
    }

    pub fn tiling_algebra(&self) -> Result<QuiverWithRelations, ArcError> {
        Ok(self.tiling_with_points()?.0)
    }

    /// Every set of arcs forming a closed chain `γ_1 → γ_2 → … → γ_1`, where
    /// each arc ends at the marked point the next one starts from.
    pub fn end_to_start_cycles(&self) -> Vec<Vec<usize>> {
        let m = self.arcs.len();
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut path = Vec::new();
        let mut used = vec![false; m];
        fn extend(
            d: &ArcDiagram,
            first: usize,
            path: &mut Vec<usize>,
            used: &mut [bool],
            found: &mut Vec<Vec<usize>>,
        ) {
            let last = d.arcs[*path.last().unwrap()];
            for k in first..d.arcs.len() {
                if d.arcs[k].i != last.j {
                    continue;
                }
                if k == first {
                    let mut c = path.clone();
                    c.sort_unstable();
                    if !found.contains(&c) {
                        found.push(c);
                    }
                } else if !used[k] {
                    used[k] = true;
                    path.push(k);
                    extend(d, first, path, used, found);
                    path.pop();
                    used[k] = false;
                }
            }
        }
        for first in 0..m {
            used[first] = true;
            path.push(first);
            extend(self, first, &mut path, &mut used, &mut found);
            path.pop();
            used[first] = false;
        }
        found
    }

    /// Smallest end-to-start chain of arcs; it encloses the inner boundary.
    pub fn heart(&self) -> Result<Vec<usize>, ArcError> {
        self.end_to_start_cycles().into_iter().min_by_key(Vec::len).ok_or(ArcError::NotComplete)
    }

    /// Arcs on the unoriented cycle of the tiling quiver.
    pub fn extended_heart(&self) -> Result<Vec<usize>, ArcError> {
        self.heart()?;
        Ok(self.tiling_algebra()?.undirected_core())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::is_exceptional;
    use crate::strings::all_strings;

    fn q(s: &str) -> Orientation {
        s.parse().unwrap()
    }

    fn m(s: &str) -> StringModule {
        s.parse().unwrap()
    }

    fn example() -> ArcDiagram {
        let q = q("+-+-");
        let ms: Vec<StringModule> = ["(4,2;0)", "(1,3;0)", "(4,3;0)", "(3,4;0)"].iter().map(|s| m(s)).collect();
        ArcDiagram::from_modules(&q, &ms)
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&q("+--"), &m("(3,1;1)")), Arc { i: 3, j: 1, lambda: -1 });
        assert_eq!(phi(&q("+-+-"), &m("(3,4;0)")), Arc { i: 3, j: 4, lambda: 0 });
    }

    #[test]
    fn phi_round_trip() {
        for n in 2..=5 {
            for q in Orientation::all(n) {
                for s in all_strings(&q, 3) {
                    let a = phi(&q, &s);
                    assert_eq!(phi_inv(&q, &a).unwrap(), s);
                    assert_eq!(Arc::from_lift(&q, a.lift(&q).start.x, a.lift(&q).end.x), a);
                }
            }
        }
    }

    #[test]
    fn closed_curves() {
        assert_eq!(psi(&BandPower { l: 1 }).winding, 1);
        assert_eq!(psi(&BandPower { l: 2 }).winding, 2);
        assert!(phi_normalized(&q("+-"), &Normalized::Band(BandPower { l: 1 })).is_err());
    }

    #[test]
    fn example_diagram() {
        let d = example();
        assert_eq!(d.is_exceptional(), Ok(true));
        let q = &d.epsilon;
        for a in &d.arcs {
            for b in &d.arcs {
                assert!(!intersect_nontrivially(q, a, b));
            }
        }
        let names = |v: Vec<Arc>| v.iter().map(Arc::to_string).collect::<Vec<_>>();
        assert_eq!(names(d.complete_fan(3)), ["a(3,4)[0]", "a(4,3)[0]", "a(1,3)[0]"]);
        assert_eq!(names(d.complete_fan(4)), ["a(3,4)[0]", "a(4,3)[0]", "a(4,2)[0]"]);
        assert_eq!(names(d.complete_fan(2)), ["a(4,2)[0]"]);
        assert_eq!(names(d.complete_fan(1)), ["a(1,3)[0]"]);
        let (c, e) = (d.arcs[2], d.arcs[3]);
        assert_eq!(clockwise_from(q, &c, &e), Ok(true));
        assert_eq!(d.heart().unwrap(), vec![2, 3]);
        let ext = d.extended_heart().unwrap();
        assert!(ext.contains(&2) && ext.contains(&3));
    }

    #[test]
    fn disjoint_exterior_arcs() {
        let q = q("++++-");
        let (a, b) = (Arc { i: 1, j: 2, lambda: 0 }, Arc { i: 3, j: 4, lambda: 0 });
        assert!(!intersect_nontrivially(&q, &a, &b));
        assert_eq!(clockwise_from(&q, &a, &b), Ok(false));
        assert_eq!(clockwise_from(&q, &b, &a), Ok(false));
    }

    #[test]
    fn windings_two_apart_cross() {
        let q = q("+--");
        for lam in 0..4 {
            let a = Arc { i: 1, j: 2, lambda: lam };
            let b = Arc { i: 1, j: 2, lambda: lam + 1 };
            let c = Arc { i: 1, j: 2, lambda: lam + 2 };
            assert!(!intersect_nontrivially(&q, &a, &b));
            assert!(intersect_nontrivially(&q, &a, &c));
        }
    }

    #[test]
    fn crossing_two_lift_oracle() {
        // brute force: explicit lifts of a2 over a wide range of sheets
        for q in Orientation::all(4) {
            let arcs: Vec<Arc> = all_strings(&q, 2).iter().map(|s| phi(&q, s)).collect();
            for a in &arcs {
                for b in &arcs {
                    let (l1, l2) = (a.lift(&q), b.lift(&q));
                    let brute = (-20..=20).any(|t| !(a == b && t == 0) && chords_cross(&l1, &l2.shifted(4 * t)));
                    assert_eq!(brute, intersect_nontrivially(&q, a, b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn self_intersection_and_loops() {
        let q = q("+-+-");
        assert!(Arc { i: 1, j: 1, lambda: 0 }.is_loop(&q));
        assert!(self_intersects(&q, &Arc { i: 1, j: 3, lambda: 1 }));
        assert!(!self_intersects(&q, &Arc { i: 1, j: 2, lambda: 3 }));
        let mut d = example();
        d.arcs[0] = Arc { i: 1, j: 1, lambda: 0 };
        assert_eq!(d.is_exceptional(), Ok(false));
        d.arcs.pop();
        assert!(matches!(d.is_exceptional(), Err(ArcError::WrongCardinality { .. })));
    }

    #[test]
    fn exceptional_modules_are_simple_arcs() {
        for q in Orientation::all(5) {
            for s in all_strings(&q, 3) {
                let a = phi(&q, &s);
                assert_eq!(is_exceptional(&q, &s), !a.is_closed() && !self_intersects(&q, &a), "{q} {s}");
            }
        }
    }

    #[test]
    fn kronecker_tiling() {
        let q = q("+-");
        let d = ArcDiagram::from_modules(&q, &[StringModule::simple(&q, 1), StringModule::simple(&q, 2)]);
        let t = d.tiling_algebra().unwrap();
        assert_eq!(t.arrows.len(), 2);
        assert!(t.arrows.iter().all(|a| (a.src, a.tgt) == (0, 1)));
        assert!(t.relations.is_empty());
        assert_eq!(d.heart().unwrap(), vec![0, 1]);
    }

    #[test]
    fn json_shape() {
        let d = example();
        let v: serde_json::Value = serde_json::to_value(&d).unwrap();
        assert_eq!(v["epsilon"], "+-+-");
        assert_eq!(v["arcs"][0], serde_json::json!({"i": 4, "j": 2, "lambda": 0}));
    }
}
