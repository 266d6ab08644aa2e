//! Elementary Dehn twists of the annulus acting on string modules, twist
//! equivalence of module sets and classification by Hom-Ext quiver.
//!
//! `T_L` rotates the outer boundary so that each outer marked point moves to
//! the previous outer marked point; `T_R` rotates the inner boundary so that
//! each inner marked point moves to the next one. On lifts these moves only
//! touch the endpoints on the relevant edge.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::annulus::{phi, phi_inv, Arc, ArcDiagram};
use crate::hequiver::{build_geometric, HeqError, HomExtQuiver};
use crate::quiver::{Boundary, Orientation};
use crate::qwr::{iso_with_relations, Isomorphism};
use crate::strings::{Component, End, HookKind, StringModule};

pub const DEFAULT_WINDOW: i64 = 3;

/// `T_L^a T_R^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwistWord {
    pub a: i64,
    pub b: i64,
}

impl TwistWord {
    pub const IDENTITY: TwistWord = TwistWord { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        TwistWord { a, b }
    }

    pub fn inverse(self) -> Self {
        TwistWord { a: -self.a, b: -self.b }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("Hom-Ext quivers are isomorphic but no twist word within window {0} relates the sets")]
    WindowExhausted(i64),
    #[error("twist word {0:?} relates the sets but their Hom-Ext quivers are not isomorphic")]
    Disagreement(TwistWord),
    #[error("no twist word relates the sets, but {0:?} does after swapping the boundaries")]
    BoundarySwap(Equivalence),
    #[error(transparent)]
    Quiver(#[from] HeqError),
}

/// Move every endpoint on `side` by `steps` marked points of that side;
/// positive steps move clockwise (increasing `x`).
fn rotate(q: &Orientation, m: &StringModule, side: Boundary, steps: i64) -> StringModule {
    let lift = phi(q, m).lift(q);
    let mv = |x: i64| if q.boundary(x) == side { step_along(q, side, x, steps) } else { x };
    let arc = Arc::from_lift(q, mv(lift.start.x), mv(lift.end.x));
    phi_inv(q, &arc).expect("rotations preserve arcs")
}

fn step_along(q: &Orientation, side: Boundary, mut x: i64, steps: i64) -> i64 {
    let dir = steps.signum();
    for _ in 0..steps.abs() {
        x += dir;
        while q.boundary(x) != side {
            x += dir;
        }
    }
    x
}

pub fn twist_l(q: &Orientation, m: &StringModule) -> StringModule {
    rotate(q, m, Boundary::Outer, -1)
}

pub fn twist_l_inv(q: &Orientation, m: &StringModule) -> StringModule {
    rotate(q, m, Boundary::Outer, 1)
}

pub fn twist_r(q: &Orientation, m: &StringModule) -> StringModule {
    rotate(q, m, Boundary::Inner, 1)
}

pub fn twist_r_inv(q: &Orientation, m: &StringModule) -> StringModule {
    rotate(q, m, Boundary::Inner, -1)
}

pub fn twist(q: &Orientation, m: &StringModule, w: TwistWord) -> StringModule {
    let m = rotate(q, m, Boundary::Outer, -w.a);
    rotate(q, &m, Boundary::Inner, w.b)
}

/// `T_L` through the hook calculus: up a ray for non-regular modules and
/// `τ^{-1}` on the left tube. `None` where the hook move is undefined.
pub fn twist_l_hooks(q: &Orientation, m: &StringModule) -> Option<StringModule> {
    match m.component(q) {
        Component::Preprojective => m.hook_op(q, HookKind::AddHook, End::Start).ok(),
        Component::Preinjective => m.hook_op(q, HookKind::DeleteCohook, End::End).ok(),
        Component::LeftRegular => {
            let up = m.hook_op(q, HookKind::AddHook, End::Start).ok()?;
            up.hook_op(q, HookKind::DeleteCohook, End::End).ok()
        }
        Component::RightRegular => Some(*m),
    }
}

/// `T_R` through the hook calculus, dual to [`twist_l_hooks`].
pub fn twist_r_hooks(q: &Orientation, m: &StringModule) -> Option<StringModule> {
    match m.component(q) {
        Component::Preprojective => m.hook_op(q, HookKind::AddHook, End::End).ok(),
        Component::Preinjective => m.hook_op(q, HookKind::DeleteCohook, End::Start).ok(),
        Component::RightRegular => {
            let up = m.hook_op(q, HookKind::AddHook, End::End).ok()?;
            up.hook_op(q, HookKind::DeleteCohook, End::Start).ok()
        }
        Component::LeftRegular => Some(*m),
    }
}

/// Elementwise action, returned sorted.
pub fn twist_set(q: &Orientation, ms: &[StringModule], w: TwistWord) -> Vec<StringModule> {
    let mut out: Vec<StringModule> = ms.iter().map(|m| twist(q, m, w)).collect();
    out.sort();
    out
}

pub fn twist_diagram(d: &ArcDiagram, w: TwistWord) -> ArcDiagram {
    let q = &d.epsilon;
    let arcs = d
        .arcs
        .iter()
        .map(|a| {
            let m = phi_inv(q, a).expect("diagram arcs are valid");
            phi(q, &twist(q, &m, w))
        })
        .collect();
    ArcDiagram::new(q.clone(), arcs)
}

/// `T_L^p = T_R^q` on labels, with `p`, `q` the numbers of outer and inner
/// marked points: both are the full Dehn twist about the core.
pub fn kernel_word(q: &Orientation) -> TwistWord {
    TwistWord { a: q.outer_count() as i64, b: -(q.inner_count() as i64) }
}

/// Representative of `w` modulo the kernel with the least `|a| + |b|`.
pub fn reduce_word(q: &Orientation, w: TwistWord) -> TwistWord {
    let k = kernel_word(q);
    let lo = (w.a.div_euclid(k.a)).min(w.b.div_euclid(k.b)) - 1;
    let hi = (w.a.div_euclid(k.a)).max(w.b.div_euclid(k.b)) + 1;
    (lo..=hi)
        .map(|s| TwistWord { a: w.a - s * k.a, b: w.b - s * k.b })
        .min_by_key(|v| (v.a.abs() + v.b.abs(), *v))
        .unwrap()
}

fn sorted(ms: &[StringModule]) -> Vec<StringModule> {
    let mut v = ms.to_vec();
    v.sort();
    v
}

/// A word `w` with `twist_set(χ1, w) = χ2`, searched over words equivalent to
/// `|a| ≤ window·p`, `|b| ≤ window·q`.
pub fn find_twist(q: &Orientation, chi1: &[StringModule], chi2: &[StringModule], window: i64) -> Option<TwistWord> {
    let target = sorted(chi2);
    let k = kernel_word(q);
    let (p, iq) = (k.a, -k.b);
    let mut found: Vec<TwistWord> = Vec::new();
    for b in 0..iq {
        for a in -2 * window * p - p..=2 * window * p + p {
            let w = TwistWord { a, b };
            if twist_set(q, chi1, w) == target {
                found.push(reduce_word(q, w));
            }
        }
    }
    found.into_iter().min_by_key(|v| (v.a.abs() + v.b.abs(), *v))
}

/// Reflections `v ↦ c − v` that are automorphisms of the quiver, as values of
/// `c` in `0..n`. Each exchanges the two boundary components of the annulus.
pub fn boundary_swaps(q: &Orientation) -> Vec<i64> {
    let n = q.n() as i64;
    (0..n).filter(|c| (1..=n).all(|k| q.sign(c - k - 1) == q.sign(k).flip())).collect()
}

/// Image of a string module under the reflection `v ↦ c − v`.
pub fn swap_boundaries(q: &Orientation, m: &StringModule, c: i64) -> StringModule {
    let (s, l) = (m.start(q) as i64, m.len(q));
    StringModule::from_start_len(q, c - s - l as i64, l)
}

pub fn swap_set(q: &Orientation, ms: &[StringModule], c: i64) -> Vec<StringModule> {
    sorted(&ms.iter().map(|m| swap_boundaries(q, m, c)).collect::<Vec<_>>())
}

/// A twist word, optionally preceded by a boundary swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub swap: Option<i64>,
    pub word: TwistWord,
}

/// Like [`find_twist`], also trying each boundary swap first.
pub fn find_equivalence(q: &Orientation, chi1: &[StringModule], chi2: &[StringModule], window: i64) -> Option<Equivalence> {
    if let Some(word) = find_twist(q, chi1, chi2, window) {
        return Some(Equivalence { swap: None, word });
    }
    boundary_swaps(q).into_iter().find_map(|c| {
        find_twist(q, &swap_set(q, chi1, c), chi2, window).map(|word| Equivalence { swap: Some(c), word })
    })
}

/// Twist equivalence cross-checked against Hom-Ext quiver isomorphism.
/// `Ok(None)` means the quivers are not isomorphic, so no word exists.
pub fn twist_equivalent(
    q: &Orientation,
    chi1: &[StringModule],
    chi2: &[StringModule],
    window: i64,
) -> Result<Option<TwistWord>, TwistError> {
    let h1 = build_geometric(q, chi1)?;
    let h2 = build_geometric(q, chi2)?;
    let iso = homext_iso(&h1, &h2).is_some();
    match (find_twist(q, chi1, chi2, window), iso) {
        (Some(w), true) => Ok(Some(w)),
        (Some(w), false) => Err(TwistError::Disagreement(w)),
        (None, true) => match find_equivalence(q, chi1, chi2, window) {
            Some(e) => Err(TwistError::BoundarySwap(e)),
            None => Err(TwistError::WindowExhausted(window)),
        },
        (None, false) => Ok(None),
    }
}

/// Twisting potential: over bridging arcs, `x_inner − x_outer` of the lift.
/// The full core twist shifts it by the number of bridging arcs.
fn potential(q: &Orientation, ms: &[StringModule]) -> i64 {
    ms.iter()
        .map(|m| phi(q, m).lift(q))
        .filter(|l| l.start.boundary != l.end.boundary)
        .map(|l| {
            let (inner, outer) = if l.start.boundary == Boundary::Inner { (l.start.x, l.end.x) } else { (l.end.x, l.start.x) };
            inner - outer
        })
        .sum()
}

/// Canonical representative of the orbit under the full core twist `T_R^q`:
/// the member whose potential lies in `[0, n·B)`, `B` the number of bridging arcs.
pub fn core_twist_representative(q: &Orientation, ms: &[StringModule]) -> Vec<StringModule> {
    let n = q.n() as i64;
    let bridging = ms.iter().filter(|m| phi(q, m).is_bridging(q)).count() as i64;
    if bridging == 0 {
        return sorted(ms);
    }
    let k = -potential(q, ms).div_euclid(n * bridging);
    twist_set(q, ms, TwistWord { a: 0, b: k * q.inner_count() as i64 })
}

/// One class of twist-equivalent sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistClass {
    pub representative: Vec<StringModule>,
    pub quiver: HomExtQuiver,
    /// Member sets, each with the word taking the representative to it when
    /// found within the window.
    pub members: Vec<(Vec<StringModule>, Option<TwistWord>)>,
}

/// Partition of exceptional sets by Hom-Ext quiver isomorphism.
pub fn classify(q: &Orientation, sets: &[Vec<StringModule>], window: i64) -> Result<Vec<TwistClass>, HeqError> {
    let mut classes: Vec<TwistClass> = Vec::new();
    for s in sets {
        let s = sorted(s);
        let h = build_geometric(q, &s)?;
        match classes.iter_mut().find(|c| homext_iso(&c.quiver, &h).is_some()) {
            Some(c) => {
                let w = find_twist(q, &c.representative, &s, window);
                c.members.push((s, w));
            }
            None => classes.push(TwistClass { representative: s.clone(), quiver: h, members: vec![(s, Some(TwistWord::IDENTITY))] }),
        }
    }
    Ok(classes)
}

/// Isomorphism of the underlying quivers with relations. Degrees are ignored:
/// twisting turns extensions into morphisms.
pub fn homext_iso(h1: &HomExtQuiver, h2: &HomExtQuiver) -> Option<Isomorphism> {
    iso_with_relations(&h1.quiver.without_degrees(), &h2.quiver.without_degrees())
}
