//! Deterministic SVG pictures of arc diagrams on the annulus.
//!
//! The strip coordinate `x` of a lift becomes the angle `2π(x−1)/n`, so an arc
//! of winding `λ` sweeps `λ` extra turns. Curves are sampled and joined by
//! Catmull-Rom splines written as cubic Béziers.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::annulus::{Arc, ArcDiagram, ClosedCurve};
use crate::quiver::{Boundary, Orientation};

const SIZE: f64 = 480.0;
const CENTER: f64 = SIZE / 2.0;
const OUTER: f64 = 200.0;
const INNER: f64 = 80.0;
const MID: f64 = (OUTER + INNER) / 2.0;

const ARC_COLOR: &str = "#222222";
const HEART_COLOR: &str = "#d35400";
const CURVE_COLOR: &str = "#c0392b";

fn radius(b: Boundary) -> f64 {
    match b {
        Boundary::Outer => OUTER,
        Boundary::Inner => INNER,
    }
}

fn angle(n: usize, x: f64) -> f64 {
    PI / 2.0 + 2.0 * PI * (x - 1.0) / n as f64
}

fn point(r: f64, theta: f64) -> (f64, f64) {
    (CENTER + r * theta.cos(), CENTER - r * theta.sin())
}

fn smoothstep(t: f64) -> f64 {
    t * t * (3.0 - 2.0 * t)
}

fn arc_samples(q: &Orientation, a: &Arc) -> Vec<(f64, f64)> {
    let n = q.n();
    let lift = a.lift(q);
    let (x0, x1) = (lift.start.x as f64, lift.end.x as f64);
    let (r0, r1) = (radius(lift.start.boundary), radius(lift.end.boundary));
    let span = x1 - x0;
    let steps = ((span * 12.0) as usize).max(16);
    // peripheral arcs dip towards the other boundary, deeper for longer spans
    let depth = span / (span + 2.0) * 0.85;
    (0..=steps)
        .map(|k| {
            let t = k as f64 / steps as f64;
            let r = if lift.start.boundary == lift.end.boundary {
                let other = radius(lift.start.boundary.other());
                r0 + (other - r0) * depth * (PI * t).sin()
            } else {
                r0 + (r1 - r0) * smoothstep(t)
            };
            point(r, angle(n, x0 + span * t))
        })
        .collect()
}

/// `r = mid + A·cos(θ/l)` for `θ ∈ [0, 2πl)`: winds `l` times, closing up.
fn closed_samples(c: &ClosedCurve) -> Vec<(f64, f64)> {
    let l = c.winding.max(1) as f64;
    let amp = (OUTER - INNER) * 0.3;
    let steps = 48 * c.winding.max(1);
    (0..steps)
        .map(|k| {
            let theta = 2.0 * PI * l * k as f64 / steps as f64;
            point(MID + amp * (theta / l).cos(), theta)
        })
        .collect()
}

fn spline(pts: &[(f64, f64)], closed: bool) -> String {
    let m = pts.len();
    let at = |k: isize| -> (f64, f64) {
        if closed {
            pts[k.rem_euclid(m as isize) as usize]
        } else {
            pts[k.clamp(0, m as isize - 1) as usize]
        }
    };
    let mut d = format!("M{:.2},{:.2}", pts[0].0, pts[0].1);
    let segments = if closed { m } else { m - 1 };
    for k in 0..segments as isize {
        let (p0, p1, p2, p3) = (at(k - 1), at(k), at(k + 1), at(k + 2));
        let c1 = (p1.0 + (p2.0 - p0.0) / 6.0, p1.1 + (p2.1 - p0.1) / 6.0);
        let c2 = (p2.0 - (p3.0 - p1.0) / 6.0, p2.1 - (p3.1 - p1.1) / 6.0);
        let _ = write!(d, " C{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}", c1.0, c1.1, c2.0, c2.1, p2.0, p2.1);
    }
    if closed {
        d.push_str(" Z");
    }
    d
}

/// SVG for the diagram's arcs plus any closed curves. The heart is drawn in a
/// separate colour when the diagram has one.
pub fn render_svg(d: &ArcDiagram, curves: &[ClosedCurve]) -> String {
    let q = &d.epsilon;
    let n = q.n();
    let heart = d.heart().unwrap_or_default();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<title>{q}</title>"#);
    for (class, r) in [("outer", OUTER), ("inner", INNER)] {
        let _ = writeln!(
            s,
            r##"<circle class="boundary {class}" cx="{CENTER}" cy="{CENTER}" r="{r}" fill="none" stroke="#888888" stroke-width="1.5"/>"##
        );
    }
    for (k, a) in d.arcs.iter().enumerate() {
        let (color, width) = if heart.contains(&k) { (HEART_COLOR, 2.5) } else { (ARC_COLOR, 1.5) };
        let class = if heart.contains(&k) { "arc heart" } else { "arc" };
        let _ = writeln!(
            s,
            r#"<path class="{class}" data-arc="{a}" d="{}" fill="none" stroke="{color}" stroke-width="{width}"/>"#,
            spline(&arc_samples(q, a), false)
        );
    }
    for c in curves {
        let _ = writeln!(
            s,
            r#"<path class="closed" data-winding="{}" d="{}" fill="none" stroke="{CURVE_COLOR}" stroke-width="1.5"/>"#,
            c.winding,
            spline(&closed_samples(c), true)
        );
    }
    for v in 1..=n {
        let b = q.boundary(v as i64);
        let theta = angle(n, v as f64);
        let (x, y) = point(radius(b), theta);
        let off = if b == Boundary::Outer { 16.0 } else { -14.0 };
        let (lx, ly) = point(radius(b) + off, theta);
        let class = if b == Boundary::Outer { "point outer" } else { "point inner" };
        let _ = writeln!(s, r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{lx:.2}" y="{ly:.2}" font-family="sans-serif" font-size="13" text-anchor="middle" dominant-baseline="middle">{v}</text>"#
        );
    }
    s.push_str("</svg>\n");
    s
}
