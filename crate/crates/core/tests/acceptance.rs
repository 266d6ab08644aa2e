//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact; only the runtime budgets below are tolerances.

mod common;

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use homext::annulus::ArcDiagram;
use homext::enumerate::complete_exceptional_sets;
use homext::hequiver::{
    build_algebraic, build_geometric, count_linear_extensions, exceptional_orderings, is_exceptional_set, HomExtQuiver,
};
use homext::hom::{ext_basis, graph_maps};
use homext::linalg::Fp;
use homext::oracle::{string_dims, PairDims};
use homext::qwr::{is_gentle, iso_with_relations};
use homext::strings::all_strings;
use homext::superquiver::{from_homext, twist_equivalent_super, Superquiver};
use homext::twist::{
    classify, core_twist_representative, find_equivalence, find_twist, homext_iso, kernel_word, twist_set, TwistWord,
};
use homext::{Orientation, StringModule};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const SWEEP_MAX_N: usize = 5;
const SWEEP_MAX_L: usize = 3;
const FAMILY_MAX_N: usize = 4;
const FAMILY_MAX_L: usize = 2;
const TWIST_WINDOW: i64 = 3;
const PERTURBATIONS: usize = 200;
const SEED: u64 = 0x5eed;
/// Criteria known to fail, with the reason recorded alongside the results.
/// Isomorphic Hom-Ext quivers are related by `T_L^a T_R^b` only when the
/// quiver has no reflection symmetry exchanging the boundary components; for
/// ++--, +-+- and their rotations such a swap is needed as well.
const KNOWN_FAILURES: &[usize] = &[5];
const SWEEP_BUDGET: Duration = Duration::from_secs(5 * 60);
const FAMILY_BUDGET: Duration = Duration::from_secs(10 * 60);

type Outcome = Result<String, String>;

fn orientations(max_n: usize) -> Vec<Orientation> {
    (2..=max_n).flat_map(Orientation::all).collect()
}

struct Family {
    q: Orientation,
    sets: Vec<Vec<StringModule>>,
}

fn family() -> Vec<Family> {
    orientations(FAMILY_MAX_N)
        .into_iter()
        .map(|q| {
            let sets = complete_exceptional_sets(&q, FAMILY_MAX_L);
            Family { q, sets }
        })
        .collect()
}

/// Runs `f` on each orientation on its own thread and collects the results
/// in order.
fn par_map<T: Send>(qs: &[Orientation], f: impl Fn(&Orientation) -> T + Sync) -> Vec<T> {
    std::thread::scope(|s| {
        let handles: Vec<_> = qs.iter().map(|q| s.spawn(|| f(q))).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

fn timed(budget: Duration, start: Instant, detail: String, failures: Vec<String>) -> Outcome {
    let took = start.elapsed();
    if !failures.is_empty() {
        return Err(format!("{detail}; e.g. {failures:?}"));
    }
    if took > budget {
        return Err(format!("{detail}; {took:.1?} over budget {budget:?}"));
    }
    Ok(format!("{detail}; {took:.1?}"))
}

type SweepDims = Vec<(String, PairDims)>;

fn oracle_sweep(qs: &[Orientation], rational: bool) -> Vec<(SweepDims, Vec<String>)> {
    par_map(qs, |q| {
        let ss = all_strings(q, SWEEP_MAX_L);
        let mut dims = Vec::new();
        let mut bad = Vec::new();
        for a in &ss {
            for b in &ss {
                let key = format!("{q} {a} {b}");
                let d = if rational { string_dims::<BigRational>(q, a, b) } else { string_dims::<Fp>(q, a, b) };
                match d {
                    Ok(d) => {
                        if !rational && (graph_maps(q, a, b).len() != d.hom || ext_basis(q, a, b).len() != d.ext_euler) {
                            bad.push(key.clone());
                        }
                        dims.push((key, d));
                    }
                    Err(e) => bad.push(format!("{key}: {e}")),
                }
            }
        }
        (dims, bad)
    })
}

fn criterion_1(fp: &[(SweepDims, Vec<String>)], start: Instant) -> Outcome {
    let pairs: usize = fp.iter().map(|r| r.0.len()).sum();
    let bad: Vec<String> = fp.iter().flat_map(|r| r.1.iter().cloned()).take(5).collect();
    timed(SWEEP_BUDGET, start, format!("{pairs} pairs, n ≤ {SWEEP_MAX_N}, l ≤ {SWEEP_MAX_L}"), bad)
}

fn criterion_2(fam: &[Family]) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut total = 0;
    for f in fam {
        for s in &f.sets {
            total += 1;
            let h = build_geometric(&f.q, s).map_err(|e| e.to_string())?;
            let dp = count_linear_extensions(&h).map_err(|e| e.to_string())?;
            let brute = exceptional_orderings(&f.q, s).map_err(|e| e.to_string())?.len();
            if dp != brute.into() {
                bad.push(format!("{} {s:?}: {dp} vs {brute}", f.q));
            }
        }
    }
    bad.truncate(5);
    timed(FAMILY_BUDGET, start, format!("{total} sets"), bad)
}

fn criterion_3_4(fam: &[Family], geo: &[Vec<HomExtQuiver>]) -> (Outcome, Outcome) {
    let mut tri = Vec::new();
    let mut gentle = Vec::new();
    let mut total = 0;
    for (f, hs) in fam.iter().zip(geo) {
        for (s, h) in f.sets.iter().zip(hs) {
            total += 1;
            let tiling = ArcDiagram::from_modules(&f.q, s).tiling_algebra();
            let alg = build_algebraic(&f.q, s);
            let ok = match (tiling, alg) {
                (Ok(t), Ok(a)) => {
                    a.diagnostics.is_empty()
                        && iso_with_relations(&h.quiver.without_degrees(), &t).is_some()
                        && iso_with_relations(&h.quiver, &a.quiver).is_some()
                }
                _ => false,
            };
            if !ok {
                tri.push(format!("{} {s:?}", f.q));
            }
            if !is_gentle(&h.quiver) {
                gentle.push(format!("{} {s:?}", f.q));
            }
        }
    }
    let report = |bad: Vec<String>| {
        if bad.is_empty() {
            Ok(format!("{total} sets"))
        } else {
            Err(format!("{} of {total} fail; e.g. {:?}", bad.len(), &bad[..bad.len().min(5)]))
        }
    };
    (report(tri), report(gentle))
}

/// Every set reachable from `s` by a word in the search window of `find_twist`.
fn orbit(q: &Orientation, s: &[StringModule]) -> HashSet<Vec<StringModule>> {
    let k = kernel_word(q);
    let (p, iq) = (k.a, -k.b);
    let span = 2 * TWIST_WINDOW * p + p;
    let mut out = HashSet::new();
    for b in 0..iq {
        for a in -span..=span {
            out.insert(twist_set(q, s, TwistWord::new(a, b)));
        }
    }
    out
}

fn criterion_5(fam: &[Family], geo: &[Vec<HomExtQuiver>]) -> Outcome {
    let mut pairs = 0usize;
    let mut disagreements = Vec::new();
    let mut exhausted = Vec::new();
    for (f, hs) in fam.iter().zip(geo) {
        let orbits: Vec<HashSet<Vec<StringModule>>> = f.sets.iter().map(|s| orbit(&f.q, s)).collect();
        // iso classes, so each pair needs one lookup
        let mut class = vec![usize::MAX; hs.len()];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..hs.len() {
            class[x] = match reps.iter().position(|&r| homext_iso(&hs[r], &hs[x]).is_some()) {
                Some(c) => c,
                None => {
                    reps.push(x);
                    reps.len() - 1
                }
            };
        }
        for x in 0..hs.len() {
            for y in 0..hs.len() {
                pairs += 1;
                let iso = class[x] == class[y];
                let twisted = orbits[x].contains(&f.sets[y]);
                match (iso, twisted) {
                    (false, true) => disagreements.push(format!("{} {:?} {:?}", f.q, f.sets[x], f.sets[y])),
                    (true, false) => exhausted.push((f.q.clone(), x, y)),
                    _ => {}
                }
            }
        }
    }
    if !disagreements.is_empty() {
        return Err(format!("{} twisted pairs with non-isomorphic quivers; e.g. {:?}", disagreements.len(), &disagreements[..1]));
    }
    if exhausted.is_empty() {
        return Ok(format!("{pairs} ordered pairs, window {TWIST_WINDOW}"));
    }
    // classify the isomorphic pairs that no word reaches
    let by_q: HashMap<String, &Family> = fam.iter().map(|f| (f.q.to_string(), f)).collect();
    let (mut swapped, mut wider, mut open) = (0, 0, Vec::new());
    let mut symmetric: Vec<String> = Vec::new();
    for (q, x, y) in &exhausted {
        let f = by_q[&q.to_string()];
        let (a, b) = (&f.sets[*x], &f.sets[*y]);
        if find_twist(q, a, b, 4 * TWIST_WINDOW).is_some() {
            wider += 1;
        } else if let Some(e) = find_equivalence(q, a, b, TWIST_WINDOW) {
            debug_assert!(e.swap.is_some());
            swapped += 1;
            if !symmetric.contains(&q.to_string()) {
                symmetric.push(q.to_string());
            }
        } else {
            open.push(format!("{q} {a:?} {b:?}"));
        }
    }
    let detail = format!(
        "{pairs} ordered pairs; {} isomorphic pairs have no word T_L^a T_R^b: {wider} found at window {}, \
         {swapped} related only through a boundary swap (orientations {}), {} unexplained",
        exhausted.len(),
        4 * TWIST_WINDOW,
        symmetric.join(" "),
        open.len()
    );
    if swapped == 0 && open.is_empty() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_6() -> Outcome {
    let q: Orientation = "++-".parse().unwrap();
    let sets = complete_exceptional_sets(&q, FAMILY_MAX_L);
    let diagrams: HashSet<Vec<StringModule>> = sets.iter().map(|s| core_twist_representative(&q, s)).collect();
    let classes = classify(&q, &sets, TWIST_WINDOW).map_err(|e| e.to_string())?.len();
    let k: Orientation = "+-".parse().unwrap();
    let ksets = complete_exceptional_sets(&k, FAMILY_MAX_L);
    let kclasses = classify(&k, &ksets, TWIST_WINDOW).map_err(|e| e.to_string())?.len();
    let korders: Vec<usize> = ksets.iter().map(|s| exceptional_orderings(&k, s).map_or(0, |o| o.len())).collect();
    let detail = format!(
        "1→2→3, 1→3: {} diagrams, {classes} classes; Kronecker: {kclasses} class, orderings per set {:?}",
        diagrams.len(),
        korders.iter().collect::<HashSet<_>>()
    );
    if diagrams.len() == 8 && classes == 4 && kclasses == 1 && korders.iter().all(|&c| c == 1) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_7(qs: &[Orientation]) -> Outcome {
    let start = Instant::now();
    let results = par_map(qs, |q| common::dictionary(q, SWEEP_MAX_L));
    let checked: usize = results.iter().map(|r| r.0).sum();
    let bad: Vec<String> = results.into_iter().flat_map(|r| r.1).take(5).collect();
    timed(SWEEP_BUDGET, start, format!("{checked} exceptional pairs"), bad)
}

type Labeled = HashSet<(String, String, u8)>;

fn arrows_by_label(s: &Superquiver, frozen_only: bool) -> Labeled {
    let v = &s.quiver.vertices;
    s.quiver
        .arrows
        .iter()
        .zip(&s.frozen)
        .filter(|(_, f)| !frozen_only || **f)
        .map(|(a, _)| (v[a.src].clone(), v[a.tgt].clone(), a.degree.unwrap_or(9)))
        .collect()
}

fn relations_by_label(s: &Superquiver) -> HashSet<(String, String, String)> {
    let (v, ar) = (&s.quiver.vertices, &s.quiver.arrows);
    s.quiver.relations.iter().map(|&(a, b)| (v[ar[a].src].clone(), v[ar[a].tgt].clone(), v[ar[b].tgt].clone())).collect()
}

fn labeled(xs: &[(&str, &str, u8)]) -> Labeled {
    xs.iter().map(|(a, b, d)| (a.to_string(), b.to_string(), *d)).collect()
}

fn paths(xs: &[(&str, &str, &str)]) -> HashSet<(String, String, String)> {
    xs.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect()
}

fn criterion_8() -> Outcome {
    let q: Orientation = "+++-".parse().unwrap();
    let (s1, s2, s3, s4) = ("(4,1;0)", "(1,2;0)", "(2,3;0)", "(3,4;0)");
    let (p2, p1) = ("(1,4;0)", "(3,4;1)");
    let simples: Vec<StringModule> = [s1, s2, s3, s4].iter().map(|m| m.parse().unwrap()).collect();
    let twisted = twist_set(&q, &simples, TwistWord::new(3, 0));
    let mut want: Vec<StringModule> = [p2, s2, s3, p1].iter().map(|m| m.parse().unwrap()).collect();
    want.sort();
    if twisted != want {
        return Err(format!("T_L^3 of the simples is {twisted:?}"));
    }
    let sq = |ms: &[StringModule]| build_geometric(&q, ms).map(|h| from_homext(&q, &h)).map_err(|e| e.to_string());
    let (a, b) = (sq(&simples)?, sq(&twisted)?);
    let mut fails = Vec::new();
    let mut check = |what: &str, ok: bool| {
        if !ok {
            fails.push(what.to_string());
        }
    };
    check("simples arrows", arrows_by_label(&a, false) == labeled(&[(s1, s2, 1), (s2, s3, 1), (s3, s4, 1), (s1, s4, 1)]));
    check("simples relations", relations_by_label(&a) == paths(&[(s1, s2, s3), (s2, s3, s4)]));
    check("simples frozen", arrows_by_label(&a, true) == labeled(&[(s2, s3, 1)]));
    check("twisted arrows", arrows_by_label(&b, false) == labeled(&[(p2, s2, 0), (s2, s3, 1), (s3, p1, 1), (p2, p1, 0)]));
    check("twisted relations", relations_by_label(&b) == paths(&[(p2, s2, s3), (s2, s3, p1)]));
    check("twisted frozen", arrows_by_label(&b, true) == labeled(&[(s2, s3, 1)]));
    check("validate", a.validate().is_ok() && b.validate().is_ok());
    check("twist equivalent", twist_equivalent_super(&a, &b));
    for s in [&a, &b] {
        let t = s.trivial_twist();
        let degrees_ok = t.quiver.arrows.iter().zip(&s.quiver.arrows).zip(&t.frozen).all(|((x, y), f)| {
            x.degree == if *f { y.degree } else { Some(0) }
        });
        check("trivial twist degrees", degrees_ok && t.frozen == s.frozen && t.quiver.relations == s.quiver.relations);
        check("trivial twist equivalent", twist_equivalent_super(s, &t));
    }
    check("trivial twists agree", twist_equivalent_super(&a.trivial_twist(), &b.trivial_twist()));
    if fails.is_empty() {
        Ok("both reference superquivers reproduced; word (3,0) = T_L^3".into())
    } else {
        Err(fails.join(", "))
    }
}

fn exceptionality_views(q: &Orientation, s: &[StringModule]) -> [bool; 3] {
    let diagram = ArcDiagram::from_modules(q, s).is_exceptional().unwrap_or(false);
    let orders = exceptional_orderings(q, s).is_ok_and(|o| !o.is_empty());
    [is_exceptional_set(q, s), diagram, orders]
}

fn criterion_9(fam: &[Family]) -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for f in fam {
        for s in &f.sets {
            total += 1;
            if exceptionality_views(&f.q, s) != [true; 3] {
                bad.push(format!("{} {s:?}", f.q));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut negative = 0;
    for _ in 0..PERTURBATIONS {
        let f = fam.iter().filter(|f| !f.sets.is_empty()).collect::<Vec<_>>().choose(&mut rng).copied().unwrap();
        let mut s = f.sets.choose(&mut rng).unwrap().clone();
        let pool: Vec<StringModule> =
            all_strings(&f.q, FAMILY_MAX_L).into_iter().filter(|m| !s.contains(m)).collect();
        let k = rng.gen_range(0..s.len());
        s[k] = *pool.choose(&mut rng).unwrap();
        let v = exceptionality_views(&f.q, &s);
        if v[0] != v[1] || v[1] != v[2] {
            bad.push(format!("perturbed {} {s:?}: {v:?}", f.q));
        }
        if !v[0] {
            negative += 1;
        }
    }
    bad.truncate(5);
    let detail = format!("{total} sets all three-way exceptional; {PERTURBATIONS} perturbations agree, {negative} non-exceptional");
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; e.g. {bad:?}"))
    }
}

fn criterion_10(fp: &[(SweepDims, Vec<String>)], qs: &[Orientation], start: Instant) -> Outcome {
    let rat = oracle_sweep(qs, true);
    let mut bad = Vec::new();
    let mut total = 0;
    for ((fd, _), (rd, rbad)) in fp.iter().zip(&rat) {
        bad.extend(rbad.iter().cloned());
        for ((k, a), (_, b)) in fd.iter().zip(rd) {
            total += 1;
            if a != b {
                bad.push(k.clone());
            }
        }
    }
    bad.truncate(5);
    timed(SWEEP_BUDGET, start, format!("{total} pairs agree over F_p and Q"), bad)
}

fn main() {
    let mut lines = Vec::new();
    let mut report = |k: usize, name: &str, o: Outcome| {
        let line = match &o {
            Ok(d) => format!("PASS {k:>2} {name}: {d}"),
            Err(d) => format!("FAIL {k:>2} {name}: {d}"),
        };
        println!("{line}");
        lines.push(o.is_ok());
    };

    let sweep_qs = orientations(SWEEP_MAX_N);
    let start = Instant::now();
    let fp = oracle_sweep(&sweep_qs, false);
    report(1, "oracle equivalence", criterion_1(&fp, start));

    let fam = family();
    report(2, "orderings = linear extensions", criterion_2(&fam));

    let geo: Vec<Vec<HomExtQuiver>> =
        fam.iter().map(|f| f.sets.iter().map(|s| build_geometric(&f.q, s).unwrap()).collect()).collect();
    let (c3, c4) = criterion_3_4(&fam, &geo);
    report(3, "geometric = tiling = algebraic", c3);
    report(4, "gentle", c4);
    report(5, "isomorphic quivers iff twist", criterion_5(&fam, &geo));
    report(6, "class and ordering counts", criterion_6());
    report(7, "arc/morphism dictionary", criterion_7(&sweep_qs));
    report(8, "superquiver pair", criterion_8());
    report(9, "exceptionality three ways", criterion_9(&fam));
    report(10, "characteristic independence", criterion_10(&fp, &sweep_qs, Instant::now()));

    let failed: Vec<usize> = (1..=lines.len()).filter(|k| !lines[k - 1]).collect();
    println!("{} passed, {} failed {failed:?}; known failures {KNOWN_FAILURES:?}", lines.len() - failed.len(), failed.len());
    if failed != KNOWN_FAILURES {
        std::process::exit(1);
    }
}
