use homext::annulus::{clockwise_from, intersect_nontrivially, phi, Arc};
use homext::hom::{connections, dim_ext, graph_maps, is_exceptional};
use homext::strings::all_strings;
use homext::{Orientation, StringModule};

fn shares_endpoint(a: &Arc, b: &Arc) -> bool {
    [a.i, a.j].iter().any(|p| *p == b.i || *p == b.j)
}

/// Checks the four arc/morphism equivalences on every ordered pair of distinct
/// exceptional strings with `l ≤ max_l`. Returns the pairs checked and the
/// first few violations.
pub fn dictionary(q: &Orientation, max_l: usize) -> (usize, Vec<String>) {
    let ex: Vec<StringModule> = all_strings(q, max_l).into_iter().filter(|s| is_exceptional(q, s)).collect();
    let mut bad = Vec::new();
    let mut checked = 0;
    for u in &ex {
        for v in &ex {
            if u == v {
                continue;
            }
            checked += 1;
            let (a, b) = (phi(q, u), phi(q, v));
            let huv = graph_maps(q, u, v);
            let hvu = graph_maps(q, v, u);
            let (euv, evu) = (dim_ext(q, u, v), dim_ext(q, v, u));
            let cross = intersect_nontrivially(q, &a, &b);
            let two_sided = huv.iter().chain(&hvu).any(|g| g.two_sided);
            if cross != two_sided {
                bad.push(format!("crossing {q} {u} {v}"));
            }
            let orth = huv.is_empty() && hvu.is_empty() && euv == 0 && evu == 0;
            if (!shares_endpoint(&a, &b) && !cross) != orth {
                bad.push(format!("orthogonal {q} {u} {v}"));
            }
            if cross {
                continue;
            }
            let cw = clockwise_from(q, &a, &b).unwrap();
            let ccw = clockwise_from(q, &b, &a).unwrap();
            let cuv = !connections(q, u, v).is_empty();
            let cvu = !connections(q, v, u).is_empty();
            let cycle = cw && ccw;
            if cycle != (cuv && cvu && huv.is_empty() && hvu.is_empty()) {
                bad.push(format!("cycle {q} {u} {v}"));
            }
            if !cycle {
                let first = !huv.is_empty() && huv.iter().all(|g| !g.two_sided) && euv == 0 && hvu.is_empty() && evu == 0;
                let second = cuv && huv.is_empty() && hvu.is_empty() && evu == 0;
                if cw != (first || second) {
                    bad.push(format!("clockwise {q} {u} {v}"));
                }
            }
        }
    }
    bad.truncate(5);
    (checked, bad)
}
