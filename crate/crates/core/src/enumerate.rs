//! Enumeration of complete exceptional sets within a winding window.

use crate::hom::{dim_ext, dim_hom, is_exceptional};
use crate::quiver::Orientation;
use crate::strings::{all_strings, StringModule};

pub fn exceptional_modules(q: &Orientation, max_l: usize) -> Vec<StringModule> {
    all_strings(q, max_l).into_iter().filter(|m| is_exceptional(q, m)).collect()
}

/// `nonzero[x][y]`: `Hom(x,y) ≠ 0` or `Ext(x,y) ≠ 0`, for `x ≠ y`.
pub fn nonzero_matrix(q: &Orientation, ms: &[StringModule]) -> Vec<Vec<bool>> {
    let m = ms.len();
    (0..m)
        .map(|x| (0..m).map(|y| x != y && (dim_hom(q, &ms[x], &ms[y]) > 0 || dim_ext(q, &ms[x], &ms[y]) > 0)).collect())
        .collect()
}

fn acyclic(adj: &[Vec<bool>], vs: &[usize]) -> bool {
    let k = vs.len();
    let mut indeg: Vec<usize> = (0..k).map(|b| (0..k).filter(|&a| adj[vs[a]][vs[b]]).count()).collect();
    let mut stack: Vec<usize> = (0..k).filter(|&b| indeg[b] == 0).collect();
    let mut seen = 0;
    while let Some(a) = stack.pop() {
        seen += 1;
        for b in 0..k {
            if adj[vs[a]][vs[b]] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    seen == k
}

/// Every exceptional set of `n` modules with winding at most `max_l`, each
/// sorted, in lexicographic order.
pub fn complete_exceptional_sets(q: &Orientation, max_l: usize) -> Vec<Vec<StringModule>> {
    let mut cands = exceptional_modules(q, max_l);
    cands.sort();
    let adj = nonzero_matrix(q, &cands);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend(q.n(), &adj, 0, &mut chosen, &mut |vs| out.push(vs.iter().map(|&k| cands[k]).collect()));
    out
}

fn extend(n: usize, adj: &[Vec<bool>], from: usize, chosen: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if chosen.len() == n {
        emit(chosen);
        return;
    }
    for c in from..adj.len() {
        if chosen.iter().any(|&x| adj[x][c] && adj[c][x]) {
            continue;
        }
        chosen.push(c);
        if acyclic(adj, chosen) {
            extend(n, adj, c + 1, chosen, emit);
        }
        chosen.pop();
    }
}

/// Modules within the window completing `partial` (of size `n − 1`) to a
/// complete exceptional set.
pub fn completions(q: &Orientation, partial: &[StringModule], max_l: usize) -> Vec<StringModule> {
    exceptional_modules(q, max_l)
        .into_iter()
        .filter(|m| !partial.contains(m))
        .filter(|m| {
            let mut set = partial.to_vec();
            set.push(*m);
            let adj = nonzero_matrix(q, &set);
            acyclic(&adj, &(0..set.len()).collect::<Vec<_>>())
        })
        .collect()
}

/// Exceptional modules `E` within the window that can stand at position `pos`
/// of `seq` (whose entry there is ignored): `Hom` and `Ext` from later terms
/// to earlier ones vanish.
pub fn sequence_completions(q: &Orientation, seq: &[StringModule], pos: usize, max_l: usize) -> Vec<StringModule> {
    let vanish = |x: &StringModule, y: &StringModule| dim_hom(q, x, y) == 0 && dim_ext(q, x, y) == 0;
    exceptional_modules(q, max_l)
        .into_iter()
        .filter(|e| {
            seq[..pos].iter().all(|a| vanish(e, a)) && seq[pos + 1..].iter().all(|b| vanish(b, e))
        })
        .collect()
}
