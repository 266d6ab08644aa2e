use homext::hom::{ext_basis, ext_class_cocycle, ExtClass};
use homext::linalg::{Echelon, Fp, Mat};
use homext::oracle::{pair_dims, realize, Cocycle, PairSpaces, Representation};
use homext::quiver::{Orientation, Shape};
use homext::strings::{all_strings, StringModule};

/// The middle term of the extension `0 → n → E → m → 0` given by `c`.
fn middle(q: &Shape, m: &Representation<Fp>, n: &Representation<Fp>, c: &Cocycle<Fp>) -> Representation<Fp> {
    let dims: Vec<usize> = m.dims.iter().zip(&n.dims).map(|(a, b)| a + b).collect();
    let maps = q
        .arrows
        .iter()
        .map(|a| {
            let (s, t) = (a.source - 1, a.target - 1);
            let mut mat = Mat::zeros(dims[t], dims[s]);
            let (nm, mm, cc) = (&n.maps[a.index - 1], &m.maps[a.index - 1], &c.blocks[a.index - 1]);
            for r in 0..n.dims[t] {
                for k in 0..n.dims[s] {
                    mat.set(r, k, *nm.get(r, k));
                }
                for k in 0..m.dims[s] {
                    mat.set(r, n.dims[s] + k, *cc.get(r, k));
                }
            }
            for r in 0..m.dims[t] {
                for k in 0..m.dims[s] {
                    mat.set(n.dims[t] + r, n.dims[s] + k, *mm.get(r, k));
                }
            }
            mat
        })
        .collect();
    Representation { dims, maps }
}

fn hom_profile(q: &Orientation, tests: &[StringModule], e: &Representation<Fp>) -> Vec<usize> {
    tests.iter().map(|t| pair_dims::<Fp>(&q.shape(), &realize(q, t), e).unwrap().hom).collect()
}

#[test]
fn extension_classes_are_a_basis_with_the_predicted_middle_terms() {
    for n in 2..=4 {
        for q in Orientation::all(n) {
            let shape = q.shape();
            let strings = all_strings(&q, 1);
            let tests = all_strings(&q, 1);
            for c1 in &strings {
                for c2 in &strings {
                    let basis = ext_basis(&q, c1, c2);
                    let (r1, r2) = (realize::<Fp>(&q, c1), realize::<Fp>(&q, c2));
                    let sp = PairSpaces::new(&shape, &r1, &r2);
                    let mut span = Echelon::<Fp>::new(sp.ext_dim());
                    for class in &basis {
                        let c = ext_class_cocycle::<Fp>(&q, c1, c2, class);
                        assert!(span.insert_dense(&sp.ext_coords(&c)), "{q} {c1} {c2} {class:?}");
                        let mids: Vec<StringModule> = match class {
                            ExtClass::Connection { middle, .. } => vec![*middle],
                            ExtClass::GraphMap { middle, .. } => middle.to_vec(),
                        };
                        let e = middle(&shape, &r1, &r2, &c);
                        let mut want = vec![0; tests.len()];
                        for m in &mids {
                            for (w, d) in want.iter_mut().zip(hom_profile(&q, &tests, &realize(&q, m))) {
                                *w += d;
                            }
                        }
                        assert_eq!(hom_profile(&q, &tests, &e), want, "{q} {c1} {c2} {class:?}");
                    }
                    assert_eq!(span.rank(), sp.ext_dim());
                }
            }
        }
    }
}
