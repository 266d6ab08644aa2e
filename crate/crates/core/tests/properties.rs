use homext::annulus::{phi, phi_inv};
use homext::hequiver::ExtPoset;
use homext::hom::{dim_ext, dim_hom, graph_maps};
use homext::io::{format_collection, parse_collection};
use homext::quiver::Sign;
use homext::twist::{reduce_word, twist, twist_set, TwistWord};
use homext::{Orientation, StringModule};
use proptest::prelude::*;

fn orientation(max_n: usize) -> impl Strategy<Value = Orientation> {
    prop::collection::vec(any::<bool>(), 2..=max_n)
        .prop_filter("both signs", |v| v.iter().any(|b| *b) && v.iter().any(|b| !*b))
        .prop_map(|v| Orientation::new(v.into_iter().map(|b| if b { Sign::Plus } else { Sign::Minus }).collect()).unwrap())
}

fn module(n: usize, max_l: usize) -> impl Strategy<Value = StringModule> {
    (1..=n, 1..=n, 0..=max_l).prop_map(|(i, j, l)| StringModule { i, j, l })
}

fn with_modules(max_n: usize, k: usize, max_l: usize) -> impl Strategy<Value = (Orientation, Vec<StringModule>)> {
    orientation(max_n).prop_flat_map(move |q| {
        let n = q.n();
        (Just(q), prop::collection::vec(module(n, max_l), k))
    })
}

fn word() -> impl Strategy<Value = TwistWord> {
    (-6i64..=6, -6i64..=6).prop_map(|(a, b)| TwistWord::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_form((q, ms) in with_modules(6, 2, 3)) {
        let (a, b) = (&ms[0], &ms[1]);
        let euler = q.euler_form(&a.dimension_vector(&q), &b.dimension_vector(&q));
        prop_assert_eq!(dim_hom(&q, a, b) as i64 - dim_ext(&q, a, b) as i64, euler);
        prop_assert_eq!(graph_maps(&q, a, b).len(), dim_hom(&q, a, b));
    }

    #[test]
    fn phi_round_trip((q, ms) in with_modules(6, 1, 3)) {
        prop_assert_eq!(phi_inv(&q, &phi(&q, &ms[0])).unwrap(), ms[0]);
    }

    #[test]
    fn twists_invert((q, ms) in with_modules(6, 1, 3), w in word()) {
        prop_assert_eq!(twist(&q, &twist(&q, &ms[0], w), w.inverse()), ms[0]);
    }

    #[test]
    fn reduced_words_act_alike((q, ms) in with_modules(5, 3, 2), w in word()) {
        prop_assert_eq!(twist_set(&q, &ms, reduce_word(&q, w)), twist_set(&q, &ms, w));
    }

    #[test]
    fn twists_keep_total_dimension((q, ms) in with_modules(5, 2, 2), w in word()) {
        let (a, b) = (&ms[0], &ms[1]);
        let (ta, tb) = (twist(&q, a, w), twist(&q, b, w));
        prop_assert_eq!(dim_hom(&q, a, b) + dim_ext(&q, a, b), dim_hom(&q, &ta, &tb) + dim_ext(&q, &ta, &tb));
    }

    #[test]
    fn collection_text_round_trip((_q, ms) in with_modules(6, 4, 3)) {
        let text = format_collection(&ms);
        let back = parse_collection(&text).unwrap();
        prop_assert_eq!(format_collection(&back.modules), text);
    }

    #[test]
    fn linear_extensions_match_brute_force(m in 1usize..=7, edges in prop::collection::vec((0usize..7, 0usize..7), 0..10)) {
        // only forward pairs, so the relation is acyclic
        let pairs: Vec<(usize, usize)> = edges.into_iter().filter(|(x, y)| x < y && *y < m).collect();
        let p = ExtPoset::from_pairs(m, &pairs).unwrap();
        let brute = p.brute_force_linear_extensions().unwrap().len();
        prop_assert_eq!(p.count_linear_extensions().unwrap(), brute.into());
    }
}
