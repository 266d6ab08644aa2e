use homext::enumerate::{complete_exceptional_sets, sequence_completions};
use homext::hequiver::exceptional_orderings;
use homext::Orientation;

/// Removing one term of an exceptional sequence leaves exactly one module
/// that can fill the gap, within the window `l ≤ 3`.
#[test]
fn each_gap_has_one_filling() {
    for n in 2..=4 {
        for q in Orientation::all(n) {
            for set in complete_exceptional_sets(&q, 2) {
                for order in exceptional_orderings(&q, &set).unwrap() {
                    let seq: Vec<_> = order.iter().map(|&k| set[k]).collect();
                    for pos in 0..seq.len() {
                        assert_eq!(sequence_completions(&q, &seq, pos, 3), vec![seq[pos]], "{q} {seq:?} {pos}");
                    }
                }
            }
        }
    }
}
