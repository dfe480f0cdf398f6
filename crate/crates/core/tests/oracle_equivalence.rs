//! Exhaustive agreement of the banded DP with brute-force enumeration on small inputs.

use locuniq_core::oracle::{binomial, brute_optimal_set, enumerate_alignments};
use locuniq_core::{alignment_score, build_score_matrix, optimal_score, optimal_score_linear, solve, BinarySequence};

fn every_pair(m: usize, n: usize) -> impl Iterator<Item = (BinarySequence, BinarySequence)> {
    (0u64..1 << n).flat_map(move |yc| {
        (0u64..1 << m)
            .map(move |xc| (BinarySequence::from_code(xc, m).unwrap(), BinarySequence::from_code(yc, n).unwrap()))
    })
}

#[test]
fn dp_score_equals_enumerated_maximum() {
    for n in 2..=6 {
        for m in 1..n.min(5) {
            let all: Vec<_> = enumerate_alignments(m, n).unwrap().collect();
            assert_eq!(binomial(n as u64, m as u64), (all.len() as u64).into());
            for (x, y) in every_pair(m, n) {
                let best = all.iter().map(|a| alignment_score(&x, &y, a).unwrap()).max().unwrap();
                let sm = build_score_matrix(&x, &y).unwrap();
                assert_eq!(optimal_score(&sm) as usize, best, "x={x} y={y}");
                assert_eq!(optimal_score_linear(&x, &y).unwrap() as usize, best);
            }
        }
    }
}

#[test]
fn extremal_pair_equals_pointwise_bounds_of_optimal_set() {
    for n in 2..=6 {
        for m in 1..n.min(5) {
            for (x, y) in every_pair(m, n) {
                let pair = solve(&x, &y).unwrap();
                let set = brute_optimal_set(&x, &y).unwrap();
                let (lo, hi) = set.pointwise_bounds();
                assert_eq!(pair.s_star, set.s_star);
                assert_eq!(pair.xi.images(), lo.as_slice(), "x={x} y={y}");
                assert_eq!(pair.lambda.images(), hi.as_slice(), "x={x} y={y}");
                assert!(set.optimal.contains(&pair.xi) && set.optimal.contains(&pair.lambda));
                assert_eq!(pair.u, set.nonunique_mask());
                assert_eq!(pair.u_count, set.nonunique_mask().iter().filter(|&&b| b).count());
            }
        }
    }
}
