//! Invariants of shortening, puncturing and duality on random small codes.

use proptest::prelude::*;
use shortcode::code::{expected_shortened_dimension, weight_distribution, CoordSet, Limits, LinearCode};
use shortcode::gfmat::MatrixGFp;

/// A random generator over GF(p) with the positions of a random subset.
fn arb_code() -> impl Strategy<Value = (LinearCode, Vec<usize>)> {
    (prop::sample::select(vec![2u32, 3, 5]), 2usize..=9, 1usize..=5).prop_flat_map(|(p, n, rows)| {
        let entries = prop::collection::vec(0..p as u8, n * rows);
        let subset = prop::sample::subsequence((0..n).collect::<Vec<_>>(), 0..n);
        (entries, subset).prop_map(move |(data, t)| {
            let g = MatrixGFp::from_vec(p, rows, n, data).unwrap();
            (LinearCode::from_generator(&g), t)
        })
    })
}

/// Weight counts by running over every message.
fn brute_weights(code: &LinearCode) -> Vec<u128> {
    let (p, n, k) = (code.p() as usize, code.n(), code.k());
    let g = code.generator();
    let mut counts = vec![0u128; n + 1];
    let mut msg = vec![0usize; k];
    loop {
        let w = (0..n)
            .filter(|&j| (0..k).map(|i| msg[i] * g.get(i, j) as usize).sum::<usize>() % p != 0)
            .count();
        counts[w] += 1;
        let Some(i) = msg.iter().position(|&x| x + 1 < p) else { break };
        msg[i] += 1;
        msg[..i].iter_mut().for_each(|x| *x = 0);
    }
    counts
}

fn min_distance(code: &LinearCode) -> usize {
    let counts = brute_weights(code);
    (1..counts.len()).find(|&w| counts[w] > 0).unwrap_or(code.n() + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shortened_dual_is_dual_of_punctured((code, t) in arb_code()) {
        let t = CoordSet::new(t, code.n()).unwrap();
        let lhs = code.dual().shorten(&t).unwrap();
        let rhs = code.puncture(&t).unwrap().dual();
        prop_assert!(lhs.same_code(&rhs));
    }

    #[test]
    fn punctured_dual_is_dual_of_shortened((code, t) in arb_code()) {
        let t = CoordSet::new(t, code.n()).unwrap();
        let lhs = code.dual().puncture(&t).unwrap();
        let rhs = code.shorten(&t).unwrap().dual();
        prop_assert!(lhs.same_code(&rhs));
    }

    #[test]
    fn enumeration_matches_brute_force((code, t) in arb_code()) {
        let t = CoordSet::new(t, code.n()).unwrap();
        for c in [code.clone(), code.dual(), code.shorten(&t).unwrap(), code.puncture(&t).unwrap()] {
            let wd = weight_distribution(&c, &Limits::default()).unwrap();
            prop_assert_eq!(wd.total(), (c.p() as u128).pow(c.k() as u32));
            prop_assert_eq!(wd.to_dense(), brute_weights(&c));
        }
    }

    #[test]
    fn shortened_dimension_law((code, t) in arb_code()) {
        let n = code.n();
        let d = min_distance(&code);
        let d_dual = min_distance(&code.dual());
        let cols = CoordSet::new(t.clone(), n).unwrap();
        let short = code.shorten(&cols).unwrap();
        // In general the dimension drops by the rank of the deleted columns.
        let rank = if t.is_empty() { 0 } else { code.generator().select_columns(&t).unwrap().rank() };
        prop_assert_eq!(short.k(), code.k() - rank);
        if let Some(k) = expected_shortened_dimension(code.k(), t.len(), d, d_dual) {
            prop_assert_eq!(short.k(), k);
        }
    }
}
