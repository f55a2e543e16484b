mod common;

use common::arrangement;
use num_bigint::BigInt;
use proptest::prelude::*;
use subspace_hilbert::formats::{fixture, FIXTURES};
use subspace_hilbert::gpca::{binomial_basis_coefficients, interpolate, sample_points};
use subspace_hilbert::oracle::{dim_intersection_ideal, graded_dim};
use subspace_hilbert::ratpoly::{binomial, rat};
use subspace_hilbert::{
    estimate_hilbert_value, recover_codimensions, transversal_hilbert_function, QPolynomial,
    RankMode, Rational, Subset,
};

proptest! {
    #[test]
    fn recovery_round_trip(
        (n, codims) in (2usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec(1..n, 1..=4)))
    ) {
        let m = codims.len();
        let values: Vec<BigInt> = (m..m + n)
            .map(|d| transversal_hilbert_function(&codims, n, d).unwrap())
            .collect();
        let mut sorted = codims.clone();
        sorted.sort_unstable();
        prop_assert_eq!(recover_codimensions(&values, m, n).unwrap().codims, sorted);
    }

    #[test]
    fn interpolation_reproduces_inputs(start in 0i64..8, ys in prop::collection::vec(-50i64..50, 1..7)) {
        let xs: Vec<i64> = (start..start + ys.len() as i64).collect();
        let ys: Vec<Rational> = ys.into_iter().map(rat).collect();
        let h = interpolate(&xs, &ys);
        prop_assert!(h.degree().is_none_or(|d| d < xs.len()));
        for (x, y) in xs.iter().zip(&ys) {
            prop_assert_eq!(&h.eval_int(*x), y);
        }
    }

    #[test]
    fn binomial_basis_round_trip(n in 1usize..=6, coeffs in prop::collection::vec(-20i64..=20, 0..6)) {
        let coeffs: Vec<i64> = coeffs.into_iter().take(n).collect();
        // h(d) = Σ a_j C(d+n-1-j, n-1), sampled at n points and interpolated
        let xs: Vec<i64> = (10..10 + n as i64).collect();
        let ys: Vec<Rational> = xs
            .iter()
            .map(|&d| {
                let v: BigInt = coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, &a)| BigInt::from(a) * binomial(d + n as i64 - 1 - j as i64, n as i64 - 1))
                    .sum();
                Rational::from_integer(v)
            })
            .collect();
        let h = interpolate(&xs, &ys);
        prop_assert_eq!(binomial_basis_coefficients(&h, n).unwrap(), QPolynomial::from_ints(&coeffs));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn estimates_shrink_as_points_are_added(a in arrangement(2..=4, 1..=3), d in 1usize..=4, seed in any::<u64>()) {
        let pc = sample_points(&a, 6, seed).unwrap();
        let mut last = graded_dim(a.ambient_dim(), d);
        for k in 0..=pc.len() {
            let est = BigInt::from(estimate_hilbert_value(&pc.prefix(k), d, RankMode::Exact).unwrap());
            prop_assert!(est <= last);
            last = est;
        }
    }
}

#[test]
fn enough_samples_give_the_oracle_value() {
    for (stem, _) in FIXTURES {
        let a = fixture(stem).unwrap();
        let n = a.ambient_dim();
        for d in 0..=5 {
            let per = graded_dim(n, d).try_into().unwrap();
            let pc = sample_points(&a, per, 7).unwrap();
            let oracle = dim_intersection_ideal(&a, Subset::full(a.len()), d).unwrap();
            assert_eq!(estimate_hilbert_value(&pc, d, RankMode::Exact).unwrap(), oracle, "{stem}, d = {d}");
            let approx = estimate_hilbert_value(&pc, d, RankMode::approx_default()).unwrap();
            assert_eq!(approx, oracle, "{stem}, d = {d}, floating point");
        }
    }
}
