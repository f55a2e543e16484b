mod common;

use common::arrangement;
use proptest::prelude::*;
use subspace_hilbert::oracle::{
    dim_intersection_ideal, dim_product_ideal, graded_dim, hilbert_table, intersection_ideal_dims,
    product_ideal_dims,
};
use subspace_hilbert::ratpoly::binomial;
use subspace_hilbert::{dimension_function, hilbert_series_j, Limits, Subset};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn product_ideal_matches_the_series(a in arrangement(2..=5, 1..=4)) {
        let d_max = 6.min(a.len() + 2);
        let series = hilbert_series_j(&dimension_function(&a).unwrap()).series(d_max);
        let dims = product_ideal_dims(&a, Subset::full(a.len()), d_max, &Limits::default()).unwrap();
        for (d, dim) in dims.iter().enumerate() {
            prop_assert_eq!(series.coeff(d).to_integer(), (*dim).into());
        }
    }

    #[test]
    fn containment_and_transversal_equality(a in arrangement(2..=4, 1..=3)) {
        let m = a.len();
        let table = hilbert_table(&a, m + 2, &Limits::default()).unwrap();
        let transversal = dimension_function(&a).unwrap().is_transversal();
        for row in &table {
            prop_assert!(row.dim_j <= row.dim_i);
            prop_assert!(num_bigint::BigInt::from(row.dim_i) <= graded_dim(a.ambient_dim(), row.degree));
            if transversal && row.degree >= m {
                prop_assert_eq!(row.dim_i, row.dim_j);
            }
        }
    }

    #[test]
    fn monotone_in_the_subset(a in arrangement(2..=4, 2..=3), d in 0usize..=4) {
        let m = a.len();
        for s in Subset::all(m) {
            for i in 0..m {
                let t = s.with(i);
                prop_assert!(dim_intersection_ideal(&a, t, d).unwrap() <= dim_intersection_ideal(&a, s, d).unwrap());
                if !s.contains(i) {
                    prop_assert!(dim_product_ideal(&a, t, d + 1).unwrap() <= dim_product_ideal(&a, s, d + 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn singleton_restriction_is_surjective(a in arrangement(2..=5, 1..=3), d in 0usize..=5) {
        let n = a.ambient_dim() as i64;
        for i in 0..a.len() {
            let ni = a.subspace(i).dim() as i64;
            let d = d as i64;
            let expected = binomial(d + n - 1, n - 1) - binomial(d + ni - 1, ni - 1);
            let got = dim_intersection_ideal(&a, Subset::singleton(i), d as usize).unwrap();
            prop_assert_eq!(num_bigint::BigInt::from(got), expected);
        }
    }

    #[test]
    fn degree_columns_agree_with_single_cells(a in arrangement(2..=4, 1..=3)) {
        let full = Subset::full(a.len());
        let d_max = a.len() + 2;
        let i = intersection_ideal_dims(&a, full, d_max, &Limits::default()).unwrap();
        let j = product_ideal_dims(&a, full, d_max, &Limits::default()).unwrap();
        for d in 0..=d_max {
            prop_assert_eq!(i[d], dim_intersection_ideal(&a, full, d).unwrap());
            prop_assert_eq!(j[d], dim_product_ideal(&a, full, d).unwrap());
        }
    }
}
