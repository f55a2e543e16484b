mod common;

use common::{matrix, subspace};
use proptest::prelude::*;
use subspace_hilbert::linalg::SubspaceBasis;

proptest! {
    #[test]
    fn rank_nullity(m in matrix(12, 12)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(10, 10)) {
        for v in m.kernel().vectors() {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == subspace_hilbert::ratpoly::rat(0)));
        }
    }

    #[test]
    fn intersection_commutes_and_associates(
        (a, b, c) in (2usize..=5).prop_flat_map(|n| (subspace(n), subspace(n), subspace(n)))
    ) {
        let ab = a.intersect(&b).unwrap();
        prop_assert!(ab.span_eq(&b.intersect(&a).unwrap()));
        let left = ab.intersect(&c).unwrap();
        let right = a.intersect(&b.intersect(&c).unwrap()).unwrap();
        prop_assert!(left.span_eq(&right));
        prop_assert!(ab.is_subspace_of(&a) && ab.is_subspace_of(&b));
    }

    #[test]
    fn grassmann_identity((a, b) in (1usize..=6).prop_flat_map(|n| (subspace(n), subspace(n)))) {
        let meet = a.intersect(&b).unwrap().dim();
        let join = a.sum(&b).unwrap().dim();
        prop_assert_eq!(meet + join, a.dim() + b.dim());
    }

    #[test]
    fn double_annihilator(s in (1usize..=6).prop_flat_map(subspace)) {
        let n = s.ambient_dim();
        let ann = SubspaceBasis::span(n, &s.annihilator()).unwrap();
        let back = SubspaceBasis::span(n, &ann.annihilator()).unwrap();
        prop_assert!(back.span_eq(&s));
        prop_assert_eq!(ann.dim() + s.dim(), n);
    }
}
