//! Strategies shared by the property tests.
#![allow(dead_code)]

use proptest::prelude::*;
use subspace_hilbert::linalg::{QMatrix, SubspaceBasis};
use subspace_hilbert::ratpoly::{rat, ratio};
use subspace_hilbert::{random_arrangement, Arrangement, QPolynomial, Rational};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

pub fn small_int() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(rat)
}

pub fn polynomial(max_len: usize) -> impl Strategy<Value = QPolynomial> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(QPolynomial::new)
}

pub fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        // a low-rank factor some of the time, so kernels are nontrivial
        (
            prop::collection::vec(small_int(), r * c),
            any::<bool>(),
            0..=r.min(c),
        )
            .prop_map(move |(mut entries, low_rank, k)| {
                if low_rank {
                    for i in k..r {
                        for j in 0..c {
                            entries[i * c + j] = (0..k)
                                .map(|l| &entries[l * c + j] * rat((i * 7 + l * 3) as i64 % 5 - 2))
                                .sum();
                        }
                    }
                }
                QMatrix::new(r, c, entries).unwrap()
            })
    })
}

/// A subspace of ℚⁿ spanned by up to `n` small integer vectors.
pub fn subspace(n: usize) -> impl Strategy<Value = SubspaceBasis> {
    prop::collection::vec(prop::collection::vec(small_int(), n), 0..=n)
        .prop_map(move |vs| SubspaceBasis::span(n, &vs).unwrap())
}

/// Random arrangement; `sparse` vectors make special positions common.
pub fn arrangement(
    n_range: std::ops::RangeInclusive<usize>,
    m_range: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Arrangement> {
    (n_range, m_range, any::<u64>(), any::<bool>()).prop_flat_map(|(n, m, seed, sparse)| {
        let n = n.max(2);
        prop::collection::vec(1..n, m).prop_map(move |dims| {
            if sparse {
                sparse_arrangement(n, &dims, seed)
            } else {
                random_arrangement(n, &dims, seed).unwrap()
            }
        })
    })
}

pub fn sparse_arrangement(n: usize, dims: &[usize], seed: u64) -> Arrangement {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let subspaces = dims
        .iter()
        .map(|&k| loop {
            let vs: Vec<Vec<Rational>> = (0..k)
                .map(|_| {
                    (0..n)
                        .map(|_| match rng.gen_range(0..8) {
                            0 => rat(-1),
                            1 => rat(1),
                            _ => rat(0),
                        })
                        .collect()
                })
                .collect();
            let s = SubspaceBasis::span(n, &vs).unwrap();
            if s.dim() == k {
                break s;
            }
        })
        .collect();
    Arrangement::new(n, subspaces).unwrap()
}

/// An invertible integer matrix: a product of elementary operations.
pub fn invertible(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..3 * n).prop_map(move |ops| {
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| rat((i == j) as i64)).collect())
            .collect();
        for (i, j, c) in ops {
            if i != j {
                let add: Vec<Rational> = rows[j].iter().map(|x| x * rat(c)).collect();
                for (x, y) in rows[i].iter_mut().zip(add) {
                    *x += y;
                }
            } else {
                rows.swap(i, (i + 1) % n);
            }
        }
        QMatrix::from_rows(n, &rows).unwrap()
    })
}
