//! Brute-force graded dimensions of `I_S = ⋂ I_i` and `J_S = ∏ I_i` by exact
//! linear algebra on monomial bases.
//!
//! The degree-`d` piece of `I_S` is the common kernel of the restriction maps
//! `R_d → K[V_i]_d`, each obtained by substituting a parametrization of `V_i`
//! into every monomial. The degree-`d` piece of `J_S` is spanned by products
//! of one linear form from each `I_i` times monomials of the remaining degree.
//! None of this uses the closed forms in [`crate::hilbert`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arrangement::{Arrangement, Limits, Subset};
use crate::error::{Error, Result};
use crate::linalg::{integer_rank_bounded, modular_rank, SubspaceBasis};
use crate::ratpoly::{binomial, primitive_integer_vector};

/// Exponent vectors of all degree-`d` monomials in `n` variables, in
/// graded-lex order (`x_1^d` first).
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    n: usize,
    d: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: usize) -> Self {
        let mut monomials = Vec::new();
        let mut cur = vec![0u32; n];
        fill(&mut monomials, &mut cur, 0, d as u32);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            n,
            d,
            monomials,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
    if pos == cur.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(out, cur, pos + 1, left - e);
    }
    cur[pos] = 0;
}

/// `C(d+n-1, n-1)`, the dimension of `R_d`.
pub fn graded_dim(n: usize, d: usize) -> BigInt {
    if n == 0 {
        return BigInt::from(u8::from(d == 0));
    }
    binomial((d + n - 1) as i64, (n - 1) as i64)
}

fn check_monomial_cap(n: usize, d: usize, limits: &Limits) -> Result<usize> {
    let count = graded_dim(n, d);
    match usize::try_from(&count) {
        Ok(c) if c <= limits.max_monomials => Ok(c),
        _ => Err(Error::TooManyMonomials {
            count: usize::try_from(&count).unwrap_or(usize::MAX),
            cap: limits.max_monomials,
        }),
    }
}

/// Multiplies a dense homogeneous polynomial (over `from`) by the linear form
/// `∑ form[j] x_j`, producing a dense vector over `to`.
fn mul_linear(
    poly: &[BigInt],
    form: &[BigInt],
    from: &MonomialBasis,
    to: &MonomialBasis,
) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); to.len()];
    let mut exps = vec![0u32; from.n()];
    for (coef, mono) in poly.iter().zip(from.monomials()) {
        if coef.is_zero() {
            continue;
        }
        exps.copy_from_slice(mono);
        for (j, f) in form.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            exps[j] += 1;
            out[to.index_of(&exps).expect("degree-raised monomial")] += coef * f;
            exps[j] -= 1;
        }
    }
    out
}

/// Images of every degree-`d` monomial of `R` in `K[V]_d`, where
/// `x_j ↦ ∑_l B[l][j] u_l` for the basis vectors `B[l]` of `V`.
fn restriction_images(v: &SubspaceBasis, d: usize) -> Vec<Vec<BigInt>> {
    let n = v.ambient_dim();
    let k = v.dim();
    let basis: Vec<Vec<BigInt>> = v.vectors().iter().map(|b| primitive_integer_vector(b)).collect();
    // x_j as a linear form in u
    let coords: Vec<Vec<BigInt>> = (0..n)
        .map(|j| basis.iter().map(|b| b[j].clone()).collect())
        .collect();

    let mut src = MonomialBasis::new(n, 0);
    let mut dst = MonomialBasis::new(k, 0);
    let mut images: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1); dst.len()]];
    for e in 1..=d {
        let next_src = MonomialBasis::new(n, e);
        let next_dst = MonomialBasis::new(k, e);
        let mut next = Vec::with_capacity(next_src.len());
        let mut lower = vec![0u32; n];
        for mono in next_src.monomials() {
            let j = mono.iter().position(|&x| x > 0).expect("positive degree");
            lower.copy_from_slice(mono);
            lower[j] -= 1;
            let prev = &images[src.index_of(&lower).expect("lower monomial")];
            next.push(mul_linear(prev, &coords[j], &dst, &next_dst));
        }
        images = next;
        src = next_src;
        dst = next_dst;
    }
    images
}

fn select(mut rows: Vec<Vec<BigInt>>, keep: &[usize]) -> Vec<Vec<BigInt>> {
    let mut keep = keep.iter().peekable();
    let mut idx = 0;
    rows.retain(|_| {
        let hit = keep.peek() == Some(&&idx);
        if hit {
            keep.next();
        }
        idx += 1;
        hit
    });
    rows
}

/// Rows of the stacked restriction map `R_d → ⊕_{i∈S} K[V_i]_d`: row α holds
/// the images of `x^α`.
fn intersection_rows(a: &Arrangement, s: Subset, d: usize, total: usize) -> (Vec<Vec<BigInt>>, usize) {
    let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); total];
    for i in s.members() {
        for (row, img) in rows.iter_mut().zip(restriction_images(a.subspace(i), d)) {
            row.extend(img);
        }
    }
    let cols = rows.first().map_or(0, Vec::len);
    (rows, cols)
}

// J_S ⊆ I_S, so a lower bound on one side bounds the other:
//   rank_p(J rows) ≤ dim J ≤ dim I ≤ total − rank_p(I rows).
// One prime on each side usually closes the gap; otherwise the certified
// search runs, capped by the bound.

/// `dim (I_S)_d` with the default caps.
pub fn dim_intersection_ideal(a: &Arrangement, s: Subset, d: usize) -> Result<usize> {
    dim_intersection_ideal_with_limits(a, s, d, &Limits::default())
}

pub fn dim_intersection_ideal_with_limits(
    a: &Arrangement,
    s: Subset,
    d: usize,
    limits: &Limits,
) -> Result<usize> {
    Ok(intersection_ideal_dims(a, s, d, limits)?[d])
}

/// `dim (I_S)_d` for `d = 0..=d_max`.
pub fn intersection_ideal_dims(
    a: &Arrangement,
    s: Subset,
    d_max: usize,
    limits: &Limits,
) -> Result<Vec<usize>> {
    let n = a.ambient_dim();
    check_monomial_cap(n, d_max, limits)?;
    let lower = product_chain(a, s, d_max, Certify::No, limits)?;
    (0..=d_max)
        .map(|d| {
            let total = graded_dim(n, d).to_usize().expect("within the monomial cap");
            if s.is_empty() {
                return Ok(total);
            }
            let (rows, cols) = intersection_rows(a, s, d, total);
            Ok(total - integer_rank_bounded(&rows, cols, Some(total - lower[d])).rank)
        })
        .collect()
}

/// Upper bound on `dim (I_S)_d` from one modular rank.
fn intersection_upper_bound(a: &Arrangement, s: Subset, d: usize) -> usize {
    let total = graded_dim(a.ambient_dim(), d).to_usize().expect("within the monomial cap");
    let (rows, cols) = intersection_rows(a, s, d, total);
    total - modular_rank(&rows, cols).rank
}

/// `dim (J_S)_d` with the default caps.
pub fn dim_product_ideal(a: &Arrangement, s: Subset, d: usize) -> Result<usize> {
    dim_product_ideal_with_limits(a, s, d, &Limits::default())
}

pub fn dim_product_ideal_with_limits(
    a: &Arrangement,
    s: Subset,
    d: usize,
    limits: &Limits,
) -> Result<usize> {
    Ok(product_ideal_dims(a, s, d, limits)?[d])
}

/// `dim (J_S)_d` for `d = 0..=d_max`, from one pass up the degrees.
pub fn product_ideal_dims(a: &Arrangement, s: Subset, d_max: usize, limits: &Limits) -> Result<Vec<usize>> {
    product_chain(a, s, d_max, Certify::Yes, limits)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Certify {
    Yes,
    /// One prime per degree: every reported value is a lower bound.
    No,
}

fn product_chain(
    a: &Arrangement,
    s: Subset,
    d_max: usize,
    certify: Certify,
    limits: &Limits,
) -> Result<Vec<usize>> {
    let n = a.ambient_dim();
    check_monomial_cap(n, d_max, limits)?;
    let totals: Vec<usize> = (0..=d_max)
        .map(|d| graded_dim(n, d).to_usize().expect("within the monomial cap"))
        .collect();
    let k = s.len();
    if k == 0 {
        return Ok(totals);
    }
    let mut dims = vec![0; d_max + 1];
    if d_max < k {
        return Ok(dims);
    }
    let members: Vec<usize> = s.members().collect();
    let forms: Vec<Vec<Vec<BigInt>>> = members
        .iter()
        .map(|&i| {
            a.subspace(i)
                .annihilator()
                .iter()
                .map(|f| primitive_integer_vector(f))
                .collect()
        })
        .collect();
    // Keeps the candidates independent of those before them, unreduced.
    // `factors` is the number of ideals multiplied so far.
    let independent = |rows: Vec<Vec<BigInt>>, cols: usize, factors: usize, degree: usize| {
        let keep = match certify {
            Certify::Yes => {
                let prefix = Subset::from_indices(&members[..factors]);
                let upper = intersection_upper_bound(a, prefix, degree);
                integer_rank_bounded(&rows, cols, Some(upper))
            }
            Certify::No => modular_rank(&rows, cols),
        };
        select(rows, &keep.independent_rows)
    };

    // Degree-e piece of I_{i_1}⋯I_{i_e}. `gens` holds the unreduced
    // (small-coefficient) products found independent; multiplying those,
    // not reduced rows, keeps entries from compounding.
    let mut basis = MonomialBasis::new(n, 1);
    let mut gens = independent(forms[0].clone(), basis.len(), 1, 1);
    for (e, factor) in forms.iter().enumerate().skip(1) {
        let next_basis = MonomialBasis::new(n, e + 1);
        let candidates = gens
            .iter()
            .flat_map(|w| factor.iter().map(|f| mul_linear(w, f, &basis, &next_basis)))
            .collect();
        gens = independent(candidates, next_basis.len(), e + 1, e + 1);
        basis = next_basis;
    }
    dims[k] = gens.len();
    // Multiply by one variable at a time.
    let variables: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::from(1);
            e
        })
        .collect();
    for d in k + 1..=d_max {
        if gens.len() == basis.len() {
            dims[d] = totals[d];
            continue;
        }
        let next_basis = MonomialBasis::new(n, d);
        let candidates = gens
            .iter()
            .flat_map(|w| variables.iter().map(|x| mul_linear(w, x, &basis, &next_basis)))
            .collect();
        gens = independent(candidates, next_basis.len(), k, d);
        basis = next_basis;
        dims[d] = gens.len();
    }
    Ok(dims)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPieceResult {
    pub degree: usize,
    pub dim_i: usize,
    pub dim_j: usize,
}

/// `dim I_d` and `dim J_d` for the full arrangement, `d = 0..=d_max`.
pub fn hilbert_table(a: &Arrangement, d_max: usize, limits: &Limits) -> Result<Vec<GradedPieceResult>> {
    hilbert_table_parallel(a, d_max, limits, 1)
}

/// Same as [`hilbert_table`], spreading degrees over `jobs` threads.
pub fn hilbert_table_parallel(
    a: &Arrangement,
    d_max: usize,
    limits: &Limits,
    jobs: usize,
) -> Result<Vec<GradedPieceResult>> {
    check_monomial_cap(a.ambient_dim(), d_max, limits)?;
    let full = Subset::full(a.len());
    let cell = |d: usize| dim_intersection_ideal_with_limits(a, full, d, limits);
    let jobs = jobs.clamp(1, d_max + 1);
    let (dims_i, dims_j) = if jobs == 1 {
        (
            intersection_ideal_dims(a, full, d_max, limits)?,
            product_ideal_dims(a, full, d_max, limits)?,
        )
    } else {
        // The J column is one sequential pass; I cells go to the workers.
        let mut dims_i = vec![0; d_max + 1];
        let dims_j = std::thread::scope(|scope| -> Result<Vec<usize>> {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let cell = &cell;
                    scope.spawn(move || {
                        (w..=d_max)
                            .step_by(jobs)
                            .map(|d| cell(d).map(|v| (d, v)))
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            let dims_j = product_ideal_dims(a, full, d_max, limits)?;
            for h in handles {
                for (d, v) in h.join().expect("oracle worker panicked")? {
                    dims_i[d] = v;
                }
            }
            Ok(dims_j)
        })?;
        (dims_i, dims_j)
    };
    Ok((0..=d_max)
        .map(|d| GradedPieceResult {
            degree: d,
            dim_i: dims_i[d],
            dim_j: dims_j[d],
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SubspaceBasis;

    fn axes3() -> Arrangement {
        Arrangement::from_int_vectors(
            3,
            &[vec![vec![1, 0, 0]], vec![vec![0, 1, 0]], vec![vec![0, 0, 1]]],
        )
        .unwrap()
    }

    fn collinear3() -> Arrangement {
        Arrangement::from_int_vectors(
            3,
            &[vec![vec![1, 0, 0]], vec![vec![0, 1, 0]], vec![vec![1, 1, 0]]],
        )
        .unwrap()
    }

    #[test]
    fn monomial_basis_order_and_size() {
        let b = MonomialBasis::new(3, 2);
        assert_eq!(
            b.monomials(),
            &[
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        for n in 1..6 {
            for d in 0..6 {
                assert_eq!(BigInt::from(MonomialBasis::new(n, d).len()), graded_dim(n, d));
            }
        }
        assert_eq!(MonomialBasis::new(0, 0).len(), 1);
        assert_eq!(MonomialBasis::new(0, 3).len(), 0);
    }

    #[test]
    fn intersection_examples() {
        let full = Subset::full(3);
        assert_eq!(dim_intersection_ideal(&axes3(), full, 2).unwrap(), 3);
        assert_eq!(dim_intersection_ideal(&collinear3(), full, 1).unwrap(), 1);
        for d in 0..5 {
            assert_eq!(
                BigInt::from(dim_intersection_ideal(&axes3(), Subset::EMPTY, d).unwrap()),
                graded_dim(3, d)
            );
        }
    }

    #[test]
    fn product_examples() {
        let full = Subset::full(3);
        let got: Vec<usize> = (3..=5)
            .map(|d| dim_product_ideal(&axes3(), full, d).unwrap())
            .collect();
        assert_eq!(got, vec![7, 12, 18]);
        assert_eq!(dim_product_ideal(&axes3(), full, 2).unwrap(), 0);
        assert_eq!(dim_product_ideal(&axes3(), Subset::singleton(1), 1).unwrap(), 2);
    }

    #[test]
    fn table_for_coordinate_axes() {
        let t = hilbert_table(&axes3(), 5, &Limits::default()).unwrap();
        let i: Vec<usize> = t.iter().map(|r| r.dim_i).collect();
        let j: Vec<usize> = t.iter().map(|r| r.dim_j).collect();
        assert_eq!(i, vec![0, 0, 3, 7, 12, 18]);
        assert_eq!(j, vec![0, 0, 0, 7, 12, 18]);
        let par = hilbert_table_parallel(&axes3(), 5, &Limits::default(), 3).unwrap();
        assert_eq!(par, t);
    }

    #[test]
    fn origin_in_the_line() {
        let a = Arrangement::new(1, vec![SubspaceBasis::zero(1)]).unwrap();
        let t = hilbert_table(&a, 2, &Limits::default()).unwrap();
        let i: Vec<usize> = t.iter().map(|r| r.dim_i).collect();
        let j: Vec<usize> = t.iter().map(|r| r.dim_j).collect();
        assert_eq!(i, vec![0, 1, 1]);
        assert_eq!(j, vec![0, 1, 1]);
    }

    #[test]
    fn monomial_cap_enforced() {
        let limits = Limits {
            max_monomials: 10,
            ..Limits::default()
        };
        // C(5, 2) = 10 fits exactly
        assert_eq!(
            dim_intersection_ideal_with_limits(&axes3(), Subset::full(3), 3, &limits),
            Ok(7)
        );
        assert!(matches!(
            hilbert_table(&axes3(), 4, &limits),
            Err(Error::TooManyMonomials { count: 15, cap: 10 })
        ));
    }
}
