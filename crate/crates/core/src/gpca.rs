//! Recovering subspace codimensions from Hilbert-function data.
//!
//! Given `h_I(d)` at `d = m, …, m+n-1` for a transversal arrangement of `m`
//! subspaces, the Hilbert polynomial is interpolated, rewritten as a series
//! numerator `a(t)` over `(1 - t)^n`, reduced, substituted `t ↦ 1 - t`, and
//! the multiplicity of each codimension is peeled off one power of `t` at a
//! time. The values themselves can be estimated from sample points lying on
//! the arrangement.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::{Arrangement, Limits};
use crate::error::{Error, Result};
use crate::linalg::{approx_rank, IntEchelon, QMatrix, QVector, DEFAULT_REL_TOL};
use crate::oracle::{graded_dim, MonomialBasis};
use crate::ratpoly::{
    binomial_polynomial, poly_mod_one_minus_t_pow, primitive_integer_vector, rat, translate,
    QPolynomial, QSeries, Rational,
};

#[derive(Clone, Debug, PartialEq)]
pub enum Points {
    Exact(Vec<QVector>),
    Approx(Vec<Vec<f64>>),
}

/// Sample points in `ℚⁿ` (or `ℝⁿ` in approximate mode); each spans a ray.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    ambient_dim: usize,
    points: Points,
}

impl PointCloud {
    pub fn exact(ambient_dim: usize, points: Vec<QVector>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.len() != ambient_dim {
                return Err(Error::VectorLength {
                    expected: ambient_dim,
                    got: p.len(),
                });
            }
            if p.iter().all(Zero::is_zero) {
                return Err(Error::InvalidInput(format!("point {} is the zero vector", i + 1)));
            }
        }
        Ok(Self {
            ambient_dim,
            points: Points::Exact(points),
        })
    }

    pub fn approx(ambient_dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.len() != ambient_dim {
                return Err(Error::VectorLength {
                    expected: ambient_dim,
                    got: p.len(),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!("point {} is not finite", i + 1)));
            }
            if p.iter().all(|&x| x == 0.0) {
                return Err(Error::InvalidInput(format!("point {} is the zero vector", i + 1)));
            }
        }
        Ok(Self {
            ambient_dim,
            points: Points::Approx(points),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn points(&self) -> &Points {
        &self.points
    }

    pub fn len(&self) -> usize {
        match &self.points {
            Points::Exact(p) => p.len(),
            Points::Approx(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The first `k` points.
    pub fn prefix(&self, k: usize) -> Self {
        let points = match &self.points {
            Points::Exact(p) => Points::Exact(p[..k.min(p.len())].to_vec()),
            Points::Approx(p) => Points::Approx(p[..k.min(p.len())].to_vec()),
        };
        Self {
            ambient_dim: self.ambient_dim,
            points,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RankMode {
    Exact,
    /// Floating-point elimination with a tolerance relative to the largest entry.
    Approx { rel_tol: f64 },
}

impl RankMode {
    pub fn approx_default() -> Self {
        RankMode::Approx {
            rel_tol: DEFAULT_REL_TOL,
        }
    }
}

/// Estimates `h(I, d)` as `dim R_d` minus the rank of the monomial
/// evaluation matrix at the points.
pub fn estimate_hilbert_value(pc: &PointCloud, d: usize, mode: RankMode) -> Result<usize> {
    estimate_hilbert_value_with_limits(pc, d, mode, &Limits::default())
}

pub fn estimate_hilbert_value_with_limits(
    pc: &PointCloud,
    d: usize,
    mode: RankMode,
    limits: &Limits,
) -> Result<usize> {
    let n = pc.ambient_dim();
    let total = graded_dim(n, d)
        .to_usize()
        .filter(|&c| c <= limits.max_monomials)
        .ok_or_else(|| Error::TooManyMonomials {
            count: graded_dim(n, d).to_usize().unwrap_or(usize::MAX),
            cap: limits.max_monomials,
        })?;
    let basis = MonomialBasis::new(n, d);
    let rank = match (mode, pc.points()) {
        (RankMode::Exact, Points::Exact(points)) => {
            // Rescaling a point scales its row by a nonzero factor.
            let mut ech = IntEchelon::new(total);
            for p in points {
                let p = primitive_integer_vector(p);
                let row = basis
                    .monomials()
                    .iter()
                    .map(|mono| {
                        mono.iter()
                            .zip(&p)
                            .map(|(&e, x)| num_traits::pow(x.clone(), e as usize))
                            .product()
                    })
                    .collect();
                ech.insert(row);
                if ech.is_full() {
                    break;
                }
            }
            ech.rank()
        }
        (RankMode::Exact, Points::Approx(_)) => {
            return Err(Error::InvalidInput(
                "floating-point points need approximate mode (a tolerance)".into(),
            ))
        }
        (RankMode::Approx { rel_tol }, points) => {
            if !(rel_tol > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "tolerance must be positive, got {rel_tol}"
                )));
            }
            let floats: Vec<Vec<f64>> = match points {
                Points::Approx(p) => p.clone(),
                Points::Exact(p) => p
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
                    .collect(),
            };
            let rows: Vec<Vec<f64>> = floats
                .iter()
                .map(|p| {
                    let scale = p.iter().fold(0.0f64, |a, x| a.max(x.abs()));
                    let p: Vec<f64> = p.iter().map(|x| x / scale).collect();
                    basis
                        .monomials()
                        .iter()
                        .map(|mono| mono.iter().zip(&p).map(|(&e, x)| x.powi(e as i32)).product())
                        .collect()
                })
                .collect();
            approx_rank(&rows, rel_tol)
        }
    };
    Ok(total - rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecoveryResult {
    pub ambient_dim: usize,
    /// `multiplicities[i-1]` = number of subspaces of codimension `i`, `i = 1..n-1`.
    pub multiplicities: Vec<usize>,
    /// Codimension multiset, ascending.
    pub codims: Vec<usize>,
}

impl RecoveryResult {
    /// Subspace dimensions `n - c_i`, in the order of [`Self::codims`].
    pub fn dims(&self) -> Vec<usize> {
        self.codims.iter().map(|c| self.ambient_dim - c).collect()
    }
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[i64], ys: &[Rational]) -> QPolynomial {
    assert_eq!(xs.len(), ys.len(), "interpolation needs matching lengths");
    let mut acc = QPolynomial::zero();
    for (i, (&xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = QPolynomial::one();
        let mut denom = Rational::one();
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &QPolynomial::from_ints(&[-xj, 1]);
                denom *= rat(xi - xj);
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

/// Writes a polynomial of degree `< n` as `∑_j a_j · C(d+n-1-j, n-1)` and
/// returns `a(t) = ∑ a_j t^j`.
pub fn binomial_basis_coefficients(h: &QPolynomial, n: usize) -> Result<QPolynomial> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if h.degree().is_some_and(|deg| deg >= n) {
        return Err(Error::InvalidInput(format!(
            "polynomial of degree {} has no expansion in {n} binomial terms",
            h.degree().unwrap()
        )));
    }
    let base = binomial_polynomial(n);
    let columns: Vec<QPolynomial> = (0..n).map(|j| translate(&base, j as i64)).collect();
    let rows: Vec<QVector> = (0..n)
        .map(|i| {
            let mut row: QVector = columns.iter().map(|c| c.coeff(i)).collect();
            row.push(h.coeff(i));
            row
        })
        .collect();
    let (r, pivots) = QMatrix::from_rows(n + 1, &rows)?.rref();
    if pivots != (0..n).collect::<Vec<_>>() {
        return Err(Error::Inconsistent("binomial basis system is singular".into()));
    }
    Ok(QPolynomial::new((0..n).map(|i| r.get(i, n).clone()).collect()))
}

/// Recovers the codimension multiset of a transversal arrangement of `m`
/// subspaces in `ℚⁿ` from `h_I(d)` at `d = m, …, m+n-1`.
///
/// Subspaces of codimension `n` (the origin) are invisible to this procedure
/// and surface as a multiplicity total below `m`.
pub fn recover_codimensions(values: &[BigInt], m: usize, n: usize) -> Result<RecoveryResult> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("need n >= 1 and m >= 1".into()));
    }
    if values.len() != n {
        return Err(Error::InvalidInput(format!(
            "expected {n} Hilbert values (d = {m}..={}), got {}",
            m + n - 1,
            values.len()
        )));
    }
    let xs: Vec<i64> = (m..m + n).map(|d| d as i64).collect();
    let ys: Vec<Rational> = values.iter().cloned().map(Rational::from_integer).collect();
    let hilbert_poly = interpolate(&xs, &ys);
    let a = binomial_basis_coefficients(&hilbert_poly, n)?;
    if !a.is_integral() {
        return Err(Error::Inconsistent(format!(
            "series numerator {a} is not integral; the values do not come from a Hilbert polynomial"
        )));
    }
    let b = poly_mod_one_minus_t_pow(&a, n);
    let order = n - 1;
    let mut series = QSeries::from_poly(&b.substitute_one_minus_t(), order);
    if !series.coeff(0).is_one() {
        return Err(Error::Inconsistent(format!(
            "b(1 - t) has constant term {} instead of 1",
            series.coeff(0)
        )));
    }
    let mut multiplicities = Vec::with_capacity(order);
    for k in 1..=order {
        let c = series.coeff(k);
        if !c.is_integer() || c.is_positive() {
            return Err(Error::Inconsistent(format!(
                "coefficient {c} of t^{k} does not give a nonnegative multiplicity"
            )));
        }
        let r = (-c)
            .to_integer()
            .to_usize()
            .ok_or_else(|| Error::Inconsistent(format!("multiplicity {} too large", -c)))?;
        if r > m {
            return Err(Error::Inconsistent(format!(
                "multiplicity {r} of codimension {k} exceeds m = {m}"
            )));
        }
        if r > 0 {
            let factor = QPolynomial::one() - QPolynomial::monomial(rat(1), k);
            series = series.divide(&QSeries::from_poly(&factor.pow(r as u32), order))?;
        }
        multiplicities.push(r);
    }
    let total: usize = multiplicities.iter().sum();
    if total != m {
        return Err(Error::Inconsistent(format!(
            "recovered {total} subspaces but m = {m}; check m, transversality, \
             or whether some subspace is the origin"
        )));
    }
    let codims = multiplicities
        .iter()
        .enumerate()
        .flat_map(|(i, &r)| std::iter::repeat_n(i + 1, r))
        .collect();
    Ok(RecoveryResult {
        ambient_dim: n,
        multiplicities,
        codims,
    })
}

/// Estimated values `h(I, d)` for `d = m, …, m+n-1`.
pub fn estimate_recovery_values(pc: &PointCloud, m: usize, mode: RankMode) -> Result<Vec<BigInt>> {
    let n = pc.ambient_dim();
    (m..m + n)
        .map(|d| estimate_hilbert_value(pc, d, mode).map(BigInt::from))
        .collect()
}

/// Estimates the needed Hilbert values from points and recovers codimensions.
pub fn end_to_end_recover(pc: &PointCloud, m: usize, mode: RankMode) -> Result<RecoveryResult> {
    if pc.is_empty() {
        return Err(Error::InvalidInput("the point cloud is empty".into()));
    }
    let values = estimate_recovery_values(pc, m, mode)?;
    recover_codimensions(&values, m, pc.ambient_dim())
}

/// Draws `per_subspace` nonzero points from each subspace as random integer
/// combinations (entries in `-5..=5`) of its basis vectors.
pub fn sample_points(a: &Arrangement, per_subspace: usize, seed: u64) -> Result<PointCloud> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = a.ambient_dim();
    let mut points = Vec::new();
    for s in a.subspaces() {
        if s.dim() == 0 {
            continue;
        }
        let mut drawn = 0;
        while drawn < per_subspace {
            let coeffs: Vec<Rational> = (0..s.dim()).map(|_| rat(rng.gen_range(-5..=5))).collect();
            let p: QVector = (0..n)
                .map(|j| s.vectors().iter().zip(&coeffs).map(|(v, c)| &v[j] * c).sum())
                .collect();
            if p.iter().any(|x: &Rational| !x.is_zero()) {
                points.push(p);
                drawn += 1;
            }
        }
    }
    PointCloud::exact(n, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::ratio;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn e(n: usize, i: usize) -> QVector {
        let mut v = vec![rat(0); n];
        v[i] = rat(1);
        v
    }

    fn axes3() -> Arrangement {
        Arrangement::from_int_vectors(
            3,
            &[vec![vec![1, 0, 0]], vec![vec![0, 1, 0]], vec![vec![0, 0, 1]]],
        )
        .unwrap()
    }

    #[test]
    fn coordinate_points_degree_two() {
        let pc = PointCloud::exact(3, vec![e(3, 0), e(3, 1), e(3, 2)]).unwrap();
        assert_eq!(estimate_hilbert_value(&pc, 2, RankMode::Exact).unwrap(), 3);
        assert_eq!(estimate_hilbert_value(&pc, 0, RankMode::Exact).unwrap(), 0);
        assert_eq!(estimate_hilbert_value(&pc, 2, RankMode::approx_default()).unwrap(), 3);
    }

    #[test]
    fn sampled_lines_degree_three() {
        let pc = sample_points(&axes3(), 10, 5).unwrap();
        assert_eq!(pc.len(), 30);
        assert_eq!(estimate_hilbert_value(&pc, 3, RankMode::Exact).unwrap(), 7);
    }

    #[test]
    fn rejects_zero_points() {
        assert!(PointCloud::exact(2, vec![vec![rat(0), rat(0)]]).is_err());
        assert!(PointCloud::approx(2, vec![vec![0.0, 0.0]]).is_err());
        assert!(PointCloud::approx(2, vec![vec![f64::NAN, 1.0]]).is_err());
    }

    #[test]
    fn float_points_need_tolerance() {
        let pc = PointCloud::approx(2, vec![vec![1.0, 0.5]]).unwrap();
        assert!(estimate_hilbert_value(&pc, 1, RankMode::Exact).is_err());
        assert_eq!(estimate_hilbert_value(&pc, 1, RankMode::approx_default()).unwrap(), 1);
    }

    #[test]
    fn interpolation_reproduces_values() {
        let ys = vec![rat(7), rat(12), rat(18)];
        let h = interpolate(&[3, 4, 5], &ys);
        assert_eq!(h, QPolynomial::new(vec![rat(-2), ratio(3, 2), ratio(1, 2)]));
    }

    #[test]
    fn binomial_basis_for_three_axes() {
        let h = QPolynomial::new(vec![rat(-2), ratio(3, 2), ratio(1, 2)]);
        let a = binomial_basis_coefficients(&h, 3).unwrap();
        assert_eq!(a, QPolynomial::from_ints(&[-2, 6, -3]));
        assert_eq!(a.substitute_one_minus_t(), QPolynomial::from_ints(&[1, 0, -3]));
    }

    #[test]
    fn recover_three_axes() {
        let r = recover_codimensions(&big(&[7, 12, 18]), 3, 3).unwrap();
        assert_eq!(r.multiplicities, vec![0, 3]);
        assert_eq!(r.codims, vec![2, 2, 2]);
        assert_eq!(r.dims(), vec![1, 1, 1]);
    }

    #[test]
    fn recover_line_in_plane() {
        let r = recover_codimensions(&big(&[1, 2]), 1, 2).unwrap();
        assert_eq!(r.multiplicities, vec![1]);
        assert_eq!(r.codims, vec![1]);
    }

    #[test]
    fn recover_rejects_inconsistent_values() {
        assert!(matches!(
            recover_codimensions(&big(&[1, 1, 1]), 3, 3),
            Err(Error::Inconsistent(_))
        ));
        assert!(recover_codimensions(&big(&[7, 12]), 3, 3).is_err());
    }

    #[test]
    fn end_to_end_three_lines() {
        let pc = sample_points(&axes3(), 10, 1).unwrap();
        let r = end_to_end_recover(&pc, 3, RankMode::Exact).unwrap();
        assert_eq!(r.dims(), vec![1, 1, 1]);
    }

    #[test]
    fn end_to_end_single_plane() {
        let a = Arrangement::from_int_vectors(3, &[vec![vec![1, 2, 0], vec![0, 1, -1]]]).unwrap();
        let pc = sample_points(&a, 10, 3).unwrap();
        let r = end_to_end_recover(&pc, 1, RankMode::Exact).unwrap();
        assert_eq!(r.codims, vec![1]);
        assert_eq!(r.dims(), vec![2]);
    }

    #[test]
    fn end_to_end_empty_cloud() {
        let pc = PointCloud::exact(3, vec![]).unwrap();
        assert!(end_to_end_recover(&pc, 1, RankMode::Exact).is_err());
    }
}
