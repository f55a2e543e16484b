//! Hilbert series of product ideals, their Betti numbers, the transversal
//! series, and Hilbert polynomials.
//!
//! Everything in this module depends only on the [`DimensionFunction`] of an
//! arrangement. The Hilbert series of the intersection ideal `I` is not a
//! function of the dimension data in general, so it is only available here
//! for transversal arrangements; otherwise use [`crate::oracle`].

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arrangement::{DimensionFunction, Subset};
use crate::error::{Error, Result};
use crate::ratpoly::{
    binomial, binomial_polynomial, expand_rational, inverse_of_t_mod, poly_mod_one_minus_t_pow,
    translate, QPolynomial, QSeries, Rational,
};

/// A rational function `numerator(t) / (1 - t)^denom_power`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RationalFunction {
    pub numerator: QPolynomial,
    pub denom_power: usize,
}

impl RationalFunction {
    pub fn new(numerator: QPolynomial, denom_power: usize) -> Self {
        Self {
            numerator,
            denom_power,
        }
    }

    pub fn series(&self, order: usize) -> QSeries {
        expand_rational(&self.numerator, self.denom_power, order)
    }

    /// Same function written over `(1 - t)^power`, `power ≥ denom_power`.
    pub fn with_denom_power(&self, power: usize) -> Self {
        assert!(power >= self.denom_power, "cannot lower the denominator power");
        Self {
            numerator: &self.numerator
                * &QPolynomial::one_minus_t_pow(power - self.denom_power),
            denom_power: power,
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/(1 - t)^{}", self.numerator, self.denom_power)
    }
}

/// Whether `a - b` is a polynomial in `t`. Both sides are first brought to
/// a common power of `(1 - t)`.
pub fn is_series_difference_polynomial(a: &RationalFunction, b: &RationalFunction) -> bool {
    let power = a.denom_power.max(b.denom_power);
    let diff = &a.with_denom_power(power).numerator - &b.with_denom_power(power).numerator;
    poly_mod_one_minus_t_pow(&diff, power).is_zero()
}

/// The polynomials `p_S(t)` for every subset of the arrangement.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PsFamily {
    m: usize,
    polys: Vec<QPolynomial>,
}

impl PsFamily {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, s: Subset) -> &QPolynomial {
        &self.polys[s.mask()]
    }

    pub fn full(&self) -> &QPolynomial {
        self.polys.last().expect("family always holds p_∅")
    }

    /// Re-checks the defining congruence and degree bound for every subset.
    pub fn verify(&self, d: &DimensionFunction) -> Result<()> {
        for s in Subset::all(self.m).skip(1) {
            let c = d.codim(s);
            let p = self.get(s);
            if p.degree().is_some_and(|deg| deg >= c) {
                return Err(Error::Inconsistent(format!(
                    "deg p_{s:?} = {} is not below c_S = {c}",
                    p.degree().unwrap()
                )));
            }
            let total = s.subsets().fold(QPolynomial::zero(), |acc, x| {
                &acc + &signed_shift(self.get(x), x.len())
            });
            if !poly_mod_one_minus_t_pow(&total, c).is_zero() {
                return Err(Error::Inconsistent(format!(
                    "congruence for p_{s:?} fails modulo (1 - t)^{c}"
                )));
            }
        }
        Ok(())
    }
}

/// `(-t)^k · p`
fn signed_shift(p: &QPolynomial, k: usize) -> QPolynomial {
    let shifted = p.shift(k);
    if k % 2 == 1 {
        -shifted
    } else {
        shifted
    }
}

/// Multiplies modulo `(1 - t)^c`.
fn mul_mod(a: &QPolynomial, b: &QPolynomial, c: usize) -> QPolynomial {
    poly_mod_one_minus_t_pow(&(a * b), c)
}

/// Solves `∑_{X⊆S} (-t)^{|X|} p_X ≡ 0 mod (1 - t)^{c_S}` with
/// `deg p_S < c_S` for each nonempty `S`, smallest masks first.
pub fn compute_ps_family(d: &DimensionFunction) -> PsFamily {
    let m = d.m();
    let mut polys: Vec<QPolynomial> = Vec::with_capacity(1 << m);
    polys.push(QPolynomial::one());
    // (c, k) -> (-t^{-1})^k mod (1-t)^c
    let mut unit_powers: HashMap<(usize, usize), QPolynomial> = HashMap::new();
    for s in Subset::all(m).skip(1) {
        let c = d.codim(s);
        if c == 0 {
            polys.push(QPolynomial::zero());
            continue;
        }
        // Group the proper subsets by cardinality, then apply (-t)^k once.
        let mut by_size = vec![QPolynomial::zero(); s.len()];
        for x in s.subsets().skip(1) {
            by_size[x.len()] = &by_size[x.len()] + &polys[x.mask()];
        }
        let rest = by_size
            .iter()
            .enumerate()
            .fold(QPolynomial::zero(), |acc, (k, p)| &acc + &signed_shift(p, k));
        let k = s.len();
        let unit = unit_powers
            .entry((c, k))
            .or_insert_with(|| {
                let inv = inverse_of_t_mod(c).expect("c >= 1");
                let neg_inv = -&inv;
                (0..k).fold(QPolynomial::one(), |acc, _| mul_mod(&acc, &neg_inv, c))
            })
            .clone();
        // (-t)^k p_S ≡ -rest  =>  p_S ≡ -rest · (-t)^{-k}
        polys.push(mul_mod(&(-&rest), &unit, c));
    }
    PsFamily { m, polys }
}

/// `H(J, t) = t^m p(t) / (1 - t)^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertSeriesJ {
    numerator: QPolynomial,
    n: usize,
    m: usize,
}

impl HilbertSeriesJ {
    pub fn from_family(family: &PsFamily, n: usize) -> Self {
        Self {
            numerator: family.full().shift(family.m()),
            n,
            m: family.m(),
        }
    }

    pub fn numerator(&self) -> &QPolynomial {
        &self.numerator
    }

    /// `p(t)`, the numerator with the factor `t^m` removed.
    pub fn p(&self) -> QPolynomial {
        QPolynomial::new(self.numerator.coeffs().iter().skip(self.m).cloned().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn as_rational_function(&self) -> RationalFunction {
        RationalFunction::new(self.numerator.clone(), self.n)
    }

    pub fn series(&self, order: usize) -> QSeries {
        expand_rational(&self.numerator, self.n, order)
    }
}

pub fn hilbert_series_j(d: &DimensionFunction) -> HilbertSeriesJ {
    HilbertSeriesJ::from_family(&compute_ps_family(d), d.n())
}

/// Betti numbers of the linear resolution of `J`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BettiTable {
    betti: Vec<BigInt>,
    m: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedBetti {
    pub i: usize,
    pub j: usize,
    pub value: BigInt,
}

impl BettiTable {
    pub fn betti(&self) -> &[BigInt] {
        &self.betti
    }

    /// Generation degree of `J`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Length `r` of the resolution (index of the last nonzero β).
    pub fn length(&self) -> Option<usize> {
        self.betti.len().checked_sub(1)
    }

    /// Nonzero entries `β_{i, m+i}`.
    pub fn graded(&self) -> Vec<GradedBetti> {
        self.betti
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .map(|(i, b)| GradedBetti {
                i,
                j: self.m + i,
                value: b.clone(),
            })
            .collect()
    }

    pub fn graded_value(&self, i: usize, j: usize) -> BigInt {
        if j == self.m + i {
            self.betti.get(i).cloned().unwrap_or_default()
        } else {
            BigInt::zero()
        }
    }
}

/// Reads `β_i = (-1)^i · [t^i] p(t)`, rejecting integrality or sign violations.
pub fn betti_numbers(hs: &HilbertSeriesJ) -> Result<BettiTable> {
    let p = hs.p();
    let mut betti = Vec::with_capacity(p.coeffs().len());
    for (i, c) in p.coeffs().iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::Inconsistent(format!(
                "coefficient of t^{i} in p(t) is not an integer: {c}"
            )));
        }
        let c = c.to_integer();
        let beta = if i % 2 == 0 { c } else { -c };
        if beta.is_negative() {
            return Err(Error::SignAlternation { index: i });
        }
        betti.push(beta);
    }
    Ok(BettiTable { betti, m: hs.m() })
}

fn check_codims(codims: &[usize], n: usize) -> Result<()> {
    if codims.is_empty() {
        return Err(Error::InvalidInput("need at least one codimension".into()));
    }
    if let Some(&c) = codims.iter().find(|&&c| c == 0 || c > n) {
        return Err(Error::InvalidInput(format!(
            "codimension {c} outside 1..={n}"
        )));
    }
    Ok(())
}

/// `f(t) = ∏ (1 - (1 - t)^{c_i}) / (1 - t)^n`.
pub fn transversal_series(codims: &[usize], n: usize) -> Result<RationalFunction> {
    check_codims(codims, n)?;
    let one = QPolynomial::one();
    let numerator = codims.iter().fold(QPolynomial::one(), |acc, &c| {
        &acc * &(&one - &QPolynomial::one_minus_t_pow(c))
    });
    Ok(RationalFunction::new(numerator, n))
}

/// `∑_S (-1)^{|S|} C(d+n-1-c_S, n-1-c_S)` over subsets with
/// `c_S = ∑_{i∈S} c_i < n`, including `S = ∅`. Valid for `d ≥ m`.
pub fn transversal_hilbert_function(codims: &[usize], n: usize, d: usize) -> Result<BigInt> {
    check_codims(codims, n)?;
    let m = codims.len();
    if d < m {
        return Err(Error::InvalidInput(format!(
            "the binomial sum is only valid for d >= m = {m}, got d = {d}"
        )));
    }
    if m > 31 {
        return Err(Error::TooManySubspaces { m, cap: 31 });
    }
    let (n, d) = (n as i64, d as i64);
    let mut total = BigInt::zero();
    for s in Subset::all(m) {
        let c: i64 = s.members().map(|i| codims[i] as i64).sum();
        if c >= n {
            continue;
        }
        let term = binomial(d + n - 1 - c, n - 1 - c);
        if s.len() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// A Hilbert polynomial, in the variable `d`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct HilbertPolynomial(pub QPolynomial);

impl HilbertPolynomial {
    pub fn coeffs(&self) -> &QPolynomial {
        &self.0
    }

    pub fn eval(&self, d: i64) -> Rational {
        self.0.eval_int(d)
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display_with("d"))
    }
}

/// Hilbert polynomial of `numerator / (1 - t)^n`:
/// `∑_j num_j · (d-j+n-1)⋯(d-j+1)/(n-1)!`.
pub fn hilbert_polynomial_from_numerator(
    numerator: &QPolynomial,
    n: usize,
) -> Result<HilbertPolynomial> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "the Hilbert polynomial needs n >= 1".into(),
        ));
    }
    let base = binomial_polynomial(n);
    let poly = numerator
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(QPolynomial::zero(), |acc, (j, c)| {
            &acc + &translate(&base, j as i64).scale(c)
        });
    Ok(HilbertPolynomial(poly))
}

/// Numerator of `∑_d values[d] t^d` over `(1 - t)^n`, computed from the given
/// prefix. Exact whenever the true numerator has degree `< values.len()`.
pub fn numerator_from_prefix(values: &[Rational], n: usize) -> QPolynomial {
    let prefix = QPolynomial::new(values.to_vec());
    (&prefix * &QPolynomial::one_minus_t_pow(n)).truncate(values.len())
}

/// Everything the closed forms say about an arrangement's dimension function.
#[derive(Clone, Debug)]
pub struct HilbertReport {
    pub family: PsFamily,
    pub series_j: HilbertSeriesJ,
    pub betti: BettiTable,
    pub hilbert_polynomial_j: HilbertPolynomial,
    pub transversal: bool,
    /// `f(t)`, present exactly when the arrangement is transversal.
    pub transversal_series: Option<RationalFunction>,
}

pub fn hilbert_report(d: &DimensionFunction) -> Result<HilbertReport> {
    let family = compute_ps_family(d);
    family.verify(d)?;
    let series_j = HilbertSeriesJ::from_family(&family, d.n());
    let betti = betti_numbers(&series_j)?;
    let hilbert_polynomial_j = hilbert_polynomial_from_numerator(series_j.numerator(), d.n())?;
    let transversal = d.is_transversal();
    let transversal_series = if transversal {
        Some(transversal_series(&d.codims(), d.n())?)
    } else {
        None
    };
    Ok(HilbertReport {
        family,
        series_j,
        betti,
        hilbert_polynomial_j,
        transversal,
        transversal_series,
    })
}
