//! Exact rational numbers, dense univariate polynomials over ℚ and truncated
//! power series.
//!
//! Everything here is immutable once built. Polynomials are kept in canonical
//! form (no trailing zero coefficients), so structural equality is equality of
//! polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"7"`, `"-3"` or `"3/2"`. The denominator must be a positive integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::InvalidInput(format!("{msg}: {s:?}"));
    let s = s.trim();
    let parse_int = |part: &str| -> Result<BigInt> {
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("not an integer or integer/positive-integer"));
        }
        part.parse::<BigInt>()
            .map_err(|_| bad("not an integer or integer/positive-integer"))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            if den.starts_with(['-', '+']) {
                return Err(bad("denominator must be a positive integer"));
            }
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
    }
}

/// Renders a rational as `"a"` or `"a/b"`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Binomial coefficient with the convention `C(a, b) = 0` whenever `a < 0`,
/// `b < 0` or `a < b`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Dense polynomial over ℚ, coefficient `i` multiplies `t^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^degree`
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `(1 - t)^k`, expanded with binomial coefficients.
    pub fn one_minus_t_pow(k: usize) -> Self {
        let k = k as i64;
        Self::new(
            (0..=k)
                .map(|j| {
                    let c = Rational::from_integer(binomial(k, j));
                    if j % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`; zero past the end.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Keeps the terms of degree `< k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().take(k).cloned().collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat(x))
    }

    /// Polynomial long division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &QPolynomial) -> (QPolynomial, QPolynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// `p(1 - t)`, expanded.
    pub fn substitute_one_minus_t(&self) -> Self {
        let base = Self::from_ints(&[1, -1]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &base) + &Self::constant(c.clone());
        }
        acc
    }

    /// Pretty form in ascending degree with explicit signs, using `var` as
    /// the variable name (e.g. `-2 + 6t - 3t^2`).
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = format_rational(&abs);
            let sep = if abs.is_integer() { "" } else { " " };
            match i {
                0 => out.push_str(&mag),
                _ => {
                    if !abs.is_one() {
                        out.push_str(&mag);
                        out.push_str(sep);
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(format_rational))
    }
}

impl Add<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QPolynomial> for QPolynomial {
            type Output = QPolynomial;
            fn $m(self, rhs: QPolynomial) -> QPolynomial { (&self).$m(&rhs) }
        }
        impl $tr<&QPolynomial> for QPolynomial {
            type Output = QPolynomial;
            fn $m(self, rhs: &QPolynomial) -> QPolynomial { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -&self
    }
}

/// Remainder of `p` modulo `(1 - t)^k`: the unique `r` with `deg r < k` and
/// `p ≡ r`.
pub fn poly_mod_one_minus_t_pow(p: &QPolynomial, k: usize) -> QPolynomial {
    if k == 0 {
        return QPolynomial::zero();
    }
    p.div_rem(&QPolynomial::one_minus_t_pow(k)).1
}

/// Inverse of `t` modulo `(1 - t)^k`, i.e. `∑_{j<k} (1 - t)^j`.
pub fn inverse_of_t_mod(k: usize) -> Result<QPolynomial> {
    if k == 0 {
        return Err(Error::NoUnitModulus);
    }
    // 1 - (1-t)^k = t · ∑_{j<k} (1-t)^j
    let numer = &QPolynomial::one() - &QPolynomial::one_minus_t_pow(k);
    let (q, r) = numer.div_rem(&QPolynomial::t());
    debug_assert!(r.is_zero());
    Ok(q)
}

/// Power series truncated after `t^order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Pads with zeros or drops terms so exactly `order + 1` coefficients remain.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn from_poly(p: &QPolynomial, order: usize) -> Self {
        Self::new(p.coeffs().to_vec(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::from_poly(&QPolynomial::one(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn to_poly(&self) -> QPolynomial {
        QPolynomial::new(self.coeffs.clone())
    }

    pub fn mul(&self, rhs: &QSeries) -> Result<QSeries> {
        if self.order() != rhs.order() {
            return Err(Error::OrderMismatch(self.order(), rhs.order()));
        }
        let d = self.order();
        let mut out = vec![Rational::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=d - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(QSeries { coeffs: out })
    }

    /// Truncated quotient `q` with `q · divisor ≡ self` through the common order.
    pub fn divide(&self, divisor: &QSeries) -> Result<QSeries> {
        if self.order() != divisor.order() {
            return Err(Error::OrderMismatch(self.order(), divisor.order()));
        }
        let b0 = &divisor.coeffs[0];
        if b0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = b0.recip();
        let mut q: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        for k in 0..self.coeffs.len() {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &divisor.coeffs[j] * &q[k - j];
            }
            q.push(acc * &inv);
        }
        Ok(QSeries { coeffs: q })
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({} + O(t^{}))", self.to_poly(), self.order() + 1)
    }
}

/// Coefficients of `numerator / (1 - t)^n` through `t^order`.
pub fn expand_rational(numerator: &QPolynomial, denom_power: usize, order: usize) -> QSeries {
    if denom_power == 0 {
        return QSeries::from_poly(numerator, order);
    }
    let n = denom_power as i64;
    let coeffs = (0..=order as i64)
        .map(|d| {
            numerator
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| c * Rational::from_integer(binomial(d - j as i64 + n - 1, n - 1)))
                .sum()
        })
        .collect();
    QSeries::new(coeffs, order)
}

/// The integer-valued polynomial `x ↦ (x+n-1)(x+n-2)⋯(x+1)/(n-1)!`, which
/// agrees with `C(x+n-1, n-1)` for all `x ≥ 1-n`.
pub fn binomial_polynomial(n: usize) -> QPolynomial {
    assert!(n >= 1, "binomial_polynomial needs n >= 1");
    let mut acc = QPolynomial::one();
    let mut fact = BigInt::one();
    for i in 1..n {
        acc = &acc * &QPolynomial::from_ints(&[i as i64, 1]);
        fact *= i;
    }
    acc.scale(&Rational::new(BigInt::one(), fact))
}

/// `p(x - shift)`
pub fn translate(p: &QPolynomial, shift: i64) -> QPolynomial {
    let base = QPolynomial::from_ints(&[-shift, 1]);
    let mut acc = QPolynomial::zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &base) + &QPolynomial::constant(c.clone());
    }
    acc
}

/// Greatest common divisor of the numerators of an integer vector, used to
/// make rows primitive.
pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Scales a rational vector by a positive factor so all entries become
/// coprime integers. The zero vector maps to zeros.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = content(&ints);
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}
