//! Exact linear algebra over ℚ: reduced row echelon form, rank, kernels, and
//! operations on subspaces given by spanning vectors.
//!
//! Two elimination engines live here. [`QMatrix::rref`] is the canonical
//! Gauss-Jordan form over rationals and is used wherever a deterministic basis
//! is needed. [`IntEchelon`] is an incremental fraction-free echelon over the
//! integers and is what the rank-heavy callers (oracle, point clouds) use.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{content, primitive_integer_vector, Rational};

pub type QVector = Vec<Rational>;

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::VectorLength {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors, each of length `cols`.
    pub fn from_rows(cols: usize, rows: &[QVector]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::VectorLength {
                    expected: cols,
                    got: r.len(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<QVector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(cols, &rows).expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<QVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> QVector {
        assert_eq!(v.len(), self.cols, "matrix/vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// Pivots are chosen leftmost-column first, taking the first row at or
    /// below the current one with a nonzero entry.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.entries.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..cols {
                let x = &m.entries[r * cols + j] * &inv;
                m.entries[r * cols + j] = x;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..cols {
                    let x = &m.entries[r * cols + j] * &f;
                    m.entries[i * cols + j] -= x;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut ech = IntEchelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert_rational(self.row(i));
        }
        ech.rank()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn kernel(&self) -> SubspaceBasis {
        let (r, pivots) = self.rref();
        let mut vectors = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..self.cols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            vectors.push(v);
        }
        SubspaceBasis {
            ambient_dim: self.cols,
            vectors,
        }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incremental row echelon form over ℤ.
///
/// Rows are kept primitive (content 1) and each stored row is zero to the
/// left of its pivot. Only the rank and the stored rows are exposed; the
/// span of the inserted vectors is the span of the stored rows.
#[derive(Clone, Debug)]
pub struct IntEchelon {
    cols: usize,
    rows: BTreeMap<usize, Vec<BigInt>>,
}

impl IntEchelon {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.rows.values()
    }

    pub fn insert_rational(&mut self, v: &[Rational]) -> bool {
        self.insert(primitive_integer_vector(v))
    }

    /// Reduces `v` against the stored rows; returns `true` if it was
    /// independent (and is now stored).
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        let mut start = 0;
        loop {
            let Some(c) = (start..self.cols).find(|&j| !v[j].is_zero()) else {
                return false;
            };
            let Some(row) = self.rows.get(&c) else {
                let g = content(&v[c..]);
                if !g.is_one() {
                    for x in &mut v[c..] {
                        *x = &*x / &g;
                    }
                }
                if v[c].is_negative() {
                    for x in &mut v[c..] {
                        *x = -&*x;
                    }
                }
                self.rows.insert(c, v);
                return true;
            };
            // v <- (lead/g)·v - (v_c/g)·row, zero at c, unchanged left of c
            let g = row[c].gcd(&v[c]);
            let a = &row[c] / &g;
            let b = &v[c] / &g;
            v[c] = BigInt::zero();
            for j in c + 1..self.cols {
                let scaled = if a.is_one() { v[j].clone() } else { &v[j] * &a };
                v[j] = if row[j].is_zero() {
                    scaled
                } else {
                    scaled - &b * &row[j]
                };
            }
            let g = content(&v[c + 1..]);
            if !g.is_zero() && !g.is_one() {
                for x in &mut v[c + 1..] {
                    *x = &*x / &g;
                }
            }
            start = c + 1;
        }
    }
}

/// A linearly independent list of vectors spanning a subspace of ℚⁿ.
#[derive(Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<QVector>,
}

impl SubspaceBasis {
    /// Validates lengths and linear independence.
    pub fn new(ambient_dim: usize, vectors: Vec<QVector>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::VectorLength {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
        }
        if QMatrix::from_rows(ambient_dim, &vectors)?.rank() != vectors.len() {
            return Err(Error::LinearlyDependent);
        }
        Ok(Self {
            ambient_dim,
            vectors,
        })
    }

    /// Canonical basis (nonzero rows of the RREF) of the span of arbitrary vectors.
    pub fn span(ambient_dim: usize, vectors: &[QVector]) -> Result<Self> {
        let (r, pivots) = QMatrix::from_rows(ambient_dim, vectors)?.rref();
        Ok(Self {
            ambient_dim,
            vectors: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: QMatrix::identity(ambient_dim).row_vectors(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    /// Basis vectors as rows.
    pub fn to_matrix(&self) -> QMatrix {
        QMatrix::from_rows(self.ambient_dim, &self.vectors).expect("validated lengths")
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut ech = IntEchelon::new(self.ambient_dim);
        for b in &self.vectors {
            ech.insert_rational(b);
        }
        !ech.insert_rational(v)
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.ambient_dim == other.ambient_dim && self.vectors.iter().all(|v| other.contains(v))
    }

    /// Equality of spans, independent of the chosen bases.
    pub fn span_eq(&self, other: &SubspaceBasis) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    fn check_ambient(&self, other: &SubspaceBasis) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        let all: Vec<QVector> = self.vectors.iter().chain(&other.vectors).cloned().collect();
        Self::span(self.ambient_dim, &all)
    }

    /// `self ∩ other`, computed as the common zero set of both annihilators.
    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        let mut forms = self.annihilator();
        forms.extend(other.annihilator());
        Ok(QMatrix::from_rows(self.ambient_dim, &forms)?.kernel())
    }

    /// Basis of the linear forms vanishing on this subspace, as coefficient
    /// vectors in the dual coordinates.
    pub fn annihilator(&self) -> Vec<QVector> {
        self.to_matrix().kernel().vectors
    }

    /// Image under `x ↦ A·x` for a square matrix `A` (assumed invertible).
    pub fn transform(&self, a: &QMatrix) -> Result<SubspaceBasis> {
        if a.cols() != self.ambient_dim || a.rows() != self.ambient_dim {
            return Err(Error::DimensionMismatch(a.cols(), self.ambient_dim));
        }
        let image: Vec<QVector> = self.vectors.iter().map(|v| a.mul_vec(v)).collect();
        SubspaceBasis::new(self.ambient_dim, image)
    }
}

impl fmt::Debug for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .vectors
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(", "))
            })
            .collect();
        write!(f, "span{{{}}} ⊆ Q^{}", vs.join(", "), self.ambient_dim)
    }
}

/// Rank of an integer matrix, with a maximal set of independent rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerRank {
    pub rank: usize,
    /// Indices of `rank` rows independent over ℚ, in increasing order.
    pub independent_rows: Vec<usize>,
}

/// Exact rank of an integer matrix by elimination modulo 28-bit primes.
///
/// The rank mod `p` never exceeds the rank over ℚ, and rows independent mod
/// `p` are independent over ℚ. Once the product of the primes used exceeds
/// the Hadamard bound for `(r+1)`-minors, every such minor, being divisible
/// by all of them, is zero, so the largest modular rank `r` is exact.
pub fn integer_rank(rows: &[Vec<BigInt>], cols: usize) -> IntegerRank {
    integer_rank_bounded(rows, cols, None)
}

/// Rank modulo one prime: a lower bound on the rank over ℚ, with rows that
/// are independent over ℚ.
pub fn modular_rank(rows: &[Vec<BigInt>], cols: usize) -> IntegerRank {
    let p = modular::primes().next().expect("a prime");
    let (rank, independent_rows) = modular::rank_mod(&modular::Matrix::new(rows), cols, p);
    IntegerRank {
        rank,
        independent_rows,
    }
}

/// [`integer_rank`] given a proven upper bound on the rank, which ends the
/// search as soon as a modular rank reaches it.
pub fn integer_rank_bounded(rows: &[Vec<BigInt>], cols: usize, upper: Option<usize>) -> IntegerRank {
    let mut best = IntegerRank {
        rank: 0,
        independent_rows: Vec::new(),
    };
    if rows.is_empty() || cols == 0 {
        return best;
    }
    let ceiling = upper.unwrap_or(usize::MAX).min(rows.len()).min(cols);
    // log2 of row norms, largest first
    let mut norm_bits: Vec<f64> = rows
        .iter()
        .map(|r| {
            let sq: BigInt = r.iter().map(|x| x * x).sum();
            if sq.is_zero() {
                f64::NEG_INFINITY
            } else {
                (sq.bits() as f64) / 2.0
            }
        })
        .collect();
    norm_bits.sort_by(|a, b| b.total_cmp(a));
    let hadamard_bits = |r: usize| -> f64 {
        norm_bits
            .iter()
            .take(r + 1)
            .map(|&b| b.max(0.0))
            .sum::<f64>()
    };
    let matrix = modular::Matrix::new(rows);
    let mut certified_bits = 0.0;
    for p in modular::primes() {
        let (rank, independent_rows) = modular::rank_mod(&matrix, cols, p);
        if rank > best.rank {
            best = IntegerRank {
                rank,
                independent_rows,
            };
        }
        certified_bits += (p as f64).log2().floor();
        if best.rank == ceiling || certified_bits > hadamard_bits(best.rank) + 1.0 {
            return best;
        }
    }
    unreachable!("prime supply is unbounded")
}

mod modular {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    const BITS: u32 = 28;
    /// Products of residues are below 2^56, so this many fit in a `u64`.
    const LAZY_STEPS: usize = 255;

    fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a, p);
            }
            a = mul(a, a, p);
            e >>= 1;
        }
        acc
    }

    /// Deterministic Miller-Rabin for 64-bit inputs.
    fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        for b in BASES {
            if n.is_multiple_of(b) {
                return n == b;
            }
        }
        let s = (n - 1).trailing_zeros();
        let d = (n - 1) >> s;
        'witness: for b in BASES {
            let mut x = pow(b, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = mul(x, x, n);
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }

    /// Primes below 2^28 in decreasing order.
    pub(super) fn primes() -> impl Iterator<Item = u64> {
        (0..(1u64 << (BITS - 1))).map(|k| (1u64 << BITS) - 1 - 2 * k).filter(|&q| is_prime(q))
    }

    /// The input, as machine integers when every entry fits.
    pub(super) enum Matrix<'a> {
        Small(Vec<Vec<i64>>),
        Big(&'a [Vec<BigInt>]),
    }

    impl<'a> Matrix<'a> {
        pub(super) fn new(rows: &'a [Vec<BigInt>]) -> Self {
            rows.iter()
                .map(|r| r.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()
                .map_or(Matrix::Big(rows), Matrix::Small)
        }

        fn len(&self) -> usize {
            match self {
                Matrix::Small(r) => r.len(),
                Matrix::Big(r) => r.len(),
            }
        }

        fn load(&self, i: usize, p: u64, out: &mut [u64]) {
            match self {
                Matrix::Small(rows) => {
                    for (o, x) in out.iter_mut().zip(&rows[i]) {
                        *o = x.rem_euclid(p as i64) as u64;
                    }
                }
                Matrix::Big(rows) => {
                    let big_p = BigInt::from(p);
                    for (o, x) in out.iter_mut().zip(&rows[i]) {
                        *o = match x.to_i64() {
                            Some(v) => v.rem_euclid(p as i64) as u64,
                            None => x.mod_floor(&big_p).to_u64().expect("residue fits"),
                        };
                    }
                }
            }
        }
    }

    /// Rank mod `p` and the rows that were independent when inserted in order.
    pub(super) fn rank_mod(rows: &Matrix, cols: usize, p: u64) -> (usize, Vec<usize>) {
        let full = rows.len().min(cols);
        // pivot column and normalized row (leading entry 1, entries < p)
        let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut chosen = Vec::new();
        let mut v = vec![0u64; cols];
        for idx in 0..rows.len() {
            rows.load(idx, p, &mut v);
            // entries of v stay below (pending + 1) * p^2 without reduction
            let mut pending = 0;
            for (c, prow) in &pivots {
                let c = *c;
                let f = v[c] % p;
                v[c] = 0;
                if f == 0 {
                    continue;
                }
                if pending == LAZY_STEPS {
                    for x in v.iter_mut() {
                        *x %= p;
                    }
                    pending = 0;
                }
                let f = p - f;
                for j in c + 1..cols {
                    v[j] += f * prow[j];
                }
                pending += 1;
            }
            for x in v.iter_mut() {
                *x %= p;
            }
            if let Some(c) = v.iter().position(|&x| x != 0) {
                let inv = pow(v[c], p - 2, p);
                let mut prow = vec![0u64; cols];
                for j in c..cols {
                    prow[j] = mul(v[j], inv, p);
                }
                pivots.push((c, prow));
                chosen.push(idx);
                if pivots.len() == full {
                    break;
                }
            }
        }
        (pivots.len(), chosen)
    }

}

/// Numerical rank of a float matrix via Gaussian elimination with partial
/// pivoting. A pivot counts when its magnitude exceeds
/// `rel_tol × max |entry|` of the input.
pub fn approx_rank(rows: &[Vec<f64>], rel_tol: f64) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    let threshold = rel_tol * scale;
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.len() {
            break;
        }
        let (p, best) = (rank..m.len())
            .map(|i| (i, m[i][c].abs()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= threshold {
            continue;
        }
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            let f = m[i][c] / m[rank][c];
            if f == 0.0 {
                continue;
            }
            for j in c..cols {
                m[i][j] -= f * m[rank][j];
            }
        }
        rank += 1;
    }
    rank
}

pub const DEFAULT_REL_TOL: f64 = 1e-8;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_rank_matches_exact_echelon() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let (r, c) = (rng.gen_range(1..9), rng.gen_range(1..9));
            let k = rng.gen_range(1..=r.min(c));
            // rank <= k by construction: (r x k) * (k x c)
            let left: Vec<Vec<i64>> = (0..r).map(|_| (0..k).map(|_| rng.gen_range(-4..=4)).collect()).collect();
            let right: Vec<Vec<i64>> = (0..k).map(|_| (0..c).map(|_| rng.gen_range(-4..=4)).collect()).collect();
            let rows: Vec<Vec<BigInt>> = left
                .iter()
                .map(|l| (0..c).map(|j| BigInt::from((0..k).map(|t| l[t] * right[t][j]).sum::<i64>())).collect())
                .collect();
            let mut ech = IntEchelon::new(c);
            for row in &rows {
                ech.insert(row.clone());
            }
            let got = integer_rank(&rows, c);
            assert_eq!(got.rank, ech.rank());
            let mut sub = IntEchelon::new(c);
            for &i in &got.independent_rows {
                assert!(sub.insert(rows[i].clone()));
            }
        }
    }

    #[test]
    fn integer_rank_survives_unlucky_prime() {
        // determinant is the product of the first two moduli, which both
        // see rank 1
        let p = BigInt::from(268435399u64) * BigInt::from(268435367u64);
        let rows = vec![vec![p.clone(), BigInt::zero()], vec![BigInt::zero(), BigInt::one()]];
        assert_eq!(integer_rank(&rows, 2).rank, 2);
        let huge: BigInt = BigInt::one() << 300u32;
        let rows = vec![vec![huge.clone(), BigInt::one()], vec![&huge * 3, BigInt::from(3)]];
        assert_eq!(integer_rank(&rows, 2).rank, 1);
    }
    use crate::ratpoly::rat;

    fn v(x: &[i64]) -> QVector {
        x.iter().map(|&c| rat(c)).collect()
    }

    fn e(n: usize, i: usize) -> QVector {
        let mut out = vec![rat(0); n];
        out[i] = rat(1);
        out
    }

    #[test]
    fn rref_identity() {
        let id = QMatrix::identity(3);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one() {
        let (r, p) = QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, QMatrix::from_int_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_scales_and_clears_above() {
        let (r, p) = QMatrix::from_int_rows(&[&[0, 2, 4], &[3, 3, 0]]).rref();
        assert_eq!(r, QMatrix::from_int_rows(&[&[1, 0, -2], &[0, 1, 2]]));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn pairwise_products_vanish_on_coordinate_points() {
        // columns x1x2, x1x3, x2x3; rows e1, e2, e3
        let pts = [e(3, 0), e(3, 1), e(3, 2)];
        let rows: Vec<QVector> = pts
            .iter()
            .map(|p| vec![&p[0] * &p[1], &p[0] * &p[2], &p[1] * &p[2]])
            .collect();
        let m = QMatrix::from_rows(3, &rows).unwrap();
        assert_eq!(m.rref().1.len(), 0);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(QMatrix::zero(2, 3).kernel().dim(), 3);
        let k = QMatrix::from_int_rows(&[&[1, 0, 0]]).kernel();
        assert!(k.span_eq(&SubspaceBasis::new(3, vec![e(3, 1), e(3, 2)]).unwrap()));
        let forms = QMatrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1]]);
        let k = forms.kernel();
        assert!(k.span_eq(&SubspaceBasis::new(3, vec![e(3, 0)]).unwrap()));
        for kv in k.vectors() {
            assert!(forms.mul_vec(kv).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kernel_of_empty_matrix_is_everything() {
        assert_eq!(QMatrix::zero(0, 4).kernel().dim(), 4);
    }

    #[test]
    fn intersect_examples() {
        let a = SubspaceBasis::new(3, vec![e(3, 0)]).unwrap();
        let b = SubspaceBasis::new(3, vec![e(3, 1)]).unwrap();
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        assert!(a.intersect(&a).unwrap().span_eq(&a));
        let a = SubspaceBasis::new(4, vec![e(4, 0), e(4, 1)]).unwrap();
        let b = SubspaceBasis::new(4, vec![e(4, 1), e(4, 2)]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert!(i.span_eq(&SubspaceBasis::new(4, vec![e(4, 1)]).unwrap()));
    }

    #[test]
    fn intersect_rejects_mismatched_ambient() {
        let a = SubspaceBasis::zero(3);
        let b = SubspaceBasis::zero(4);
        assert_eq!(a.intersect(&b), Err(Error::DimensionMismatch(3, 4)));
    }

    #[test]
    fn annihilator_examples() {
        let s = SubspaceBasis::new(3, vec![e(3, 0)]).unwrap();
        let ann = SubspaceBasis::span(3, &s.annihilator()).unwrap();
        assert!(ann.span_eq(&SubspaceBasis::new(3, vec![e(3, 1), e(3, 2)]).unwrap()));

        assert!(SubspaceBasis::full(3).annihilator().is_empty());

        let s = SubspaceBasis::new(3, vec![v(&[1, 1, 0])]).unwrap();
        let ann = s.annihilator();
        assert_eq!(ann.len(), 2);
        let expected = SubspaceBasis::new(3, vec![v(&[1, -1, 0]), v(&[0, 0, 1])]).unwrap();
        assert!(SubspaceBasis::span(3, &ann).unwrap().span_eq(&expected));
    }

    #[test]
    fn dependent_vectors_rejected() {
        assert_eq!(
            SubspaceBasis::new(2, vec![v(&[1, 2]), v(&[2, 4])]),
            Err(Error::LinearlyDependent)
        );
        assert!(matches!(
            SubspaceBasis::new(2, vec![v(&[1, 2, 3])]),
            Err(Error::VectorLength { .. })
        ));
    }

    #[test]
    fn int_echelon_detects_dependence() {
        let mut ech = IntEchelon::new(3);
        let b = |x: &[i64]| x.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert!(ech.insert(b(&[2, 4, 6])));
        assert!(!ech.insert(b(&[1, 2, 3])));
        assert!(ech.insert(b(&[0, 0, 5])));
        assert!(!ech.insert(b(&[3, 6, 1])));
        assert!(!ech.insert(b(&[0, 0, 0])));
        assert_eq!(ech.rank(), 2);
    }

    #[test]
    fn approx_rank_examples() {
        let exact = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 0.0]];
        assert_eq!(approx_rank(&exact, DEFAULT_REL_TOL), 2);
        assert_eq!(
            QMatrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]).rank(),
            2
        );
        // unperturbed [[1,2],[2,4]] has exact rank 1
        assert_eq!(QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(approx_rank(&[vec![1.0, 2.0], vec![2.0, 4.0000001]], 1e-4), 1);
        assert_eq!(approx_rank(&vec![vec![0.0; 3]; 2], DEFAULT_REL_TOL), 0);
        assert_eq!(approx_rank(&[], DEFAULT_REL_TOL), 0);
    }
}
