//! Subspace arrangements and their dimension functions.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, QVector, SubspaceBasis};
use crate::ratpoly::rat;

/// A subset of `{0, …, m-1}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(m: usize) -> Self {
        assert!(m <= 31, "subset masks hold at most 31 elements");
        Subset((1u32 << m) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Subset(indices.iter().fold(0, |acc, &i| acc | (1 << i)))
    }

    pub fn mask(self) -> usize {
        self.0 as usize
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// Every subset of `{0..m-1}` in increasing mask order; subsets come
    /// before their supersets.
    pub fn all(m: usize) -> impl Iterator<Item = Subset> {
        (0..1u32 << m).map(Subset)
    }

    /// Every subset of `self` (including `self` and ∅), in decreasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = (cur != 0).then(|| (cur - 1) & full);
            Some(Subset(cur))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.members().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Resource caps for the exponential and combinatorial parts of the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest accepted number of subspaces `m` (work grows like `2^m` or `3^m`).
    pub max_subspaces: usize,
    /// Largest accepted dimension `C(d+n-1, n-1)` of a graded piece.
    pub max_monomials: usize,
}

pub const SUBSPACE_CAP_ENV: &str = "SUBSPACE_HILBERT_MAX_SUBSPACES";
pub const MONOMIAL_CAP_ENV: &str = "SUBSPACE_HILBERT_MAX_MONOMIALS";

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_subspaces: 16,
            max_monomials: 3000,
        }
    }
}

impl Limits {
    /// Defaults overridden by `SUBSPACE_HILBERT_MAX_SUBSPACES` and
    /// `SUBSPACE_HILBERT_MAX_MONOMIALS` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Self::default();
        let read = |key: &str| -> Result<Option<usize>> {
            match std::env::var(key) {
                Ok(v) => v.trim().parse().map(Some).map_err(|_| {
                    Error::InvalidInput(format!("{key} must be a natural number, got {v:?}"))
                }),
                Err(_) => Ok(None),
            }
        };
        if let Some(v) = read(SUBSPACE_CAP_ENV)? {
            limits.max_subspaces = v.min(31);
        }
        if let Some(v) = read(MONOMIAL_CAP_ENV)? {
            limits.max_monomials = v;
        }
        Ok(limits)
    }
}

/// `m ≥ 1` proper subspaces of `ℚⁿ`.
#[derive(Clone, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    subspaces: Vec<SubspaceBasis>,
    name: Option<String>,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, subspaces: Vec<SubspaceBasis>) -> Result<Self> {
        Self::with_limits(ambient_dim, subspaces, &Limits::default())
    }

    pub fn with_limits(
        ambient_dim: usize,
        subspaces: Vec<SubspaceBasis>,
        limits: &Limits,
    ) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidArrangement(
                "ambient dimension must be at least 1".into(),
            ));
        }
        if subspaces.is_empty() {
            return Err(Error::InvalidArrangement(
                "an arrangement needs at least one subspace".into(),
            ));
        }
        if subspaces.len() > limits.max_subspaces {
            return Err(Error::TooManySubspaces {
                m: subspaces.len(),
                cap: limits.max_subspaces,
            });
        }
        for (index, s) in subspaces.iter().enumerate() {
            if s.ambient_dim() != ambient_dim {
                return Err(Error::InvalidArrangement(format!(
                    "subspace {} lives in dimension {}, expected {ambient_dim}",
                    index + 1,
                    s.ambient_dim()
                )));
            }
            if s.dim() == ambient_dim {
                return Err(Error::FullSubspace { index: index + 1 });
            }
        }
        Ok(Self {
            ambient_dim,
            subspaces,
            name: None,
        })
    }

    /// Convenience constructor from integer spanning vectors.
    pub fn from_int_vectors(ambient_dim: usize, subspaces: &[Vec<Vec<i64>>]) -> Result<Self> {
        let bases = subspaces
            .iter()
            .map(|vs| {
                let vs: Vec<QVector> = vs.iter().map(|v| v.iter().map(|&x| rat(x)).collect()).collect();
                SubspaceBasis::new(ambient_dim, vs)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_dim, bases)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[SubspaceBasis] {
        &self.subspaces
    }

    pub fn subspace(&self, i: usize) -> &SubspaceBasis {
        &self.subspaces[i]
    }

    /// Applies one invertible change of coordinates to every subspace.
    pub fn transform(&self, a: &QMatrix) -> Result<Self> {
        let subspaces = self
            .subspaces
            .iter()
            .map(|s| s.transform(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            subspaces,
            ..self.clone()
        })
    }

    /// Reorders the subspaces: new position `k` holds old subspace `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.len(), "permutation length mismatch");
        Self {
            subspaces: perm.iter().map(|&i| self.subspaces[i].clone()).collect(),
            ..self.clone()
        }
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arrangement")
            .field("n", &self.ambient_dim)
            .field("subspaces", &self.subspaces)
            .finish()
    }
}

/// `S ↦ n_S = dim ⋂_{i∈S} V_i` for every subset of the arrangement.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimensionFunction {
    n: usize,
    m: usize,
    dims: Vec<usize>,
}

impl DimensionFunction {
    /// `dims` is indexed by subset mask and must have length `2^m`.
    pub fn new(n: usize, m: usize, dims: Vec<usize>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if m == 0 || m > 31 {
            return bad(format!("m = {m} out of range"));
        }
        if dims.len() != 1 << m {
            return bad(format!("expected {} dimensions, got {}", 1usize << m, dims.len()));
        }
        if dims[0] != n {
            return bad(format!("n_∅ = {} but n = {n}", dims[0]));
        }
        for s in Subset::all(m) {
            for i in s.members() {
                if dims[s.mask()] > dims[s.without(i).mask()] {
                    return bad(format!("dimension function not monotone at {s:?}"));
                }
            }
            if !s.is_empty() && dims[s.mask()] >= n {
                return bad(format!("n_{s:?} = {} is not a proper subspace", dims[s.mask()]));
            }
        }
        Ok(Self { n, m, dims })
    }

    /// Dimension function of a transversal arrangement with the given
    /// codimensions: `c_S = min(n, ∑_{i∈S} c_i)`.
    pub fn transversal(n: usize, codims: &[usize]) -> Result<Self> {
        if codims.iter().any(|&c| c == 0 || c > n) {
            return Err(Error::InvalidInput(format!(
                "codimensions must lie in 1..={n}, got {codims:?}"
            )));
        }
        let m = codims.len();
        let dims = Subset::all(m)
            .map(|s| n - n.min(s.members().map(|i| codims[i]).sum()))
            .collect();
        Self::new(n, m, dims)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self, s: Subset) -> usize {
        self.dims[s.mask()]
    }

    pub fn codim(&self, s: Subset) -> usize {
        self.n - self.dims[s.mask()]
    }

    /// Singleton codimensions `c_1, …, c_m`.
    pub fn codims(&self) -> Vec<usize> {
        (0..self.m).map(|i| self.codim(Subset::singleton(i))).collect()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Whether `c_S = min(n, ∑_{i∈S} c_i)` for every `S`.
    pub fn is_transversal(&self) -> bool {
        let codims = self.codims();
        Subset::all(self.m).all(|s| {
            let bound = self.n.min(s.members().map(|i| codims[i]).sum());
            self.codim(s) == bound
        })
    }
}

/// Computes `n_S` for all `2^m` subsets by incremental intersection.
pub fn dimension_function(a: &Arrangement) -> Result<DimensionFunction> {
    dimension_function_with_limits(a, &Limits::default())
}

pub fn dimension_function_with_limits(
    a: &Arrangement,
    limits: &Limits,
) -> Result<DimensionFunction> {
    let m = a.len();
    if m > limits.max_subspaces {
        return Err(Error::TooManySubspaces {
            m,
            cap: limits.max_subspaces,
        });
    }
    let n = a.ambient_dim();
    let mut spaces: Vec<SubspaceBasis> = Vec::with_capacity(1 << m);
    let mut dims = Vec::with_capacity(1 << m);
    spaces.push(SubspaceBasis::full(n));
    dims.push(n);
    for s in Subset::all(m).skip(1) {
        let top = s.max_element().expect("nonempty");
        let rest = &spaces[s.without(top).mask()];
        let v = if rest.dim() == 0 {
            SubspaceBasis::zero(n)
        } else {
            rest.intersect(a.subspace(top))?
        };
        dims.push(v.dim());
        spaces.push(v);
    }
    DimensionFunction::new(n, m, dims)
}

const RANDOM_ATTEMPTS: usize = 64;

/// Reproducible random arrangement: subspace `i` is spanned by `dims[i]`
/// vectors with integer entries in `-3..=3`, redrawn until independent.
pub fn random_arrangement(n: usize, dims: &[usize], seed: u64) -> Result<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut subspaces = Vec::with_capacity(dims.len());
    for &k in dims {
        if k == 0 || k >= n {
            return Err(Error::InvalidInput(format!(
                "random subspace dimensions must lie in 1..{n}, got {k}"
            )));
        }
        let basis = (0..RANDOM_ATTEMPTS)
            .find_map(|_| {
                let vs: Vec<QVector> = (0..k)
                    .map(|_| (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect())
                    .collect();
                SubspaceBasis::new(n, vs).ok()
            })
            .ok_or(Error::RankNotAchieved {
                dim: k,
                ambient: n,
                attempts: RANDOM_ATTEMPTS,
            })?;
        subspaces.push(basis);
    }
    Arrangement::new(n, subspaces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axes3() -> Arrangement {
        Arrangement::from_int_vectors(
            3,
            &[vec![vec![1, 0, 0]], vec![vec![0, 1, 0]], vec![vec![0, 0, 1]]],
        )
        .unwrap()
    }

    fn planes_through_line() -> Arrangement {
        Arrangement::from_int_vectors(
            4,
            &[
                vec![vec![0, 1, 0, 0], vec![0, 0, 0, 1]],
                vec![vec![1, 0, 0, 0], vec![0, 0, 0, 1]],
                vec![vec![1, 1, 0, 0], vec![0, 0, 0, 1]],
            ],
        )
        .unwrap()
    }

    #[test]
    fn subset_enumeration() {
        let s = Subset::from_indices(&[0, 2]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs, vec![Subset(5), Subset(4), Subset(1), Subset(0)]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.max_element(), Some(2));
        assert_eq!(Subset::EMPTY.max_element(), None);
        assert_eq!(format!("{s:?}"), "{1,3}");
        assert_eq!(Subset::all(2).count(), 4);
    }

    #[test]
    fn coordinate_axes_dimensions() {
        let d = dimension_function(&axes3()).unwrap();
        assert_eq!(d.dim(Subset::EMPTY), 3);
        for i in 0..3 {
            assert_eq!(d.dim(Subset::singleton(i)), 1);
        }
        for pair in [[0, 1], [0, 2], [1, 2]] {
            assert_eq!(d.dim(Subset::from_indices(&pair)), 0);
        }
        assert_eq!(d.dim(Subset::full(3)), 0);
        assert!(d.is_transversal());
    }

    #[test]
    fn planes_through_a_line_dimensions() {
        let d = dimension_function(&planes_through_line()).unwrap();
        for i in 0..3 {
            assert_eq!(d.dim(Subset::singleton(i)), 2);
        }
        for pair in [[0, 1], [0, 2], [1, 2]] {
            assert_eq!(d.dim(Subset::from_indices(&pair)), 1);
        }
        assert_eq!(d.dim(Subset::full(3)), 1);
        // c_12 = 3 but min(4, 2 + 2) = 4
        assert_eq!(d.codim(Subset::from_indices(&[0, 1])), 3);
        assert!(!d.is_transversal());
    }

    #[test]
    fn single_subspace() {
        let a = Arrangement::from_int_vectors(4, &[vec![vec![1, 2, 0, 0], vec![0, 0, 1, 1]]])
            .unwrap();
        let d = dimension_function(&a).unwrap();
        assert_eq!(d.dims(), &[4, 2]);
        assert!(d.is_transversal());
    }

    #[test]
    fn rejects_full_subspace_and_empty_list() {
        let err = Arrangement::from_int_vectors(
            2,
            &[vec![vec![1, 0]], vec![vec![1, 0], vec![0, 1]]],
        )
        .unwrap_err();
        assert_eq!(err, Error::FullSubspace { index: 2 });
        assert!(Arrangement::new(3, vec![]).is_err());
    }

    #[test]
    fn zero_subspace_allowed() {
        let a = Arrangement::new(2, vec![SubspaceBasis::zero(2)]).unwrap();
        let d = dimension_function(&a).unwrap();
        assert_eq!(d.codims(), vec![2]);
    }

    #[test]
    fn subspace_cap() {
        let subspaces = vec![SubspaceBasis::zero(2); 3];
        let limits = Limits {
            max_subspaces: 2,
            ..Limits::default()
        };
        assert_eq!(
            Arrangement::with_limits(2, subspaces, &limits),
            Err(Error::TooManySubspaces { m: 3, cap: 2 })
        );
    }

    #[test]
    fn random_arrangement_is_reproducible() {
        let a = random_arrangement(3, &[1, 1, 1], 7).unwrap();
        let b = random_arrangement(3, &[1, 1, 1], 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn random_planes_in_four_space_are_generic() {
        let a = random_arrangement(4, &[2, 2], 11).unwrap();
        let d = dimension_function(&a).unwrap();
        assert_eq!(d.dim(Subset::full(2)), 0);
        assert!(d.is_transversal());
    }

    #[test]
    fn random_arrangement_rejects_bad_dims() {
        assert!(random_arrangement(3, &[0, 1], 1).is_err());
        assert!(random_arrangement(3, &[3], 1).is_err());
    }

    #[test]
    fn transversal_constructor() {
        let d = DimensionFunction::transversal(3, &[2, 2, 2]).unwrap();
        assert_eq!(d, dimension_function(&axes3()).unwrap());
        assert!(DimensionFunction::transversal(3, &[0]).is_err());
    }

    #[test]
    fn dimension_function_validation() {
        assert!(DimensionFunction::new(3, 1, vec![3, 3]).is_err());
        assert!(DimensionFunction::new(3, 1, vec![2, 1]).is_err());
        assert!(DimensionFunction::new(3, 2, vec![3, 1, 2, 2]).is_err());
        assert!(DimensionFunction::new(3, 2, vec![3, 1, 2, 0]).is_ok());
    }
}
