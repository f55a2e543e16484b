//! Exact Hilbert series, Hilbert polynomials and graded Betti numbers for
//! the ideals of subspace arrangements, a brute-force linear-algebra oracle
//! for checking them, and codimension recovery from Hilbert-function data.

pub mod arrangement;
pub mod error;
pub mod formats;
pub mod gpca;
pub mod hilbert;
pub mod linalg;
pub mod oracle;
pub mod ratpoly;
pub mod report;

pub use arrangement::{
    dimension_function, random_arrangement, Arrangement, DimensionFunction, Limits, Subset,
};
pub use error::{Error, Result};
pub use num_bigint;
pub use gpca::{
    end_to_end_recover, estimate_hilbert_value, recover_codimensions, PointCloud, RankMode,
    RecoveryResult,
};
pub use hilbert::{
    betti_numbers, compute_ps_family, hilbert_polynomial_from_numerator, hilbert_report,
    hilbert_series_j, is_series_difference_polynomial, transversal_hilbert_function,
    transversal_series, BettiTable, HilbertPolynomial, HilbertReport, HilbertSeriesJ, PsFamily,
    RationalFunction,
};
pub use linalg::{QMatrix, SubspaceBasis};
pub use ratpoly::{QPolynomial, QSeries, Rational};
