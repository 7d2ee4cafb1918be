//! Computable bounds for the harmonic-mapping class `P⁰_H(α, M)`: normalized
//! harmonic maps `f = h + conj(g)` on the unit disk with
//! `Re((1 − α)h′ + αz h″) > −M + |(1 − α)g′ + αz g″|`.
//!
//! - [`specfun`]: the restricted hypergeometric function `2F1(1, 1/α; 1 + 1/α; r)`.
//! - [`harmonic`]: truncated series, the operator `L_α`, slices and convolutions.
//! - [`bounds`]: coefficient and growth bounds, membership oracles, convex-null checks.
//! - [`radii`]: radii of starlikeness and convexity.
//! - [`coeff_csv`]: the coefficient file format.

pub mod bounds;
pub mod coeff_csv;
pub mod error;
pub mod harmonic;
pub mod numfmt;
pub mod radii;
pub mod specfun;

pub use error::{Error, Result};
pub use harmonic::{AnalyticSeries, HarmonicSeries};
pub use num_complex::Complex64;
pub use specfun::{ClassParams, SeriesEvalConfig};
