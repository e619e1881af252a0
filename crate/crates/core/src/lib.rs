//! Symbolic aggregate approximation (SAX) and piecewise aggregate
//! approximation (PAA) together with a set of statistical diagnostics for
//! judging how well a symbolic representation preserves the original signal:
//!
//! * [`entropy`]: normalized permutation entropy with tied-rank patterns.
//! * [`metrics`]: reconstruction information loss, smoothed KL divergence
//!   and the information embedding cost (IEC) score.
//! * [`correlation`]: ACF, PACF (Durbin–Levinson) and the absolute mean ACF.
//! * [`eval`]: dataset loading, 1NN classification over raw series and
//!   SAX bag-of-patterns, through-origin quadratic regression and the
//!   per-dataset analysis report.

pub mod correlation;
pub mod entropy;
pub mod error;
pub mod eval;
pub mod metrics;
pub mod series;
pub mod symbolic;

pub use error::{Error, Result};
pub use series::Series;
