//! Dataset handling, classification harness and regression of the
//! classification error ratio against IEC.

pub mod analysis;
pub mod classify;
pub mod dataset;
pub mod pairs;
pub mod regression;

pub use analysis::{analyze_dataset, known_config, resolve_config, AnalysisOptions, Report};
pub use classify::{nn1_bop, nn1_euclidean, sax_bop, BopConfig, BopHistogram};
pub use dataset::{load_dataset, Dataset};
pub use pairs::{fit_error_ratio, load_summary_rows, SummaryRow};
pub use regression::{quad_regression_origin, RegressionFit};
