//! Per-dataset summary rows (IEC scores and 1NN error rates) used to
//! regress the error ratio on the SAX IEC.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::regression::{quad_regression_origin, RegressionFit};
use crate::error::{Error, Result};

/// One row of `dataset,sax_iec,paa_iec,err_sax,err_raw[,benchmark]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub dataset: String,
    pub sax_iec: f64,
    pub paa_iec: f64,
    pub err_sax: f64,
    pub err_raw: f64,
    /// Rows marked `false` are left out unless explicitly requested.
    #[serde(default = "default_benchmark")]
    pub benchmark: bool,
}

fn default_benchmark() -> bool {
    true
}

impl SummaryRow {
    /// `err_sax / err_raw`, or `None` when the raw error is zero.
    pub fn error_ratio(&self) -> Option<f64> {
        (self.err_raw > 0.0).then(|| self.err_sax / self.err_raw)
    }
}

/// Lines starting with `#` are ignored.
pub fn parse_summary_rows(text: &str, origin: &str) -> Result<Vec<SummaryRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    reader
        .deserialize()
        .enumerate()
        .map(|(i, row)| {
            row.map_err(|e| Error::Parse {
                path: origin.to_string(),
                row: e.position().map_or(i + 2, |p| p.line() as usize),
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn load_summary_rows(path: impl AsRef<Path>) -> Result<Vec<SummaryRow>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_summary_rows(&text, &path.display().to_string())
}

/// `(sax_iec, err_sax / err_raw)` for the selected rows; rows with a zero
/// raw error are skipped.
pub fn ratio_points(rows: &[SummaryRow], include_all: bool) -> (Vec<f64>, Vec<f64>) {
    rows.iter()
        .filter(|r| include_all || r.benchmark)
        .filter_map(|r| r.error_ratio().map(|y| (r.sax_iec, y)))
        .unzip()
}

pub fn fit_error_ratio(rows: &[SummaryRow], include_all: bool) -> Result<RegressionFit> {
    let (xs, ys) = ratio_points(rows, include_all);
    quad_regression_origin(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "dataset,sax_iec,paa_iec,err_sax,err_raw,benchmark\n\
        a,0.1,0.2,0.2,0.4,true\n\
        b, 0.3 ,0.2,0.3,0.0,true\n\
        c,0.5,0.1,0.5,0.25,false\n";

    #[test]
    fn parses_and_filters() {
        let rows = parse_summary_rows(TEXT, "mem").unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1].error_ratio(), None);
        assert_eq!(ratio_points(&rows, false), (vec![0.1], vec![0.5]));
        assert_eq!(ratio_points(&rows, true), (vec![0.1, 0.5], vec![0.5, 2.0]));
    }

    #[test]
    fn benchmark_column_is_optional() {
        let rows = parse_summary_rows("dataset,sax_iec,paa_iec,err_sax,err_raw\nx,1,1,1,1\n", "m").unwrap();
        assert!(rows[0].benchmark);
    }

    #[test]
    fn skips_comment_lines() {
        let rows = parse_summary_rows(&format!("# config\n{TEXT}"), "m").unwrap();
        assert_eq!(rows.len(), 3);
        let err = parse_summary_rows("# c\ndataset,sax_iec,paa_iec,err_sax,err_raw\nx,1,?,1,1\n", "m")
            .unwrap_err();
        assert!(matches!(err, Error::Parse { row: 3, .. }));
    }

    #[test]
    fn bad_row_reports_line() {
        let err = parse_summary_rows("dataset,sax_iec,paa_iec,err_sax,err_raw\nx,1,oops,1,1\n", "m")
            .unwrap_err();
        assert!(matches!(err, Error::Parse { row: 2, .. }));
    }
}
