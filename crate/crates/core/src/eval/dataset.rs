use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::Series;

/// Labelled series of one common length.
#[derive(Debug, Clone, Serialize)]
pub struct Dataset {
    name: String,
    samples: Vec<Series>,
    labels: Vec<String>,
}

impl Dataset {
    pub fn new(name: impl Into<String>, samples: Vec<Series>, labels: Vec<String>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Dataset("dataset has no samples".into()));
        }
        if samples.len() != labels.len() {
            return Err(Error::Dataset(format!(
                "{} samples but {} labels",
                samples.len(),
                labels.len()
            )));
        }
        let n = samples[0].len();
        if let Some(i) = samples.iter().position(|s| s.len() != n) {
            return Err(Error::Dataset(format!(
                "sample {i} has length {} but sample 0 has length {n}",
                samples[i].len()
            )));
        }
        Ok(Dataset {
            name: name.into(),
            samples,
            labels,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn samples(&self) -> &[Series] {
        &self.samples
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn series_length(&self) -> usize {
        self.samples[0].len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Delimiter {
    Comma,
    Tab,
    Whitespace,
}

impl Delimiter {
    fn detect(line: &str) -> Self {
        if line.contains(',') {
            Delimiter::Comma
        } else if line.contains('\t') {
            Delimiter::Tab
        } else {
            Delimiter::Whitespace
        }
    }

    fn split(self, line: &str) -> Vec<&str> {
        match self {
            Delimiter::Comma => line.split(',').map(str::trim).collect(),
            Delimiter::Tab => line.split('\t').map(str::trim).collect(),
            Delimiter::Whitespace => line.split_whitespace().collect(),
        }
    }
}

/// Integral numeric labels are written without a fractional part so that
/// `1`, `1.0` and `1.0000000e+00` compare equal.
fn normalize_label(raw: &str) -> String {
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() && v.fract() == 0.0 && v.abs() < 1e15 => format!("{}", v as i64),
        _ => raw.to_string(),
    }
}

/// Dataset name from a file name, without extension or a `_TRAIN` /
/// `_TEST` suffix.
pub fn dataset_name(path: &Path) -> String {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("dataset");
    let upper = stem.to_ascii_uppercase();
    for suffix in ["_TRAIN", "_TEST"] {
        if upper.ends_with(suffix) {
            return stem[..stem.len() - suffix.len()].to_string();
        }
    }
    stem.to_string()
}

/// Parses label-first rows delimited by commas, tabs or runs of spaces.
/// Blank lines are skipped; row numbers in errors are 1-based file lines.
pub fn parse_dataset(name: &str, text: &str, origin: &str) -> Result<Dataset> {
    let mut delimiter = None;
    let mut samples = Vec::new();
    let mut labels = Vec::new();
    let mut width = None;

    for (idx, line) in text.lines().enumerate() {
        let row = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let delim = *delimiter.get_or_insert_with(|| Delimiter::detect(line));
        let fields = delim.split(line);
        let err = |message: String| Error::Parse {
            path: origin.to_string(),
            row,
            message,
        };
        if fields.len() < 2 {
            return Err(err("row needs a label and at least one value".into()));
        }
        let expected = *width.get_or_insert(fields.len());
        if fields.len() != expected {
            return Err(err(format!(
                "ragged row: {} values, expected {}",
                fields.len() - 1,
                expected - 1
            )));
        }
        let values = fields[1..]
            .iter()
            .enumerate()
            .map(|(col, f)| {
                f.parse::<f64>()
                    .map_err(|_| err(format!("column {}: '{f}' is not a number", col + 2)))
            })
            .collect::<Result<Vec<_>>>()?;
        let series = Series::new(values).map_err(|e| err(e.to_string()))?;
        labels.push(normalize_label(fields[0]));
        samples.push(series);
    }

    if samples.is_empty() {
        return Err(Error::Dataset(format!("{origin}: no data rows")));
    }
    Dataset::new(name, samples, labels)
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_dataset(&dataset_name(path), &text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_rows() {
        let ds = parse_dataset("t", "1,0,1\n2,1,0\n", "mem").unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.series_length(), 2);
        assert_eq!(ds.labels(), &["1", "2"]);
        assert_eq!(ds.samples()[1].values(), &[1.0, 0.0]);
    }

    #[test]
    fn tab_and_whitespace_rows() {
        let tab = parse_dataset("t", "1\t0.5\t1.5\n-1\t2\t3\n", "mem").unwrap();
        assert_eq!(tab.labels(), &["1", "-1"]);
        let ws = parse_dataset("t", "  1.0000000e+00  3.0  4.0\n\n  2.0000000e+00 5 6\n", "mem").unwrap();
        assert_eq!(ws.labels(), &["1", "2"]);
        assert_eq!(ws.samples()[0].values(), &[3.0, 4.0]);
    }

    #[test]
    fn ragged_row_is_named() {
        let err = parse_dataset("t", "1,0,1\n2,1,0\n1,3\n", "f.csv").unwrap_err();
        match err {
            Error::Parse { row, message, .. } => {
                assert_eq!(row, 3);
                assert!(message.contains("ragged"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_numeric_and_empty() {
        assert!(matches!(
            parse_dataset("t", "1,0,x\n", "f"),
            Err(Error::Parse { row: 1, .. })
        ));
        assert!(matches!(parse_dataset("t", "1,0,NaN\n", "f"), Err(Error::Parse { .. })));
        assert!(matches!(parse_dataset("t", "\n\n", "f"), Err(Error::Dataset(_))));
        assert!(matches!(parse_dataset("t", "1\n", "f"), Err(Error::Parse { .. })));
    }

    #[test]
    fn names_from_paths() {
        assert_eq!(dataset_name(Path::new("/data/ECG200/ECG200_TRAIN.tsv")), "ECG200");
        assert_eq!(dataset_name(Path::new("Coffee_TEST")), "Coffee");
        assert_eq!(dataset_name(Path::new("noise.csv")), "noise");
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            load_dataset("/definitely/not/here.tsv"),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn dataset_invariants() {
        let a = Series::new(vec![1.0, 2.0]).unwrap();
        let b = Series::new(vec![1.0]).unwrap();
        assert!(Dataset::new("x", vec![a.clone(), b], vec!["1".into(), "2".into()]).is_err());
        assert!(Dataset::new("x", vec![a], vec![]).is_err());
        assert!(Dataset::new("x", vec![], vec![]).is_err());
    }
}
