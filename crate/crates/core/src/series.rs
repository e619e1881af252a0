//! The basic sequence type plus normalization, unit scaling and
//! right-closed histogramming over empirical cut points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Standard deviations at or below this (relative to the magnitude of the
/// mean) are treated as a constant series.
const CONSTANT_TOL: f64 = 1e-12;

/// A finite, non-empty, ordered sequence of real values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Series(Vec<f64>);

impl Series {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Series(values))
    }

    /// Used for outputs of operations that cannot produce empty or
    /// non-finite sequences from valid inputs.
    pub(crate) fn from_trusted(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Series(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mean(&self) -> f64 {
        mean(&self.0)
    }

    /// Population standard deviation (divisor = length).
    pub fn std(&self) -> f64 {
        let m = self.mean();
        let var = self.0.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / self.len() as f64;
        var.sqrt()
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_constant(&self) -> bool {
        let first = self.0[0];
        self.0.iter().all(|&v| v == first)
    }
}

impl TryFrom<Vec<f64>> for Series {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Series::new(values)
    }
}

impl From<Series> for Vec<f64> {
    fn from(s: Series) -> Self {
        s.0
    }
}

impl AsRef<[f64]> for Series {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Zero mean, unit population standard deviation. A constant series maps
/// to all zeros.
pub fn znormalize(s: &Series) -> Series {
    let m = s.mean();
    let sd = s.std();
    if sd <= CONSTANT_TOL * m.abs().max(1.0) {
        return Series::from_trusted(vec![0.0; s.len()]);
    }
    Series::from_trusted(s.values().iter().map(|v| (v - m) / sd).collect())
}

/// Affine map onto `[0, 1]`, min to 0 and max to 1. A constant series maps
/// to all 0.5.
pub fn scale_unit(s: &Series) -> Series {
    let lo = s.min();
    let hi = s.max();
    let range = hi - lo;
    if range <= 0.0 {
        return Series::from_trusted(vec![0.5; s.len()]);
    }
    Series::from_trusted(
        s.values()
            .iter()
            .map(|v| ((v - lo) / range).clamp(0.0, 1.0))
            .collect(),
    )
}

/// Cut points splitting the real line into `edges.len() + 1` bins.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinEdges {
    edges: Vec<f64>,
}

impl BinEdges {
    pub fn new(edges: Vec<f64>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::param("at least one bin edge is required"));
        }
        if edges.iter().any(|e| !e.is_finite()) {
            return Err(Error::param("bin edges must be finite"));
        }
        if edges.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::param("bin edges must be non-decreasing"));
        }
        Ok(BinEdges { edges })
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn bin_count(&self) -> usize {
        self.edges.len() + 1
    }

    /// Bin `i` spans `(edges[i-1], edges[i]]`; a value on an edge goes to
    /// the lower bin.
    pub fn bin_of(&self, value: f64) -> usize {
        self.edges.partition_point(|&e| e < value)
    }
}

/// Empirical quantiles at `k / bins` for `k = 1..bins`, interpolating
/// linearly between order statistics.
pub fn quantile_edges(s: &Series, bins: usize) -> Result<BinEdges> {
    if bins < 2 {
        return Err(Error::param(format!("bin count must be >= 2, got {bins}")));
    }
    let mut sorted = s.values().to_vec();
    sorted.sort_by(f64::total_cmp);
    let last = (sorted.len() - 1) as f64;
    let edges = (1..bins)
        .map(|k| {
            let h = last * k as f64 / bins as f64;
            let lo = h.floor() as usize;
            let hi = h.ceil() as usize;
            sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
        })
        .collect();
    BinEdges::new(edges)
}

/// Equal-width cut points between the minimum and maximum of `s`.
pub fn uniform_edges(s: &Series, bins: usize) -> Result<BinEdges> {
    if bins < 2 {
        return Err(Error::param(format!("bin count must be >= 2, got {bins}")));
    }
    let lo = s.min();
    let width = (s.max() - lo) / bins as f64;
    BinEdges::new((1..bins).map(|k| lo + width * k as f64).collect())
}

/// How the reference bins of the original signal are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Binning {
    #[default]
    Quantile,
    Uniform,
}

impl Binning {
    pub fn edges(self, s: &Series, bins: usize) -> Result<BinEdges> {
        match self {
            Binning::Quantile => quantile_edges(s, bins),
            Binning::Uniform => uniform_edges(s, bins),
        }
    }
}

impl std::str::FromStr for Binning {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quantile" => Ok(Binning::Quantile),
            "uniform" => Ok(Binning::Uniform),
            other => Err(Error::param(format!("unknown binning mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Histogram {
    counts: Vec<u64>,
    total: u64,
}

impl Histogram {
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::param("histogram needs at least one bin"));
        }
        let total = counts.iter().sum();
        Ok(Histogram { counts, total })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn bin_count(&self) -> usize {
        self.counts.len()
    }
}

pub fn histogram(s: &Series, edges: &BinEdges) -> Histogram {
    let mut counts = vec![0u64; edges.bin_count()];
    for &v in s.values() {
        counts[edges.bin_of(v)] += 1;
    }
    Histogram {
        total: s.len() as u64,
        counts,
    }
}
