//! Per-dataset analysis: symbolize every sample, score the SAX and PAA
//! reconstructions, profile permutation entropy, build correlograms and,
//! given a test split, compare raw and bag-of-patterns 1NN error rates.

use rayon::prelude::*;
use serde::Serialize;

use super::classify::{self, BopConfig};
use super::dataset::Dataset;
use super::pairs::SummaryRow;
use crate::correlation::{self, Correlogram};
use crate::entropy::{self, PeCell};
use crate::error::{Error, Result};
use crate::metrics::{self, MetricsRecord};
use crate::series::{self, Binning, Series};
use crate::symbolic::{self, SaxConfig, SaxWord};

/// `(name, n, w, a)` for the benchmark datasets with tuned SAX parameters.
const KNOWN_BENCHMARKS: [(&str, usize, usize, usize); 7] = [
    ("ecg", 96, 12, 7),
    ("lighting2", 637, 18, 7),
    ("coffee", 286, 48, 7),
    ("adiac", 176, 25, 9),
    ("lighting7", 319, 11, 9),
    ("beef", 470, 11, 5),
    ("oliveoil", 570, 26, 7),
];

fn canonical_name(name: &str) -> String {
    let lowered: String = name
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_lowercase())
        .collect();
    match lowered.as_str() {
        "ecg200" => "ecg".into(),
        "lightning2" => "lighting2".into(),
        "lightning7" => "lighting7".into(),
        _ => lowered,
    }
}

/// Tuned `(n, w, a)` for a known benchmark name (case and punctuation
/// insensitive; `ECG200` and the `Lightning` spellings are accepted).
pub fn known_config(name: &str) -> Option<SaxConfig> {
    let key = canonical_name(name);
    KNOWN_BENCHMARKS
        .iter()
        .find(|(k, ..)| *k == key)
        .map(|&(_, n, w, a)| SaxConfig { n, w, a })
}

/// SAX parameters for `ds`: explicit values win, then the known-benchmark
/// table. `n` is always the dataset's series length.
pub fn resolve_config(ds: &Dataset, w: Option<usize>, a: Option<usize>) -> Result<SaxConfig> {
    let known = known_config(ds.name());
    let w = w.or(known.map(|k| k.w));
    let a = a.or(known.map(|k| k.a));
    match (w, a) {
        (Some(w), Some(a)) => SaxConfig::new(ds.series_length(), w, a),
        _ => Err(Error::param(format!(
            "dataset '{}' is not a known benchmark; pass both the word length and the alphabet size",
            ds.name()
        ))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    pub binning: Binning,
    /// Defaults to `correlation::default_max_lag(n)`.
    pub max_lag: Option<usize>,
    pub include_lag0: bool,
    pub pe_orders: Vec<usize>,
    pub pe_delays: Vec<usize>,
    /// Bag-of-patterns subwindow; defaults to `classify::default_subwindow`.
    pub subwindow: Option<usize>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            binning: Binning::Quantile,
            max_lag: None,
            include_lag0: false,
            pe_orders: (entropy::MIN_ORDER..=entropy::MAX_ORDER).collect(),
            pe_delays: (1..=10).collect(),
            subwindow: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportConfig {
    pub dataset: String,
    pub samples: usize,
    pub series_length: usize,
    pub w: usize,
    pub a: usize,
    pub binning: Binning,
    pub kl_smoothing: &'static str,
    pub max_lag: usize,
    pub include_lag0: bool,
    pub pe_orders: Vec<usize>,
    pub pe_delays: Vec<usize>,
    pub test_dataset: Option<String>,
    pub bop: Option<BopConfig>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Correlograms {
    pub raw: Option<Correlogram>,
    pub sax: Option<Correlogram>,
    pub paa: Option<Correlogram>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleReport {
    pub index: usize,
    pub label: String,
    pub word: SaxWord,
    pub paa: Vec<f64>,
    pub sax_metrics: MetricsRecord,
    pub paa_metrics: MetricsRecord,
    pub pe_raw: Vec<PeCell>,
    pub pe_sax: Vec<PeCell>,
    /// `None` entries are constant sequences with no defined correlation.
    pub correlograms: Correlograms,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct MeanMetrics {
    pub info_loss: f64,
    pub kl: f64,
    pub info_loss_std: f64,
    pub kl_std: f64,
    pub iec: f64,
}

impl MeanMetrics {
    /// Field-wise mean; the iterator must not be empty.
    pub fn of<'a>(records: impl ExactSizeIterator<Item = &'a MetricsRecord>) -> Self {
        let n = records.len() as f64;
        let mut m = MeanMetrics::default();
        for r in records {
            m.info_loss += r.info_loss;
            m.kl += r.kl;
            m.info_loss_std += r.info_loss_std;
            m.kl_std += r.kl_std;
            m.iec += r.iec;
        }
        m.info_loss /= n;
        m.kl /= n;
        m.info_loss_std /= n;
        m.kl_std /= n;
        m.iec /= n;
        m
    }
}

/// Mean of a per-sample scalar over the samples where it is defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleMean {
    pub mean: Option<f64>,
    pub samples: usize,
}

impl SampleMean {
    fn of(values: impl Iterator<Item = Option<f64>>) -> Self {
        let (sum, count) = values
            .flatten()
            .fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
        SampleMean {
            mean: (count > 0).then(|| sum / count as f64),
            samples: count,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbsMeanAcf {
    pub raw: SampleMean,
    pub sax: SampleMean,
    pub paa: SampleMean,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeGridMean {
    pub order: usize,
    pub delay: usize,
    #[serde(flatten)]
    pub value: SampleMean,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub test_samples: usize,
    pub error_raw: f64,
    pub error_sax_bop: f64,
    /// `error_sax_bop / error_raw`; `None` when the raw error is zero.
    pub error_ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Aggregates {
    pub sax: MeanMetrics,
    pub paa: MeanMetrics,
    pub abs_mean_acf: AbsMeanAcf,
    pub pe_raw: Vec<PeGridMean>,
    pub pe_sax: Vec<PeGridMean>,
    pub classification: Option<Classification>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: ReportConfig,
    pub per_sample: Vec<SampleReport>,
    pub aggregates: Aggregates,
}

impl Report {
    /// The dataset's summary row, available when a test split was scored.
    pub fn summary_row(&self) -> Option<SummaryRow> {
        let c = self.aggregates.classification.as_ref()?;
        Some(SummaryRow {
            dataset: self.config.dataset.clone(),
            sax_iec: self.aggregates.sax.iec,
            paa_iec: self.aggregates.paa.iec,
            err_sax: c.error_sax_bop,
            err_raw: c.error_raw,
            benchmark: true,
        })
    }
}

fn correlogram_or_none(s: &Series, max_lag: usize, include_lag0: bool) -> Result<Option<Correlogram>> {
    match correlation::correlogram(s, max_lag, include_lag0) {
        Ok(c) => Ok(Some(c)),
        Err(Error::DegenerateSeries) => Ok(None),
        Err(e) => Err(e),
    }
}

fn grid_means(per_sample: &[&[PeCell]], orders: &[usize], delays: &[usize]) -> Vec<PeGridMean> {
    let cells = orders.len() * delays.len();
    (0..cells)
        .map(|i| {
            let cell = &per_sample.first().map(|g| g[i]);
            let (order, delay) = cell
                .map(|c| (c.order, c.delay))
                .unwrap_or((orders[i / delays.len()], delays[i % delays.len()]));
            PeGridMean {
                order,
                delay,
                value: SampleMean::of(per_sample.iter().map(|g| g[i].point.map(|p| p.value))),
            }
        })
        .collect()
}

pub fn analyze_dataset(
    ds: &Dataset,
    cfg: SaxConfig,
    options: &AnalysisOptions,
    test: Option<&Dataset>,
) -> Result<Report> {
    let n = ds.series_length();
    if cfg.n != n {
        return Err(Error::LengthMismatch { expected: n, found: cfg.n });
    }
    let max_lag = options.max_lag.unwrap_or_else(|| correlation::default_max_lag(n));
    if max_lag == 0 || max_lag >= n {
        return Err(Error::param(format!(
            "max lag must be in [1, {}) for series of length {n}, got {max_lag}",
            n
        )));
    }
    if n < 2 {
        return Err(Error::TooShort { len: n, needed: 2 });
    }
    let breakpoints = symbolic::gaussian_breakpoints(cfg.a)?;

    let per_sample = ds
        .samples()
        .par_iter()
        .zip(ds.labels().par_iter())
        .enumerate()
        .map(|(index, (s, label))| -> Result<SampleReport> {
            let sym = symbolic::symbolize(s, cfg.w, &breakpoints)?;
            let sax_metrics =
                metrics::iec_for_representation(s, &sym.sax_reconstruction, cfg.a, options.binning)?;
            let paa_metrics =
                metrics::iec_for_representation(s, &sym.paa_reconstruction, cfg.a, options.binning)?;
            let sax_scaled = series::scale_unit(&sym.sax_reconstruction);
            let paa_scaled = series::scale_unit(&sym.paa_reconstruction);
            Ok(SampleReport {
                index,
                label: label.clone(),
                pe_raw: entropy::pe_profile(s, &options.pe_orders, &options.pe_delays),
                pe_sax: entropy::pe_profile_sax(&sym.word, &options.pe_orders, &options.pe_delays),
                correlograms: Correlograms {
                    raw: correlogram_or_none(s, max_lag, options.include_lag0)?,
                    sax: correlogram_or_none(&sax_scaled, max_lag, options.include_lag0)?,
                    paa: correlogram_or_none(&paa_scaled, max_lag, options.include_lag0)?,
                },
                word: sym.word,
                paa: sym.paa.means().to_vec(),
                sax_metrics,
                paa_metrics,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let (classification, bop) = match test {
        Some(test) => {
            let bop = BopConfig::new(
                options
                    .subwindow
                    .unwrap_or_else(|| classify::default_subwindow(n, cfg.w)),
                cfg.w,
                cfg.a,
            )?;
            let error_raw = classify::nn1_euclidean(ds, test)?;
            let error_sax_bop = classify::nn1_bop(ds, test, &bop)?;
            let c = Classification {
                test_samples: test.len(),
                error_raw,
                error_sax_bop,
                error_ratio: (error_raw > 0.0).then(|| error_sax_bop / error_raw),
            };
            (Some(c), Some(bop))
        }
        None => (None, None),
    };

    let raw_grids: Vec<&[PeCell]> = per_sample.iter().map(|r| r.pe_raw.as_slice()).collect();
    let sax_grids: Vec<&[PeCell]> = per_sample.iter().map(|r| r.pe_sax.as_slice()).collect();
    let aggregates = Aggregates {
        sax: MeanMetrics::of(per_sample.iter().map(|r| &r.sax_metrics)),
        paa: MeanMetrics::of(per_sample.iter().map(|r| &r.paa_metrics)),
        abs_mean_acf: AbsMeanAcf {
            raw: SampleMean::of(per_sample.iter().map(|r| r.correlograms.raw.as_ref().map(|c| c.abs_mean_acf))),
            sax: SampleMean::of(per_sample.iter().map(|r| r.correlograms.sax.as_ref().map(|c| c.abs_mean_acf))),
            paa: SampleMean::of(per_sample.iter().map(|r| r.correlograms.paa.as_ref().map(|c| c.abs_mean_acf))),
        },
        pe_raw: grid_means(&raw_grids, &options.pe_orders, &options.pe_delays),
        pe_sax: grid_means(&sax_grids, &options.pe_orders, &options.pe_delays),
        classification,
    };

    Ok(Report {
        config: ReportConfig {
            dataset: ds.name().to_string(),
            samples: ds.len(),
            series_length: n,
            w: cfg.w,
            a: cfg.a,
            binning: options.binning,
            kl_smoothing: "add-one",
            max_lag,
            include_lag0: options.include_lag0,
            pe_orders: options.pe_orders.clone(),
            pe_delays: options.pe_delays.clone(),
            test_dataset: test.map(|t| t.name().to_string()),
            bop,
        },
        per_sample,
        aggregates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wave_dataset(name: &str, count: usize, n: usize) -> Dataset {
        let samples = (0..count)
            .map(|k| {
                Series::new(
                    (0..n)
                        .map(|i| ((i as f64) * 0.2 + k as f64).sin() + 0.05 * ((i * (k + 3)) % 7) as f64)
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        let labels = (0..count).map(|k| (k % 2).to_string()).collect();
        Dataset::new(name, samples, labels).unwrap()
    }

    #[test]
    fn known_benchmarks() {
        assert_eq!(known_config("ECG200"), Some(SaxConfig { n: 96, w: 12, a: 7 }));
        assert_eq!(known_config("Lighting 7"), Some(SaxConfig { n: 319, w: 11, a: 9 }));
        assert_eq!(known_config("Lightning2").unwrap().w, 18);
        assert_eq!(known_config("OliveOil").unwrap().w, 26);
        assert_eq!(known_config("noise"), None);
    }

    #[test]
    fn resolve_prefers_explicit_values() {
        let ds = wave_dataset("Coffee", 2, 286);
        assert_eq!(resolve_config(&ds, None, None).unwrap(), SaxConfig { n: 286, w: 48, a: 7 });
        assert_eq!(resolve_config(&ds, Some(10), None).unwrap().w, 10);
        let other = wave_dataset("mine", 2, 40);
        assert!(resolve_config(&other, Some(4), None).is_err());
        assert!(resolve_config(&other, Some(4), Some(5)).is_ok());
    }

    #[test]
    fn report_shape_and_determinism() {
        let ds = wave_dataset("waves", 6, 64);
        let cfg = SaxConfig::new(64, 8, 5).unwrap();
        let opts = AnalysisOptions::default();
        let r1 = analyze_dataset(&ds, cfg, &opts, Some(&ds)).unwrap();
        let r2 = analyze_dataset(&ds, cfg, &opts, Some(&ds)).unwrap();
        let j1 = serde_json::to_string(&r1).unwrap();
        assert_eq!(j1, serde_json::to_string(&r2).unwrap());

        assert_eq!(r1.per_sample.len(), 6);
        assert_eq!(r1.config.max_lag, correlation::default_max_lag(64));
        assert_eq!(r1.aggregates.pe_raw.len(), 6 * 10);
        let s0 = &r1.per_sample[0];
        assert_eq!(s0.word.len(), 8);
        assert_eq!(s0.paa.len(), 8);
        assert!((0.0..=1.0).contains(&s0.sax_metrics.iec));
        let c = r1.aggregates.classification.as_ref().unwrap();
        assert_eq!(c.error_raw, 0.0);
        assert_eq!(c.error_ratio, None);
        assert_eq!(r1.config.bop.unwrap().subwindow, 16);
        assert!(r1.summary_row().is_some());
    }

    #[test]
    fn mismatched_config_is_rejected() {
        let ds = wave_dataset("waves", 2, 32);
        let cfg = SaxConfig::new(30, 5, 4).unwrap();
        assert!(analyze_dataset(&ds, cfg, &AnalysisOptions::default(), None).is_err());
        let cfg = SaxConfig::new(32, 5, 4).unwrap();
        let opts = AnalysisOptions { max_lag: Some(32), ..Default::default() };
        assert!(analyze_dataset(&ds, cfg, &opts, None).is_err());
    }

    #[test]
    fn empty_pe_grid() {
        let ds = wave_dataset("waves", 2, 32);
        let cfg = SaxConfig::new(32, 4, 3).unwrap();
        let opts = AnalysisOptions { pe_orders: vec![], ..Default::default() };
        let r = analyze_dataset(&ds, cfg, &opts, None).unwrap();
        assert!(r.aggregates.pe_raw.is_empty());
        assert!(r.per_sample[0].pe_sax.is_empty());
        assert!(r.aggregates.classification.is_none());
    }
}
