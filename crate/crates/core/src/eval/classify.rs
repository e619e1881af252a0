//! 1-nearest-neighbour classification over raw series and over SAX
//! bag-of-patterns histograms.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::series::{self, Series};
use crate::symbolic::{self, Breakpoints, SaxConfig, SaxWord};

/// Sliding-window SAX parameters for bag-of-patterns features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BopConfig {
    pub subwindow: usize,
    pub w: usize,
    pub a: usize,
}

impl BopConfig {
    pub fn new(subwindow: usize, w: usize, a: usize) -> Result<Self> {
        // Reuses the SAX bounds with the subwindow as the series length.
        SaxConfig::new(subwindow, w, a)?;
        Ok(BopConfig { subwindow, w, a })
    }

    /// Subwindow of `round(n / 4)`, raised to at least `w` and capped at `n`.
    pub fn with_default_subwindow(cfg: SaxConfig) -> Result<Self> {
        BopConfig::new(default_subwindow(cfg.n, cfg.w), cfg.w, cfg.a)
    }
}

pub fn default_subwindow(n: usize, w: usize) -> usize {
    ((n as f64 / 4.0).round() as usize).max(w).min(n)
}

/// Word counts over all sliding subwindows, with runs of identical
/// consecutive words counted once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BopHistogram {
    counts: BTreeMap<SaxWord, u64>,
    total: u64,
}

impl BopHistogram {
    pub fn count(&self, word: &SaxWord) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn vocabulary_size(&self) -> usize {
        self.counts.len()
    }

    /// Words in lexicographic order; a word's position is its vocabulary index.
    pub fn words(&self) -> impl Iterator<Item = &SaxWord> {
        self.counts.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SaxWord, u64)> {
        self.counts.iter().map(|(w, &c)| (w, c))
    }

    /// Squared Euclidean distance with absent words counted as zero.
    pub fn squared_distance(&self, other: &BopHistogram) -> f64 {
        let mut a = self.counts.iter().peekable();
        let mut b = other.counts.iter().peekable();
        let mut acc = 0.0;
        loop {
            let d = match (a.peek(), b.peek()) {
                (Some((wa, &ca)), Some((wb, &cb))) => match wa.cmp(wb) {
                    Ordering::Less => {
                        a.next();
                        ca as f64
                    }
                    Ordering::Greater => {
                        b.next();
                        cb as f64
                    }
                    Ordering::Equal => {
                        a.next();
                        b.next();
                        ca as f64 - cb as f64
                    }
                },
                (Some((_, &ca)), None) => {
                    a.next();
                    ca as f64
                }
                (None, Some((_, &cb))) => {
                    b.next();
                    cb as f64
                }
                (None, None) => break,
            };
            acc += d * d;
        }
        acc
    }
}

impl Serialize for BopHistogram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_map(self.counts.iter().map(|(w, c)| (w.to_string(), c)))
    }
}

fn bop_with(s: &Series, cfg: &BopConfig, breakpoints: &Breakpoints) -> Result<BopHistogram> {
    if cfg.subwindow > s.len() {
        return Err(Error::param(format!(
            "subwindow {} exceeds series length {}",
            cfg.subwindow,
            s.len()
        )));
    }
    let values = s.values();
    let mut counts = BTreeMap::new();
    let mut total = 0;
    let mut previous: Option<SaxWord> = None;
    for start in 0..=(values.len() - cfg.subwindow) {
        let window = Series::from_trusted(values[start..start + cfg.subwindow].to_vec());
        let p = symbolic::paa(&series::znormalize(&window), cfg.w)?;
        let word = symbolic::sax_word(&p, breakpoints);
        if previous.as_ref() == Some(&word) {
            continue;
        }
        *counts.entry(word.clone()).or_insert(0) += 1;
        total += 1;
        previous = Some(word);
    }
    Ok(BopHistogram { counts, total })
}

pub fn sax_bop(s: &Series, cfg: &BopConfig) -> Result<BopHistogram> {
    bop_with(s, cfg, &symbolic::gaussian_breakpoints(cfg.a)?)
}

/// Index of the nearest candidate; ties go to the lowest index.
fn nearest<T>(candidates: &[T], query: &T, dist: impl Fn(&T, &T) -> f64) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, c) in candidates.iter().enumerate() {
        let d = dist(c, query);
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    best
}

fn squared_euclidean(a: &Series, b: &Series) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y) * (x - y))
        .sum()
}

fn error_rate(predicted: &[&String], truth: &[String]) -> f64 {
    let wrong = predicted.iter().zip(truth).filter(|(p, t)| **p != *t).count();
    wrong as f64 / truth.len() as f64
}

fn check_pair(train: &super::Dataset, test: &super::Dataset) -> Result<()> {
    if train.is_empty() {
        return Err(Error::Dataset("training set is empty".into()));
    }
    if train.series_length() != test.series_length() {
        return Err(Error::LengthMismatch {
            expected: train.series_length(),
            found: test.series_length(),
        });
    }
    Ok(())
}

/// Labels predicted for every test sample by raw Euclidean 1NN.
pub fn nn1_euclidean_predict<'a>(
    train: &'a super::Dataset,
    test: &super::Dataset,
) -> Result<Vec<&'a String>> {
    check_pair(train, test)?;
    Ok(test
        .samples()
        .par_iter()
        .map(|q| &train.labels()[nearest(train.samples(), q, squared_euclidean)])
        .collect())
}

pub fn nn1_euclidean(train: &super::Dataset, test: &super::Dataset) -> Result<f64> {
    let predicted = nn1_euclidean_predict(train, test)?;
    Ok(error_rate(&predicted, test.labels()))
}

pub fn nn1_bop(train: &super::Dataset, test: &super::Dataset, cfg: &BopConfig) -> Result<f64> {
    check_pair(train, test)?;
    let breakpoints = symbolic::gaussian_breakpoints(cfg.a)?;
    let build = |ds: &super::Dataset| -> Result<Vec<BopHistogram>> {
        ds.samples()
            .par_iter()
            .map(|s| bop_with(s, cfg, &breakpoints))
            .collect()
    };
    let train_h = build(train)?;
    let test_h = build(test)?;
    let predicted: Vec<&String> = test_h
        .par_iter()
        .map(|q| &train.labels()[nearest(&train_h, q, BopHistogram::squared_distance)])
        .collect();
    Ok(error_rate(&predicted, test.labels()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Dataset;

    fn series(v: &[f64]) -> Series {
        Series::new(v.to_vec()).unwrap()
    }

    fn dataset(rows: &[(&str, Vec<f64>)]) -> Dataset {
        Dataset::new(
            "t",
            rows.iter().map(|(_, v)| series(v)).collect(),
            rows.iter().map(|(l, _)| l.to_string()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identical_sample_is_matched() {
        let train = dataset(&[("a", vec![0.0, 1.0, 2.0]), ("b", vec![5.0, 5.0, 4.0])]);
        let test = dataset(&[("b", vec![5.0, 5.0, 4.0])]);
        assert_eq!(nn1_euclidean(&train, &test).unwrap(), 0.0);
        assert_eq!(nn1_euclidean(&train, &train).unwrap(), 0.0);
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let train = dataset(&[("a", vec![0.0, 1.0]), ("b", vec![0.0, -1.0])]);
        let test = dataset(&[("b", vec![0.0, 0.0])]);
        assert_eq!(nn1_euclidean_predict(&train, &test).unwrap(), vec!["a"]);
        assert_eq!(nn1_euclidean(&train, &test).unwrap(), 1.0);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let train = dataset(&[("a", vec![0.0, 1.0])]);
        let test = dataset(&[("a", vec![0.0, 1.0, 2.0])]);
        assert!(nn1_euclidean(&train, &test).is_err());
    }

    #[test]
    fn constant_series_has_one_word() {
        let cfg = BopConfig::new(4, 2, 3).unwrap();
        let h = sax_bop(&series(&[2.0; 12]), &cfg).unwrap();
        assert_eq!(h.vocabulary_size(), 1);
        assert_eq!(h.total(), 1);
        assert_eq!(h.words().next().unwrap().to_string(), "BB");
    }

    #[test]
    fn full_length_subwindow_gives_one_word() {
        let s = series(&[0.0, 3.0, 1.0, 4.0, 1.0, 5.0]);
        let h = sax_bop(&s, &BopConfig::new(6, 3, 4).unwrap()).unwrap();
        assert_eq!((h.vocabulary_size(), h.total()), (1, 1));
    }

    #[test]
    fn alternating_motifs_give_two_words() {
        // Windows of length 2 over 0,1,0,1,... are either [0,1] -> "AB" or
        // [1,0] -> "BA"; they alternate, so no run is collapsed.
        let s = Series::new((0..20).map(|i| (i % 2) as f64).collect()).unwrap();
        let h = sax_bop(&s, &BopConfig::new(2, 2, 2).unwrap()).unwrap();
        assert_eq!(h.vocabulary_size(), 2);
        let ab = SaxWord::from_letters("AB", 2).unwrap();
        let ba = SaxWord::from_letters("BA", 2).unwrap();
        assert_eq!(h.count(&ab), 10);
        assert_eq!(h.count(&ba), 9);
        assert_eq!(h.total(), 19);
    }

    #[test]
    fn bop_geometry_errors() {
        assert!(BopConfig::new(4, 5, 3).is_err());
        let cfg = BopConfig::new(8, 2, 3).unwrap();
        assert!(sax_bop(&series(&[1.0, 2.0]), &cfg).is_err());
    }

    #[test]
    fn histogram_distance() {
        let s1 = Series::new((0..20).map(|i| (i % 2) as f64).collect()).unwrap();
        let s2 = Series::new((0..20).map(|i| i as f64).collect()).unwrap();
        let cfg = BopConfig::new(2, 2, 2).unwrap();
        let h1 = sax_bop(&s1, &cfg).unwrap();
        let h2 = sax_bop(&s2, &cfg).unwrap();
        // h2 is a single "AB" (numerosity reduced); h1 is AB:10, BA:9.
        assert_eq!(h1.squared_distance(&h2), 81.0 + 81.0);
        assert_eq!(h1.squared_distance(&h2), h2.squared_distance(&h1));
        assert_eq!(h1.squared_distance(&h1), 0.0);
    }

    #[test]
    fn default_subwindow_rule() {
        assert_eq!(default_subwindow(96, 12), 24);
        assert_eq!(default_subwindow(286, 48), 72);
        assert_eq!(default_subwindow(20, 8), 8);
        assert_eq!(default_subwindow(3, 1), 1);
    }

    #[test]
    fn bop_serializes_as_letter_map() {
        let s = Series::new((0..6).map(|i| (i % 2) as f64).collect()).unwrap();
        let h = sax_bop(&s, &BopConfig::new(2, 2, 2).unwrap()).unwrap();
        assert_eq!(serde_json::to_string(&h).unwrap(), r#"{"AB":3,"BA":2}"#);
    }
}
