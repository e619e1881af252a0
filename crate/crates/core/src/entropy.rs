//! Normalized permutation entropy with tied ranks.
//!
//! Equal values inside an embedding window share a rank, so the window
//! `3, 4, 4, 3, 1` has the pattern `1, 2, 2, 1, 0`. This keeps the measure
//! deterministic on heavily tied inputs such as SAX words.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::Series;
use crate::symbolic::SaxWord;

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PermutationSpec {
    pub order: usize,
    pub delay: usize,
}

impl PermutationSpec {
    pub fn new(order: usize, delay: usize) -> Result<Self> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
            return Err(Error::param(format!(
                "permutation order must be in [{MIN_ORDER}, {MAX_ORDER}], got {order}"
            )));
        }
        if delay == 0 {
            return Err(Error::param("delay must be >= 1"));
        }
        Ok(PermutationSpec { order, delay })
    }

    /// Samples spanned by one embedding window.
    pub fn span(&self) -> usize {
        (self.order - 1) * self.delay + 1
    }

    /// Window count above which the estimate is considered reliable (5 n!).
    pub fn reliability_threshold(&self) -> usize {
        5 * factorial(self.order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PePoint {
    pub order: usize,
    pub delay: usize,
    /// `H / ln(n!)`, clamped to `[0, 1]`.
    pub value: f64,
    /// Unnormalized Shannon entropy in nats.
    pub entropy: f64,
    pub windows: usize,
    pub reliable: bool,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Dense ranks: each value becomes the number of distinct values in the
/// window strictly smaller than it.
pub fn rank_pattern(window: &[f64]) -> Vec<u8> {
    let mut distinct = window.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    window
        .iter()
        .map(|v| distinct.partition_point(|d| d < v) as u8)
        .collect()
}

/// Packs a pattern into base-`order` digits. Ranks are `< order`, so the
/// code is unique per pattern.
fn pattern_code(window: &[f64]) -> u32 {
    let order = window.len() as u32;
    rank_pattern(window)
        .iter()
        .fold(0u32, |acc, &r| acc * order + u32::from(r))
}

fn entropy_of_codes(mut codes: Vec<u32>) -> f64 {
    let total = codes.len() as f64;
    codes.sort_unstable();
    let mut h = 0.0;
    let mut i = 0;
    while i < codes.len() {
        let j = i + codes[i..].iter().take_while(|&&c| c == codes[i]).count();
        let p = (j - i) as f64 / total;
        h -= p * p.ln();
        i = j;
    }
    h
}

fn pe_of_values(values: &[f64], spec: PermutationSpec) -> Result<PePoint> {
    let span = spec.span();
    if values.len() < span {
        return Err(Error::TooShort {
            len: values.len(),
            needed: span,
        });
    }
    let windows = values.len() - span + 1;
    let mut buf = vec![0.0; spec.order];
    let codes = (0..windows)
        .map(|i| {
            for (j, slot) in buf.iter_mut().enumerate() {
                *slot = values[i + j * spec.delay];
            }
            pattern_code(&buf)
        })
        .collect();
    let entropy = entropy_of_codes(codes);
    let value = (entropy / (factorial(spec.order) as f64).ln()).clamp(0.0, 1.0);
    Ok(PePoint {
        order: spec.order,
        delay: spec.delay,
        value,
        entropy,
        windows,
        reliable: windows > spec.reliability_threshold(),
    })
}

pub fn permutation_entropy(s: &Series, spec: PermutationSpec) -> Result<PePoint> {
    pe_of_values(s.values(), spec)
}

/// Permutation entropy of the symbol-index sequence of a SAX word.
pub fn pe_on_sax(word: &SaxWord, spec: PermutationSpec) -> Result<PePoint> {
    let digits: Vec<f64> = word.symbols().iter().map(|&s| f64::from(s)).collect();
    pe_of_values(&digits, spec)
}

/// One cell of a PE grid; `point` is `None` when the series is too short
/// for the cell's order and delay, or the order is out of range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeCell {
    pub order: usize,
    pub delay: usize,
    pub point: Option<PePoint>,
}

/// Row-major grid over `orders` x `delays`.
pub fn pe_profile(s: &Series, orders: &[usize], delays: &[usize]) -> Vec<PeCell> {
    profile_values(s.values(), orders, delays)
}

pub fn pe_profile_sax(word: &SaxWord, orders: &[usize], delays: &[usize]) -> Vec<PeCell> {
    let digits: Vec<f64> = word.symbols().iter().map(|&s| f64::from(s)).collect();
    profile_values(&digits, orders, delays)
}

fn profile_values(values: &[f64], orders: &[usize], delays: &[usize]) -> Vec<PeCell> {
    let cells: Vec<(usize, usize)> = orders
        .iter()
        .flat_map(|&n| delays.iter().map(move |&t| (n, t)))
        .collect();
    cells
        .into_par_iter()
        .map(|(order, delay)| PeCell {
            order,
            delay,
            point: PermutationSpec::new(order, delay)
                .and_then(|spec| pe_of_values(values, spec))
                .ok(),
        })
        .collect()
}
