//! Independent reference implementations shared by the integration tests.
//! None of these call into the code paths they are compared against.

#![allow(dead_code)]

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn white_noise(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn ar1(rng: &mut ChaCha8Rng, phi: f64, n: usize) -> Vec<f64> {
    let burn_in = 500;
    let mut z = 0.0;
    let mut out = Vec::with_capacity(n);
    for i in 0..n + burn_in {
        let e: f64 = rng.sample(StandardNormal);
        z = phi * z + e;
        if i >= burn_in {
            out.push(z);
        }
    }
    out
}

/// Tied pattern by pairwise comparison: the rank of `x` is the number of
/// distinct window values strictly below it.
fn naive_pattern(window: &[f64]) -> String {
    window
        .iter()
        .map(|&x| {
            let mut below: Vec<f64> = window.iter().copied().filter(|&y| y < x).collect();
            below.sort_by(|a, b| a.partial_cmp(b).unwrap());
            below.dedup();
            below.len().to_string()
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Shannon entropy (nats) of the tied ordinal patterns, by materializing
/// every embedding window and counting patterns in a map.
pub fn naive_pe_entropy(values: &[f64], order: usize, delay: usize) -> f64 {
    let span = (order - 1) * delay;
    let windows: Vec<Vec<f64>> = (0..values.len() - span)
        .map(|i| (0..order).map(|j| values[i + j * delay]).collect())
        .collect();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for w in &windows {
        *counts.entry(naive_pattern(w)).or_default() += 1;
    }
    let total = windows.len() as f64;
    -counts
        .values()
        .map(|&c| {
            let p = c as f64 / total;
            p * p.ln()
        })
        .sum::<f64>()
}

/// Last coefficient of the least-squares regression of `z_t` on
/// `z_{t-1}, ..., z_{t-k}`, using the demeaned series zero-padded on both
/// sides (the autocorrelation method of linear prediction).
pub fn ls_pacf(values: &[f64], k: usize) -> f64 {
    let n = values.len();
    let m = values.iter().sum::<f64>() / n as f64;
    let mut padded = vec![0.0; n + 2 * k];
    for (i, v) in values.iter().enumerate() {
        padded[k + i] = v - m;
    }
    let rows = n + k;
    let design = DMatrix::from_fn(rows, k, |r, c| padded[r + k - 1 - c]);
    let target = DVector::from_fn(rows, |r, _| padded[r + k]);
    let coef = design
        .svd(true, true)
        .solve(&target, 1e-14)
        .expect("least-squares solve");
    coef[k - 1]
}

/// Direct autocorrelation with an explicit double loop.
pub fn naive_acf(values: &[f64], max_lag: usize) -> Vec<f64> {
    let n = values.len();
    let m = values.iter().sum::<f64>() / n as f64;
    let mut var = 0.0;
    for v in values {
        var += (v - m) * (v - m);
    }
    (0..=max_lag)
        .map(|k| {
            let mut c = 0.0;
            for t in 0..n - k {
                c += (values[t] - m) * (values[t + k] - m);
            }
            c / var
        })
        .collect()
}

/// Minimizes the through-origin quadratic SSE by a two-stage grid search
/// centred on `(c1, c2)`. Returns the best `(b1, b2)` on the final grid and
/// its spacing.
pub fn grid_search_quadratic(xs: &[f64], ys: &[f64], c1: f64, c2: f64, half_width: f64) -> (f64, f64, f64) {
    let sse = |b1: f64, b2: f64| -> f64 {
        xs.iter()
            .zip(ys)
            .map(|(&x, &y)| (y - b1 * x - b2 * x * x).powi(2))
            .sum()
    };
    let mut centre = (c1, c2);
    let mut width = half_width;
    let steps = 200;
    let mut spacing = 0.0;
    for _ in 0..3 {
        spacing = 2.0 * width / steps as f64;
        let mut best = (f64::INFINITY, centre.0, centre.1);
        for i in 0..=steps {
            for j in 0..=steps {
                let b1 = centre.0 - width + i as f64 * spacing;
                let b2 = centre.1 - width + j as f64 * spacing;
                let e = sse(b1, b2);
                if e < best.0 {
                    best = (e, b1, b2);
                }
            }
        }
        centre = (best.1, best.2);
        width = 2.0 * spacing;
    }
    (centre.0, centre.1, spacing)
}

/// `(SAX IEC, ERR_SAX / ERR_raw)` for the seven benchmark rows of the
/// shipped summary fixture, parsed by hand.
pub fn benchmark_ratio_pairs() -> (Vec<f64>, Vec<f64>) {
    let text = std::fs::read_to_string(fixture("table2.csv")).expect("fixture");
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[5].trim() != "true" {
            continue;
        }
        let parse = |s: &str| s.trim().parse::<f64>().unwrap();
        xs.push(parse(f[1]));
        ys.push(parse(f[3]) / parse(f[4]));
    }
    (xs, ys)
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

/// Two classes of sawtooth series: rising ramps (label "up") and falling
/// ramps (label "down"), each with a random phase and small noise.
pub fn sawtooth_dataset(rng: &mut ChaCha8Rng, per_class: usize, n: usize, period: usize) -> (Vec<Vec<f64>>, Vec<String>) {
    let mut samples = Vec::new();
    let mut labels = Vec::new();
    for class in ["up", "down"] {
        for _ in 0..per_class {
            let phase = rng.random_range(0..period);
            let s: Vec<f64> = (0..n)
                .map(|i| {
                    let ramp = ((i + phase) % period) as f64 / period as f64;
                    let v = if class == "up" { ramp } else { 1.0 - ramp };
                    v + 0.02 * rng.sample::<f64, _>(StandardNormal)
                })
                .collect();
            samples.push(s);
            labels.push(class.to_string());
        }
    }
    (samples, labels)
}
