//! Sample ACF (biased estimator), PACF via Durbin–Levinson, and the
//! absolute mean ACF summary.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::Series;

/// Prediction-error variance at or below this stops the recursion.
const SINGULAR_TOL: f64 = 1e-12;

/// `min(n - 2, floor(10 log10 n))`.
pub fn default_max_lag(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let by_log = (10.0 * (n as f64).log10()).floor() as usize;
    by_log.min(n - 2)
}

fn check_lag(s: &Series, max_lag: usize) -> Result<()> {
    if s.len() < 2 {
        return Err(Error::TooShort { len: s.len(), needed: 2 });
    }
    if max_lag >= s.len() {
        return Err(Error::param(format!(
            "max lag {max_lag} must be below the series length {}",
            s.len()
        )));
    }
    Ok(())
}

/// `rho_k = sum_t (z_t - m)(z_{t+k} - m) / sum_t (z_t - m)^2` for
/// `k = 0..=max_lag`, with the full-series mean `m`.
pub fn acf(s: &Series, max_lag: usize) -> Result<Vec<f64>> {
    check_lag(s, max_lag)?;
    if s.is_constant() {
        return Err(Error::DegenerateSeries);
    }
    let m = s.mean();
    let d: Vec<f64> = s.values().iter().map(|v| v - m).collect();
    let denom: f64 = d.iter().map(|x| x * x).sum();
    if denom <= 0.0 {
        return Err(Error::DegenerateSeries);
    }
    let mut out = Vec::with_capacity(max_lag + 1);
    out.push(1.0);
    for k in 1..=max_lag {
        let num: f64 = d.iter().zip(&d[k..]).map(|(a, b)| a * b).sum();
        out.push(num / denom);
    }
    Ok(out)
}

/// Partial autocorrelations for lags `0..=max_lag` from an ACF sequence.
/// A lag is `None` once the recursion becomes singular.
pub fn durbin_levinson(rho: &[f64]) -> Vec<Option<f64>> {
    let max_lag = rho.len().saturating_sub(1);
    let mut out = Vec::with_capacity(rho.len());
    out.push(Some(1.0));
    let mut phi: Vec<f64> = Vec::with_capacity(max_lag);
    let mut v = 1.0;
    for k in 1..=max_lag {
        if v <= SINGULAR_TOL {
            out.resize(max_lag + 1, None);
            break;
        }
        let acc: f64 = (1..k).map(|j| phi[j - 1] * rho[k - j]).sum();
        let kk = (rho[k] - acc) / v;
        if !kk.is_finite() || kk.abs() > 1.0 + 1e-9 {
            out.resize(max_lag + 1, None);
            break;
        }
        let prev = phi.clone();
        for j in 1..k {
            phi[j - 1] = prev[j - 1] - kk * prev[k - j - 1];
        }
        phi.push(kk);
        v *= 1.0 - kk * kk;
        out.push(Some(kk));
    }
    out
}

/// Requires `2 * max_lag < len`.
pub fn pacf(s: &Series, max_lag: usize) -> Result<Vec<Option<f64>>> {
    if 2 * max_lag >= s.len() {
        return Err(Error::param(format!(
            "PACF max lag {max_lag} must be below half the series length {}",
            s.len()
        )));
    }
    Ok(durbin_levinson(&acf(s, max_lag)?))
}

/// Mean of `|rho_k|` over `k = 1..=max_lag`, or `0..=max_lag` when
/// `include_lag0` is set.
pub fn abs_mean_acf(s: &Series, max_lag: usize, include_lag0: bool) -> Result<f64> {
    let rho = acf(s, max_lag)?;
    abs_mean(&rho, include_lag0)
}

fn abs_mean(rho: &[f64], include_lag0: bool) -> Result<f64> {
    let from = usize::from(!include_lag0);
    let used = &rho[from..];
    if used.is_empty() {
        return Err(Error::param("absolute mean ACF needs at least one lag"));
    }
    Ok(used.iter().map(|r| r.abs()).sum::<f64>() / used.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Correlogram {
    pub lags: Vec<usize>,
    pub acf: Vec<f64>,
    /// `None` past half the series length or after a singular step.
    pub pacf: Vec<Option<f64>>,
    pub abs_mean_acf: f64,
    /// Half-width of the approximate 95% white-noise band, `1.96 / sqrt(n)`.
    pub band: f64,
}

/// ACF to `max_lag`, PACF as far as the series length allows.
pub fn correlogram(s: &Series, max_lag: usize, include_lag0: bool) -> Result<Correlogram> {
    let rho = acf(s, max_lag)?;
    let abs_mean_acf = abs_mean(&rho, include_lag0)?;
    let pacf_lag = max_lag.min((s.len() - 1) / 2);
    let mut pacf = durbin_levinson(&rho[..=pacf_lag]);
    pacf.resize(max_lag + 1, None);
    Ok(Correlogram {
        lags: (0..=max_lag).collect(),
        acf: rho,
        pacf,
        abs_mean_acf,
        band: 1.96 / (s.len() as f64).sqrt(),
    })
}
