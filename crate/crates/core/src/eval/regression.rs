use serde::Serialize;

use crate::error::{Error, Result};

/// Least-squares fit of `y = b1 x + b2 x^2` with no intercept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegressionFit {
    pub b1: f64,
    pub b2: f64,
    /// Uncentered: `1 - SS_res / sum(y^2)`.
    pub r_squared: f64,
    pub multiple_r: f64,
    pub ss_res: f64,
    pub points: usize,
}

impl RegressionFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.b1 * x + self.b2 * x * x
    }
}

pub fn quad_regression_origin(xs: &[f64], ys: &[f64]) -> Result<RegressionFit> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(Error::TooShort { len: xs.len(), needed: 3 });
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::param("regression inputs must be finite"));
    }
    if xs.iter().all(|&x| x == 0.0) {
        return Err(Error::Singular("all x values are zero".into()));
    }

    let (mut s2, mut s3, mut s4, mut sxy, mut sx2y, mut syy) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let x2 = x * x;
        s2 += x2;
        s3 += x2 * x;
        s4 += x2 * x2;
        sxy += x * y;
        sx2y += x2 * y;
        syy += y * y;
    }
    // [s2 s3; s3 s4] [b1; b2] = [sxy; sx2y]
    let det = s2 * s4 - s3 * s3;
    if det.abs() <= 1e-12 * s2 * s4 {
        return Err(Error::Singular(
            "x and x^2 are collinear (fewer than two distinct non-zero x values)".into(),
        ));
    }
    let b1 = (sxy * s4 - s3 * sx2y) / det;
    let b2 = (s2 * sx2y - s3 * sxy) / det;

    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = y - (b1 * x + b2 * x * x);
            r * r
        })
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Ok(RegressionFit {
        b1,
        b2,
        r_squared,
        multiple_r: r_squared.max(0.0).sqrt(),
        ss_res,
        points: xs.len(),
    })
}
