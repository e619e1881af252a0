//! Reconstruction information loss, smoothed KL divergence and the
//! information embedding cost (IEC) score.
//!
//! The IEC of a representation is
//!
//! ```text
//! iec = kl_std / (1 + info_loss_std)
//! ```
//!
//! where `kl_std = min(KL(P || Q) / ln a, 1)` compares the quantile-bin
//! distribution `P` of the unit-scaled original with the distribution `Q`
//! of the unit-scaled reconstruction over the same bins, and
//! `info_loss_std = min(mse, 1)` with the `n - 1` divisor.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{self, Binning, Histogram, Series};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricsRecord {
    pub info_loss: f64,
    pub kl: f64,
    pub info_loss_std: f64,
    pub kl_std: f64,
    pub iec: f64,
}

/// Sum of squared index-aligned differences divided by `n - 1`.
pub fn info_loss(recon: &Series, orig: &Series) -> Result<f64> {
    if recon.len() != orig.len() {
        return Err(Error::LengthMismatch {
            expected: orig.len(),
            found: recon.len(),
        });
    }
    if orig.len() < 2 {
        return Err(Error::TooShort { len: orig.len(), needed: 2 });
    }
    let sse: f64 = recon
        .values()
        .iter()
        .zip(orig.values())
        .map(|(r, o)| (r - o) * (r - o))
        .sum();
    Ok(sse / (orig.len() - 1) as f64)
}

/// `KL(P || Q)` in nats after adding one to every count of both histograms.
pub fn kl_divergence(p: &Histogram, q: &Histogram) -> Result<f64> {
    if p.bin_count() != q.bin_count() {
        return Err(Error::LengthMismatch {
            expected: p.bin_count(),
            found: q.bin_count(),
        });
    }
    let bins = p.bin_count() as f64;
    let p_total = p.total() as f64 + bins;
    let q_total = q.total() as f64 + bins;
    let kl = p
        .counts()
        .iter()
        .zip(q.counts())
        .map(|(&pc, &qc)| {
            let pc = pc as f64 + 1.0;
            let qc = qc as f64 + 1.0;
            // Integer-valued products keep the ratio exactly 1 when the
            // smoothed distributions agree.
            pc / p_total * ((pc * q_total) / (qc * p_total)).ln()
        })
        .sum::<f64>();
    // Rounding can leave a tiny negative residue for equal distributions.
    Ok(kl.max(0.0))
}

pub fn iec(kl_std: f64, info_loss_std: f64) -> Result<f64> {
    for (name, v) in [("kl_std", kl_std), ("info_loss_std", info_loss_std)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::param(format!("{name} must lie in [0, 1], got {v}")));
        }
    }
    Ok(kl_std / (1.0 + info_loss_std))
}

/// Scores a reconstruction against its original. Both series are unit
/// scaled first, so the result does not depend on either series' units.
pub fn iec_for_representation(
    orig: &Series,
    recon: &Series,
    alphabet: usize,
    binning: Binning,
) -> Result<MetricsRecord> {
    if orig.len() != recon.len() {
        return Err(Error::LengthMismatch {
            expected: orig.len(),
            found: recon.len(),
        });
    }
    let orig = series::scale_unit(orig);
    let recon = series::scale_unit(recon);
    let edges = binning.edges(&orig, alphabet)?;
    let p = series::histogram(&orig, &edges);
    let q = series::histogram(&recon, &edges);
    let kl = kl_divergence(&p, &q)?;
    let info_loss = info_loss(&recon, &orig)?;
    let kl_std = (kl / (alphabet as f64).ln()).min(1.0);
    let info_loss_std = info_loss.min(1.0);
    Ok(MetricsRecord {
        info_loss,
        kl,
        info_loss_std,
        kl_std,
        iec: iec(kl_std, info_loss_std)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(v: &[f64]) -> Series {
        Series::new(v.to_vec()).unwrap()
    }

    fn hist(c: &[u64]) -> Histogram {
        Histogram::from_counts(c.to_vec()).unwrap()
    }

    #[test]
    fn info_loss_examples() {
        let s = series(&[0.1, 0.7, 0.3]);
        assert_eq!(info_loss(&s, &s).unwrap(), 0.0);
        assert_eq!(info_loss(&series(&[0.0; 3]), &series(&[1.0; 3])).unwrap(), 1.5);
        assert_eq!(info_loss(&series(&[0.5, 0.5]), &series(&[0.0, 1.0])).unwrap(), 0.5);
    }

    #[test]
    fn info_loss_errors() {
        assert!(matches!(
            info_loss(&series(&[0.0, 1.0]), &series(&[0.0, 1.0, 2.0])),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            info_loss(&series(&[0.0]), &series(&[1.0])),
            Err(Error::TooShort { .. })
        ));
    }

    #[test]
    fn kl_examples() {
        assert_eq!(kl_divergence(&hist(&[3, 5, 2]), &hist(&[3, 5, 2])).unwrap(), 0.0);
        // Smoothed p = [11/12, 1/12], q = [1/12, 11/12] gives (10/12) ln 11.
        let kl = kl_divergence(&hist(&[10, 0]), &hist(&[0, 10])).unwrap();
        assert!((kl - 10.0 / 12.0 * 11f64.ln()).abs() < 1e-12);
        assert!((kl - 1.998).abs() < 1e-3);
        assert!(kl_divergence(&hist(&[1, 2]), &hist(&[1, 2, 3])).is_err());
    }

    #[test]
    fn kl_is_asymmetric() {
        // [3, 1] vs [1, 3] is a bin swap, so both directions give (1/3) ln 2.
        // An unbalanced pair is needed to see the asymmetry.
        let p = hist(&[3, 1]);
        let q = hist(&[1, 3]);
        let pq = kl_divergence(&p, &q).unwrap();
        let qp = kl_divergence(&q, &p).unwrap();
        assert!((pq - qp).abs() < 1e-15);
        let r = hist(&[6, 0]);
        let pr = kl_divergence(&p, &r).unwrap();
        let rp = kl_divergence(&r, &p).unwrap();
        // p~ = [2/3, 1/3], r~ = [7/8, 1/8]
        let want_pr = 2.0 / 3.0 * (16.0f64 / 21.0).ln() + 1.0 / 3.0 * (8.0f64 / 3.0).ln();
        let want_rp = 7.0 / 8.0 * (21.0f64 / 16.0).ln() + 1.0 / 8.0 * (3.0f64 / 8.0).ln();
        assert!((pr - want_pr).abs() < 1e-12);
        assert!((rp - want_rp).abs() < 1e-12);
        assert!((pr - rp).abs() > 1e-3);
    }

    #[test]
    fn iec_boundaries() {
        for l in [0.0, 0.5, 1.0] {
            assert_eq!(iec(0.0, l).unwrap(), 0.0);
        }
        assert_eq!(iec(1.0, 1.0).unwrap(), 0.5);
        assert_eq!(iec(1.0, 0.0).unwrap(), 1.0);
        assert!(iec(1.1, 0.0).is_err());
        assert!(iec(0.5, -0.1).is_err());
        assert!(iec(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn perfect_representation_scores_zero() {
        let s = series(&[0.3, 1.2, -0.4, 2.2, 0.9, 0.0]);
        let m = iec_for_representation(&s, &s, 3, Binning::Quantile).unwrap();
        assert_eq!((m.kl, m.info_loss, m.iec), (0.0, 0.0, 0.0));
    }

    #[test]
    fn constant_reconstruction_of_alternating_signal() {
        // orig scales to 0/1 alternating, the constant reconstruction to 0.5.
        // The median edge is 0.5, so the whole reconstruction sits in bin 0:
        // P = [50, 50], Q = [100, 0].
        let orig = Series::new((0..100).map(|i| if i % 2 == 0 { -3.0 } else { 8.0 }).collect()).unwrap();
        let recon = series(&[1.0; 100]);
        let m = iec_for_representation(&orig, &recon, 2, Binning::Quantile).unwrap();
        let p: [f64; 2] = [51.0 / 102.0, 51.0 / 102.0];
        let q: [f64; 2] = [101.0 / 102.0, 1.0 / 102.0];
        let kl = p[0] * (p[0] / q[0]).ln() + p[1] * (p[1] / q[1]).ln();
        assert!((m.kl - kl).abs() < 1e-12);
        assert_eq!(m.kl_std, 1.0);
        assert!((m.info_loss - 0.25 * 100.0 / 99.0).abs() < 1e-12);
        assert!((m.iec - 1.0 / (1.0 + 25.0 / 99.0)).abs() < 1e-12);
    }

    #[test]
    fn uniform_binning_differs_on_skewed_signal() {
        let orig = Series::new((0..60).map(|i| (i as f64 / 10.0).exp()).collect()).unwrap();
        let recon = Series::new((0..60).map(|i| i as f64).collect()).unwrap();
        let q = iec_for_representation(&orig, &recon, 4, Binning::Quantile).unwrap();
        let u = iec_for_representation(&orig, &recon, 4, Binning::Uniform).unwrap();
        assert_eq!(q.info_loss, u.info_loss);
        assert_ne!(q.kl, u.kl);
    }

    proptest! {
        #[test]
        fn kl_non_negative(
            pairs in prop::collection::vec((0u64..50, 0u64..50), 2..12),
        ) {
            let (p, q): (Vec<u64>, Vec<u64>) = pairs.into_iter().unzip();
            let kl = kl_divergence(&hist(&p), &hist(&q)).unwrap();
            prop_assert!(kl >= 0.0);
            if p == q {
                prop_assert!(kl == 0.0);
            }
        }

        #[test]
        fn iec_bounded_and_monotone(k in 0.0f64..=1.0, l1 in 0.0f64..=1.0, l2 in 0.0f64..=1.0) {
            let v = iec(k, l1).unwrap();
            prop_assert!((0.0..=1.0).contains(&v));
            if k > 0.0 && l1 < l2 {
                prop_assert!(v > iec(k, l2).unwrap());
            }
            prop_assert!((iec(k, 0.0).unwrap() - iec(k, 1.0).unwrap() - k / 2.0).abs() < 1e-15);
        }

        #[test]
        fn iec_affine_invariant(
            v in prop::collection::vec(-50.0f64..50.0, 4..120),
            scale in 0.01f64..100.0,
            shift in -1e3f64..1e3,
            a in 2usize..10,
        ) {
            let orig = Series::new(v.clone()).unwrap();
            let recon = Series::new(v.iter().map(|x| (x * 0.5).round()).collect()).unwrap();
            let moved = Series::new(v.iter().map(|x| x * scale + shift).collect()).unwrap();
            let m1 = iec_for_representation(&orig, &recon, a, Binning::Quantile).unwrap();
            let m2 = iec_for_representation(&moved, &recon, a, Binning::Quantile).unwrap();
            prop_assert!((m1.iec - m2.iec).abs() < 1e-9);
            prop_assert!((m1.info_loss - m2.info_loss).abs() < 1e-9);
        }
    }
}
