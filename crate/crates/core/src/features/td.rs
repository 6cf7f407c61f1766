//! Classical time-domain features (MAV, WL, ZC, SSC), kept as a baseline.

use crate::error::{MyoError, Result};

/// Zero-crossing and slope-sign thresholds default to this fraction of the
/// window RMS.
pub const RELATIVE_THRESHOLD: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeDomainFeatures {
    pub mav: f64,
    pub wl: f64,
    pub zc: usize,
    pub ssc: usize,
}

pub fn baseline_td(signal: &[f64]) -> Result<TimeDomainFeatures> {
    let rms = (signal.iter().map(|v| v * v).sum::<f64>() / signal.len().max(1) as f64).sqrt();
    baseline_td_with_threshold(signal, RELATIVE_THRESHOLD * rms)
}

/// A zero crossing needs a sign change whose step is at least `threshold`;
/// a slope-sign change needs a local extremum with at least one side step of
/// at least `threshold`. Both criteria scale linearly with amplitude.
pub fn baseline_td_with_threshold(signal: &[f64], threshold: f64) -> Result<TimeDomainFeatures> {
    if signal.len() < 3 {
        return Err(MyoError::WindowTooShort {
            len: signal.len(),
            min: 3,
        });
    }
    let mav = signal.iter().map(|v| v.abs()).sum::<f64>() / signal.len() as f64;
    let wl = signal.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    let zc = signal
        .windows(2)
        .filter(|w| w[0] * w[1] < 0.0 && (w[0] - w[1]).abs() >= threshold)
        .count();
    let ssc = signal
        .windows(3)
        .filter(|w| {
            let left = w[1] - w[0];
            let right = w[1] - w[2];
            left * right > 0.0 && left.abs().max(right.abs()) >= threshold
        })
        .count();
    Ok(TimeDomainFeatures { mav, wl, zc, ssc })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_signal() {
        let f = baseline_td_with_threshold(&[1.0, -1.0, 1.0, -1.0], 0.1).unwrap();
        assert_eq!(f, TimeDomainFeatures { mav: 1.0, wl: 6.0, zc: 3, ssc: 2 });
    }

    #[test]
    fn constant_signal() {
        let f = baseline_td(&[-0.75; 20]).unwrap();
        assert_eq!(f, TimeDomainFeatures { mav: 0.75, wl: 0.0, zc: 0, ssc: 0 });
    }

    #[test]
    fn threshold_suppresses_small_crossings() {
        let f = baseline_td_with_threshold(&[0.01, -0.01, 0.01, 5.0], 0.1).unwrap();
        assert_eq!(f.zc, 0);
    }

    #[test]
    fn scaling_with_threshold() {
        let x: Vec<f64> = (0..100).map(|i| ((i * 7919) % 17) as f64 - 8.0).collect();
        let a = 3.5;
        let scaled: Vec<f64> = x.iter().map(|v| v * a).collect();
        let f = baseline_td_with_threshold(&x, 0.5).unwrap();
        let g = baseline_td_with_threshold(&scaled, 0.5 * a).unwrap();
        assert!((g.mav - a * f.mav).abs() < 1e-12 * g.mav);
        assert!((g.wl - a * f.wl).abs() < 1e-12 * g.wl);
        assert_eq!((f.zc, f.ssc), (g.zc, g.ssc));
        // the default RMS-relative threshold scales on its own
        assert_eq!(
            (baseline_td(&x).unwrap().zc, baseline_td(&x).unwrap().ssc),
            (baseline_td(&scaled).unwrap().zc, baseline_td(&scaled).unwrap().ssc)
        );
    }
}
