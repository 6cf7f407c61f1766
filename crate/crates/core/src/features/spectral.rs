//! Frequency-domain route to the moments, used to cross-check the
//! time-domain implementation.
//!
//! The DFT treats the window as one period of a periodic signal, so the
//! spectral moments here are those of the *circular* differences. The
//! time-domain moments use linear differences, which drop the `n` terms that
//! wrap from the end of the window back to its start; [`wrap_energy`]
//! measures exactly those terms.

use std::f64::consts::PI;

use crate::error::{MyoError, Result};

/// Power spectrum `P[k] = |X[k]|^2 / L` by direct DFT.
pub fn power_spectrum(signal: &[f64]) -> Vec<f64> {
    let l = signal.len();
    let twiddles: Vec<(f64, f64)> = (0..l)
        .map(|m| {
            let phase = -2.0 * PI * m as f64 / l as f64;
            (phase.cos(), phase.sin())
        })
        .collect();
    (0..l)
        .map(|k| {
            let (mut re, mut im) = (0.0, 0.0);
            for (j, &x) in signal.iter().enumerate() {
                let (c, s) = twiddles[(j * k) % l];
                re += x * c;
                im += x * s;
            }
            (re * re + im * im) / l as f64
        })
        .collect()
}

/// `sqrt(sum_k w_k^n P[k])` with `w_k = 2 sin(pi k / L)`, the magnitude of
/// the backward difference's transfer function at bin `k`.
pub fn spectral_moment_oracle(signal: &[f64], n: usize) -> Result<f64> {
    if signal.len() < 3 {
        return Err(MyoError::WindowTooShort {
            len: signal.len(),
            min: 3,
        });
    }
    if !matches!(n, 0 | 2 | 4) {
        return Err(MyoError::UnsupportedOrder(n));
    }
    Ok(spectral_moment_from_power(&power_spectrum(signal), n))
}

/// Same as [`spectral_moment_oracle`], reusing a computed power spectrum.
pub fn spectral_moment_from_power(power: &[f64], n: usize) -> f64 {
    let l = power.len() as f64;
    power
        .iter()
        .enumerate()
        .map(|(k, p)| (2.0 * (PI * k as f64 / l).sin()).powi(n as i32) * p)
        .sum::<f64>()
        .sqrt()
}

/// Root-sum-square of the `n / 2` circular difference terms that wrap around
/// the window edge (zero for `n = 0`).
pub fn wrap_energy(signal: &[f64], n: usize) -> f64 {
    let l = signal.len();
    let at = |i: isize| signal[i.rem_euclid(l as isize) as usize];
    let terms: Vec<f64> = match n {
        2 => vec![at(0) - at(-1)],
        4 => (0..2)
            .map(|j| at(j) - 2.0 * at(j - 1) + at(j - 2))
            .collect(),
        _ => Vec::new(),
    };
    terms.iter().map(|t| t * t).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::moments;

    fn tone(freq_hz: f64, len: usize) -> Vec<f64> {
        (0..len)
            .map(|j| (2.0 * PI * freq_hz * j as f64 / 1000.0).sin())
            .collect()
    }

    #[test]
    fn parseval_on_small_window() {
        let x = [1.0, 2.0, 4.0, -3.0, 0.5];
        let p = power_spectrum(&x);
        let time: f64 = x.iter().map(|v| v * v).sum();
        let freq: f64 = p.iter().sum();
        assert!((time - freq).abs() <= 1e-12 * time);
    }

    #[test]
    fn zero_signal_has_zero_moments() {
        for n in [0, 2, 4] {
            assert_eq!(spectral_moment_oracle(&[0.0; 16], n).unwrap(), 0.0);
        }
    }

    #[test]
    fn odd_order_is_rejected() {
        assert!(matches!(
            spectral_moment_oracle(&[1.0; 8], 1),
            Err(MyoError::UnsupportedOrder(1))
        ));
        assert!(spectral_moment_oracle(&[1.0; 8], 3).is_err());
    }

    #[test]
    fn zeroth_moment_matches_time_domain() {
        let x: Vec<f64> = (0..50).map(|i| ((i * 37) % 11) as f64 - 5.0).collect();
        let m = moments(&x).unwrap();
        let s = spectral_moment_oracle(&x, 0).unwrap();
        assert!((m.m0 - s).abs() <= 1e-9 * m.m0);
    }

    #[test]
    fn higher_moments_match_after_wrap_correction() {
        let x: Vec<f64> = (0..64).map(|i| ((i * 29) % 13) as f64 * 0.3 - 2.0).collect();
        let m = moments(&x).unwrap();
        let p = power_spectrum(&x);
        for (n, linear) in [(2, m.m2), (4, m.m4)] {
            let circ = spectral_moment_from_power(&p, n);
            let rebuilt = (linear * linear + wrap_energy(&x, n).powi(2)).sqrt();
            assert!((rebuilt - circ).abs() <= 1e-9 * circ, "n={n}");
        }
    }

    #[test]
    fn zero_crossing_ratio_rises_with_tone_frequency() {
        // 200-sample windows hold an integer number of cycles for each tone
        let ratios: Vec<f64> = [25.0, 100.0, 200.0]
            .iter()
            .map(|&f| {
                let x = tone(f, 200);
                let m0 = spectral_moment_oracle(&x, 0).unwrap();
                spectral_moment_oracle(&x, 2).unwrap() / m0
            })
            .collect();
        assert!(ratios.windows(2).all(|w| w[0] < w[1]), "{ratios:?}");
    }
}
