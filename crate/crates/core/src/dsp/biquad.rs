//! Second-order-section IIR filters: Butterworth band-pass and notch design
//! via the bilinear transform, plus a stateful multi-channel cascade.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::Complex;

use crate::error::{MyoError, Result};

/// Upper edges at or above this fraction of the sample rate are clamped.
pub const NYQUIST_CLAMP: f64 = 0.495;

/// One second-order section, `H(z) = (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Biquad {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Biquad {
    /// Stability triangle: both poles strictly inside the unit circle.
    pub fn is_stable(&self) -> bool {
        self.a2.abs() < 1.0 && self.a1.abs() < 1.0 + self.a2
    }

    pub fn poles(&self) -> [Complex<f64>; 2] {
        let disc = Complex::new(self.a1 * self.a1 - 4.0 * self.a2, 0.0).sqrt();
        let a1 = Complex::new(self.a1, 0.0);
        [(-a1 + disc) * 0.5, (-a1 - disc) * 0.5]
    }

    /// Evaluates the section at `z = e^{j omega}`.
    pub fn response(&self, omega: f64) -> Complex<f64> {
        let z1 = Complex::from_polar(1.0, -omega);
        let z2 = z1 * z1;
        let num = z1 * self.b1 + z2 * self.b2 + self.b0;
        let den = z1 * self.a1 + z2 * self.a2 + 1.0;
        num / den
    }

    fn scaled(self, g: f64) -> Self {
        Self {
            b0: self.b0 * g,
            b1: self.b1 * g,
            b2: self.b2 * g,
            ..self
        }
    }
}

/// Raised when a requested band edge had to be pulled below Nyquist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampWarning {
    pub requested_hz: f64,
    pub applied_hz: f64,
}

#[derive(Debug, Clone)]
pub struct BandpassDesign {
    pub cascade: BiquadCascade,
    pub warning: Option<ClampWarning>,
}

/// Cascade of second-order sections with transposed direct-form II state
/// for every channel (two registers per section per channel).
#[derive(Debug, Clone, PartialEq)]
pub struct BiquadCascade {
    sections: Vec<Biquad>,
    channels: usize,
    state: Vec<f64>,
}

impl BiquadCascade {
    pub fn new(sections: Vec<Biquad>, channels: usize) -> Result<Self> {
        if channels == 0 {
            return Err(MyoError::Config("channel count must be at least 1".into()));
        }
        if let Some(i) = sections.iter().position(|s| !s.is_stable()) {
            return Err(MyoError::Config(format!("section {i} is unstable")));
        }
        let state = vec![0.0; 2 * sections.len() * channels];
        Ok(Self {
            sections,
            channels,
            state,
        })
    }

    pub fn sections(&self) -> &[Biquad] {
        &self.sections
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn state_len(&self) -> usize {
        self.state.len()
    }

    /// Same coefficients, fresh zeroed state sized for `channels`.
    pub fn for_channels(&self, channels: usize) -> Result<Self> {
        Self::new(self.sections.clone(), channels)
    }

    /// Appends the sections of `other` after ours; state is reset.
    pub fn chain(&self, other: &BiquadCascade) -> Result<Self> {
        let mut sections = self.sections.clone();
        sections.extend_from_slice(&other.sections);
        Self::new(sections, self.channels)
    }

    pub fn reset(&mut self) {
        self.state.iter_mut().for_each(|s| *s = 0.0);
    }

    /// Filters one sample on one channel, advancing that channel's state.
    #[inline]
    pub fn process_sample(&mut self, channel: usize, x: f64) -> f64 {
        let n = self.sections.len();
        let state = &mut self.state[2 * n * channel..2 * n * (channel + 1)];
        let mut v = x;
        for (s, reg) in self.sections.iter().zip(state.chunks_exact_mut(2)) {
            let y = s.b0 * v + reg[0];
            reg[0] = s.b1 * v - s.a1 * y + reg[1];
            reg[1] = s.b2 * v - s.a2 * y;
            v = y;
        }
        v
    }

    /// Filters one frame (one sample per channel) in place.
    pub fn process_frame(&mut self, frame: &mut [f64]) -> Result<()> {
        if frame.len() != self.channels {
            return Err(MyoError::Dimension {
                expected: self.channels,
                got: frame.len(),
            });
        }
        for (ch, x) in frame.iter_mut().enumerate() {
            *x = self.process_sample(ch, *x);
        }
        Ok(())
    }

    /// Filters a whole single-channel sequence from the current state.
    pub fn process_channel(&mut self, channel: usize, input: &[f64]) -> Vec<f64> {
        input
            .iter()
            .map(|&x| self.process_sample(channel, x))
            .collect()
    }

    pub fn response_at(&self, freq_hz: f64, sample_rate: f64) -> Complex<f64> {
        let omega = 2.0 * PI * freq_hz / sample_rate;
        self.sections
            .iter()
            .fold(Complex::new(1.0, 0.0), |acc, s| acc * s.response(omega))
    }

    pub fn magnitude_db(&self, freq_hz: f64, sample_rate: f64) -> f64 {
        20.0 * self.response_at(freq_hz, sample_rate).norm().log10()
    }

    pub fn poles(&self) -> Vec<Complex<f64>> {
        self.sections.iter().flat_map(|s| s.poles()).collect()
    }

    /// Coefficients as text, one section per line, 12 significant digits.
    pub fn dump(&self, name: &str) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            let _ = writeln!(
                out,
                "{name} {i} b0={:.11e} b1={:.11e} b2={:.11e} a1={:.11e} a2={:.11e}",
                s.b0, s.b1, s.b2, s.a1, s.a2
            );
        }
        out
    }
}

fn bilinear(s: Complex<f64>, sample_rate: f64) -> Complex<f64> {
    let k = Complex::new(2.0 * sample_rate, 0.0);
    (k + s) / (k - s)
}

fn prewarp(freq_hz: f64, sample_rate: f64) -> f64 {
    2.0 * sample_rate * (PI * freq_hz / sample_rate).tan()
}

/// Butterworth band-pass of the given order as `order` second-order sections,
/// each carrying one zero at DC and one at Nyquist. Unit gain at the
/// (prewarped) geometric centre frequency.
pub fn design_bandpass(
    sample_rate: f64,
    low_hz: f64,
    high_hz: f64,
    order: usize,
) -> Result<BandpassDesign> {
    if !(sample_rate > 0.0) {
        return Err(MyoError::Config(format!(
            "sample rate must be positive, got {sample_rate}"
        )));
    }
    if order == 0 {
        return Err(MyoError::Config("band-pass order must be at least 1".into()));
    }
    if !(low_hz > 0.0) || !(high_hz > low_hz) {
        return Err(MyoError::Config(format!(
            "invalid band edges {low_hz}..{high_hz} Hz"
        )));
    }

    let mut warning = None;
    let mut high = high_hz;
    if high >= 0.5 * sample_rate {
        high = NYQUIST_CLAMP * sample_rate;
        log::warn!(
            "band-pass upper edge {high_hz} Hz is at or above Nyquist; clamped to {high} Hz"
        );
        warning = Some(ClampWarning {
            requested_hz: high_hz,
            applied_hz: high,
        });
    }
    if low_hz >= high {
        return Err(MyoError::Config(format!(
            "band-pass lower edge {low_hz} Hz is not below the upper edge {high} Hz"
        )));
    }

    let w_lo = prewarp(low_hz, sample_rate);
    let w_hi = prewarp(high, sample_rate);
    let bw = w_hi - w_lo;
    let w0_sq = w_lo * w_hi;

    let mut sections = Vec::with_capacity(order);
    let dc_nyquist_zeros = Biquad {
        b0: 1.0,
        b1: 0.0,
        b2: -1.0,
        a1: 0.0,
        a2: 0.0,
    };
    for k in 0..order {
        let theta = PI * (2 * k + order + 1) as f64 / (2 * order) as f64;
        let proto = Complex::from_polar(1.0, theta);
        // Conjugate prototype poles produce the conjugate band-pass poles.
        if proto.im < -1e-12 {
            continue;
        }
        let half = proto * (bw / 2.0);
        let disc = (half * half - w0_sq).sqrt();
        let z1 = bilinear(half + disc, sample_rate);
        let z2 = bilinear(half - disc, sample_rate);
        if proto.im > 1e-12 {
            for z in [z1, z2] {
                sections.push(Biquad {
                    a1: -2.0 * z.re,
                    a2: z.norm_sqr(),
                    ..dc_nyquist_zeros
                });
            }
        } else {
            sections.push(Biquad {
                a1: -(z1 + z2).re,
                a2: (z1 * z2).re,
                ..dc_nyquist_zeros
            });
        }
    }
    debug_assert_eq!(sections.len(), order);

    let center = 2.0 * (w0_sq.sqrt() / (2.0 * sample_rate)).atan();
    let gain = sections
        .iter()
        .fold(1.0, |acc, s| acc * s.response(center).norm());
    let per_section = gain.recip().powf(1.0 / order as f64);
    let sections = sections.into_iter().map(|s| s.scaled(per_section)).collect();

    Ok(BandpassDesign {
        cascade: BiquadCascade::new(sections, 1)?,
        warning,
    })
}

/// Second-order notch with its zero pair on the unit circle at `center_hz`.
pub fn design_notch(sample_rate: f64, center_hz: f64, q: f64) -> Result<BiquadCascade> {
    if !(center_hz > 0.0) || !(center_hz < 0.5 * sample_rate) {
        return Err(MyoError::Config(format!(
            "notch centre {center_hz} Hz must lie strictly between 0 and {} Hz",
            0.5 * sample_rate
        )));
    }
    if !(q > 0.0) {
        return Err(MyoError::Config(format!("notch q must be positive, got {q}")));
    }
    let w0 = 2.0 * PI * center_hz / sample_rate;
    let alpha = w0.sin() / (2.0 * q);
    let a0 = 1.0 + alpha;
    let cos = w0.cos();
    let section = Biquad {
        b0: 1.0 / a0,
        b1: -2.0 * cos / a0,
        b2: 1.0 / a0,
        a1: -2.0 * cos / a0,
        a2: (1.0 - alpha) / a0,
    };
    BiquadCascade::new(vec![section], 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bandpass_has_exact_dc_zero() {
        let d = design_bandpass(1000.0, 10.0, 450.0, 3).unwrap();
        assert!(d.warning.is_none());
        assert_eq!(d.cascade.sections().len(), 3);
        assert_eq!(d.cascade.response_at(0.0, 1000.0).norm(), 0.0);
    }

    #[test]
    fn bandpass_passband_within_one_db() {
        let d = design_bandpass(1000.0, 10.0, 450.0, 3).unwrap();
        for f in [50.0, 100.0, 200.0, 300.0] {
            let db = d.cascade.magnitude_db(f, 1000.0);
            assert!(db.abs() <= 1.0, "{f} Hz: {db} dB");
        }
    }

    #[test]
    fn bandpass_edges_are_minus_three_db() {
        let d = design_bandpass(1000.0, 20.0, 200.0, 4).unwrap();
        for f in [20.0, 200.0] {
            let db = d.cascade.magnitude_db(f, 1000.0);
            assert!((db + 3.0103).abs() < 0.01, "{f} Hz: {db} dB");
        }
    }

    #[test]
    fn bandpass_rolls_off_monotonically_outside_band() {
        let d = design_bandpass(1000.0, 10.0, 450.0, 3).unwrap();
        let below: Vec<f64> = (1..10)
            .map(|f| d.cascade.magnitude_db(f as f64, 1000.0))
            .collect();
        assert!(below.windows(2).all(|w| w[0] < w[1]));
        let above: Vec<f64> = (451..500)
            .map(|f| d.cascade.magnitude_db(f as f64, 1000.0))
            .collect();
        assert!(above.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn upper_edge_at_nyquist_is_clamped() {
        let d = design_bandpass(1000.0, 10.0, 600.0, 3).unwrap();
        let w = d.warning.expect("clamp warning");
        assert_eq!(w.requested_hz, 600.0);
        assert_eq!(w.applied_hz, 495.0);
        let d = design_bandpass(1000.0, 10.0, 500.0, 3).unwrap();
        assert_eq!(d.warning.unwrap().applied_hz, 495.0);
    }

    #[test]
    fn bandpass_rejects_bad_edges() {
        assert!(design_bandpass(1000.0, 100.0, 50.0, 3).is_err());
        assert!(design_bandpass(1000.0, 0.0, 50.0, 3).is_err());
        assert!(design_bandpass(1000.0, -5.0, 50.0, 3).is_err());
        assert!(design_bandpass(1000.0, 10.0, 450.0, 0).is_err());
        assert!(design_bandpass(1000.0, 496.0, 600.0, 2).is_err());
    }

    #[test]
    fn every_designed_pole_is_inside_unit_circle() {
        for order in 1..=6 {
            for (lo, hi) in [(10.0, 450.0), (20.0, 150.0), (1.0, 499.0), (100.0, 110.0)] {
                let d = design_bandpass(1000.0, lo, hi, order).unwrap();
                for p in d.cascade.poles() {
                    assert!(p.norm() < 1.0, "order {order} {lo}-{hi}: |p| = {}", p.norm());
                }
            }
        }
    }

    #[test]
    fn notch_nulls_centre_and_passes_elsewhere() {
        let n = design_notch(1000.0, 50.0, 30.0).unwrap();
        assert!(n.response_at(50.0, 1000.0).norm() < 1e-12);
        assert!(n.magnitude_db(0.0, 1000.0).abs() <= 0.5);
        assert!(n.magnitude_db(250.0, 1000.0).abs() <= 0.5);
        let s = n.sections()[0];
        assert_eq!(s.b0, s.b2);
    }

    #[test]
    fn notch_rejects_out_of_range_centre() {
        assert!(design_notch(1000.0, 500.0, 30.0).is_err());
        assert!(design_notch(1000.0, 0.0, 30.0).is_err());
        assert!(design_notch(1000.0, 50.0, 0.0).is_err());
    }

    #[test]
    fn frame_width_must_match_channels() {
        let mut c = design_notch(1000.0, 50.0, 30.0)
            .unwrap()
            .for_channels(4)
            .unwrap();
        assert_eq!(c.state_len(), 2 * 1 * 4);
        let mut frame = [0.0; 3];
        assert!(matches!(
            c.process_frame(&mut frame),
            Err(MyoError::Dimension { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn zero_in_zero_out() {
        let bp = design_bandpass(1000.0, 10.0, 450.0, 3).unwrap().cascade;
        let notch = design_notch(1000.0, 50.0, 30.0).unwrap();
        let mut c = bp.chain(&notch).unwrap().for_channels(2).unwrap();
        for _ in 0..500 {
            let mut f = [0.0, 0.0];
            c.process_frame(&mut f).unwrap();
            assert_eq!(f, [0.0, 0.0]);
        }
    }

    #[test]
    fn dump_prints_one_line_per_section() {
        let bp = design_bandpass(1000.0, 10.0, 450.0, 3).unwrap().cascade;
        let text = bp.dump("bandpass");
        assert_eq!(text.lines().count(), 3);
        let first = text.lines().next().unwrap();
        let b0 = first.split_whitespace().nth(2).unwrap();
        // mantissa carries 12 significant digits: d.ddddddddddd
        let mantissa = b0.trim_start_matches("b0=").split('e').next().unwrap();
        assert_eq!(mantissa.trim_start_matches('-').len(), 13);
    }
}
