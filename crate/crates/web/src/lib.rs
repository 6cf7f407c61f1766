//! Browser bindings: filter response plots, a feature explorer on generated
//! signals, and a two-dimensional LDA playground.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use wasm_bindgen::prelude::*;

use myo_core::dsp::{design_bandpass, design_notch, BandpassSpec, NotchSpec, StreamConfig};
use myo_core::features::{atdm, AtdmFeatures};
use myo_core::label::MotionLabel;
use myo_core::lda::{fit_class, ClassModel, PooledModel, Pooling};

fn stream(sample_rate: f64, low: f64, high: f64, order: usize, notch_hz: f64, notch_q: f64) -> StreamConfig {
    StreamConfig {
        sample_rate: sample_rate as u32,
        bandpass: BandpassSpec { low_hz: low, high_hz: high, order },
        notch: NotchSpec { center_hz: notch_hz, q: notch_q },
        ..StreamConfig::default()
    }
}

/// Gain in dB of the band-pass alone, the notch alone and both, at `points`
/// frequencies from 0 to Nyquist. Returned as three consecutive blocks.
pub fn response_db(
    sample_rate: f64,
    low: f64,
    high: f64,
    order: usize,
    notch_hz: f64,
    notch_q: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let config = stream(sample_rate, low, high, order, notch_hz, notch_q);
    let bp = design_bandpass(sample_rate, low, high, order).map_err(|e| e.to_string())?;
    let notch = design_notch(sample_rate, notch_hz, notch_q).map_err(|e| e.to_string())?;
    let both = config.filter_bank().map_err(|e| e.to_string())?;
    let freqs = frequency_grid(sample_rate, points);
    let mut out = Vec::with_capacity(3 * points);
    for filter in [&bp.cascade, &notch, &both] {
        // floor keeps exact zeros plottable
        out.extend(freqs.iter().map(|&f| filter.magnitude_db(f, sample_rate).max(-120.0)));
    }
    Ok(out)
}

pub fn frequency_grid(sample_rate: f64, points: usize) -> Vec<f64> {
    let nyquist = 0.5 * sample_rate;
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n).map(|i| nyquist * i as f64 / (n - 1) as f64).collect(),
    }
}

#[wasm_bindgen]
pub fn filter_response(
    sample_rate: f64,
    low: f64,
    high: f64,
    order: usize,
    notch_hz: f64,
    notch_q: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    response_db(sample_rate, low, high, order, notch_hz, notch_q, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn filter_frequencies(sample_rate: f64, points: usize) -> Vec<f64> {
    frequency_grid(sample_rate, points)
}

/// Designed coefficients, one section per line.
#[wasm_bindgen]
pub fn filter_coefficients(
    sample_rate: f64,
    low: f64,
    high: f64,
    order: usize,
    notch_hz: f64,
    notch_q: f64,
) -> Result<String, JsError> {
    stream(sample_rate, low, high, order, notch_hz, notch_q)
        .dump_filters()
        .map_err(|e| JsError::new(&e.to_string()))
}

/// A generated window and its features.
#[wasm_bindgen]
pub struct AtdmSample {
    signal: Vec<f64>,
    features: [f64; 4],
    degenerate: bool,
}

#[wasm_bindgen]
impl AtdmSample {
    pub fn signal(&self) -> Vec<f64> {
        self.signal.clone()
    }

    /// `[pap, zcap, mwl, dbm]`
    pub fn features(&self) -> Vec<f64> {
        self.features.to_vec()
    }

    pub fn degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn feature_names() -> Vec<String> {
        AtdmFeatures::NAMES.iter().map(|s| s.to_string()).collect()
    }
}

/// `amplitude * sin(2 pi tone t) + noise * N(0, 1)` sampled at 1 kHz.
pub fn generate_window(amplitude: f64, tone_hz: f64, noise: f64, seed: u64, len: usize) -> Result<AtdmSample, String> {
    let gauss = Normal::new(0.0, noise.abs()).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signal: Vec<f64> = (0..len)
        .map(|i| {
            let t = i as f64 / 1000.0;
            amplitude * (2.0 * std::f64::consts::PI * tone_hz * t).sin() + gauss.sample(&mut rng)
        })
        .collect();
    let f = atdm(&signal).map_err(|e| e.to_string())?;
    Ok(AtdmSample {
        features: f.as_array(),
        degenerate: f.degenerate,
        signal,
    })
}

#[wasm_bindgen]
pub fn atdm_explore(amplitude: f64, tone_hz: f64, noise: f64, seed: u64, len: usize) -> Result<AtdmSample, JsError> {
    generate_window(amplitude, tone_hz, noise, seed, len).map_err(|e| JsError::new(&e))
}

/// Two-dimensional classes added one at a time to a pooled LDA.
#[wasm_bindgen]
#[derive(Default)]
pub struct LdaPlayground {
    points: Vec<[f64; 2]>,
    owners: Vec<u16>,
    pending: Option<ClassModel>,
    model: Option<PooledModel>,
    next_id: u16,
}

#[wasm_bindgen]
impl LdaPlayground {
    #[wasm_bindgen(constructor)]
    pub fn new() -> Self {
        Self::default()
    }

    /// Draws `n` Gaussian points around `(cx, cy)` and folds them in as a
    /// new class. Returns the class id.
    pub fn add_class(&mut self, cx: f64, cy: f64, spread: f64, n: usize, seed: u64) -> Result<u16, JsError> {
        self.try_add_class(cx, cy, spread, n, seed).map_err(|e| JsError::new(&e))
    }

    pub fn class_count(&self) -> usize {
        self.next_id as usize
    }

    /// Flat `[x0, y0, x1, y1, ...]`.
    pub fn points(&self) -> Vec<f64> {
        self.points.iter().flatten().copied().collect()
    }

    pub fn point_classes(&self) -> Vec<u16> {
        self.owners.clone()
    }

    /// Predicted class id on an `nx * ny` grid, row by row from `y0`.
    pub fn decision_map(&self, x0: f64, x1: f64, y0: f64, y1: f64, nx: usize, ny: usize) -> Vec<u16> {
        let step = |a: f64, b: f64, n: usize, i: usize| a + (b - a) * (i as f64 + 0.5) / n.max(1) as f64;
        let mut out = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                out.push(self.classify(step(x0, x1, nx, i), step(y0, y1, ny, j)));
            }
        }
        out
    }

    pub fn classify(&self, x: f64, y: f64) -> u16 {
        match &self.model {
            Some(m) => m.predict(&[x, y]).map(|l| l.id).unwrap_or(0),
            None => 0,
        }
    }

    /// Pooled covariance `[xx, xy, yx, yy]`, empty before two classes exist.
    pub fn pooled_cov(&self) -> Vec<f64> {
        self.model
            .as_ref()
            .map(|m| m.pooled_cov().transpose().iter().copied().collect())
            .unwrap_or_default()
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }
}

impl LdaPlayground {
    pub fn try_add_class(&mut self, cx: f64, cy: f64, spread: f64, n: usize, seed: u64) -> Result<u16, String> {
        let gauss = Normal::new(0.0, spread).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|_| [cx + gauss.sample(&mut rng), cy + gauss.sample(&mut rng)])
            .collect();
        let id = self.next_id;
        let class = fit_class(&pts, MotionLabel::new(id, format!("class {id}"))).map_err(|e| e.to_string())?;
        self.model = match (self.model.take(), self.pending.take()) {
            (Some(m), _) => Some(m.add_class(class).map_err(|e| e.to_string())?),
            (None, Some(first)) => Some(PooledModel::build(vec![first, class], Pooling::Sum).map_err(|e| e.to_string())?),
            (None, None) => {
                self.pending = Some(class);
                None
            }
        };
        self.owners.extend(std::iter::repeat_n(id, pts.len()));
        self.points.extend(pts);
        self.next_id += 1;
        Ok(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn response_blocks_have_expected_shape() {
        let r = response_db(1000.0, 10.0, 450.0, 3, 50.0, 30.0, 101).unwrap();
        assert_eq!(r.len(), 303);
        // DC is floored, 50 Hz is notched in the combined response only
        assert_eq!(r[0], -120.0);
        assert!(r[5].abs() < 1.0);
        assert!(r[202 + 10] < -30.0);
        assert!(r[20].abs() < 1.0);
        assert!(response_db(1000.0, 300.0, 100.0, 3, 50.0, 30.0, 10).is_err());
    }

    #[test]
    fn grid_spans_zero_to_nyquist() {
        let g = frequency_grid(1000.0, 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 500.0);
        assert!(frequency_grid(1000.0, 0).is_empty());
    }

    #[test]
    fn explorer_is_seeded() {
        let a = generate_window(1.0, 40.0, 0.2, 3, 200).unwrap();
        let b = generate_window(1.0, 40.0, 0.2, 3, 200).unwrap();
        assert_eq!(a.signal, b.signal);
        assert_eq!(a.features, b.features);
        assert!(!a.degenerate);
        let quiet = generate_window(0.0, 40.0, 0.0, 3, 200).unwrap();
        assert!(quiet.degenerate);
        // faster tone, more zero crossings, smaller zcap
        let fast = generate_window(1.0, 200.0, 0.0, 3, 200).unwrap();
        let slow = generate_window(1.0, 20.0, 0.0, 3, 200).unwrap();
        assert!(fast.features[1] < slow.features[1]);
    }

    #[test]
    fn playground_grows_one_class_at_a_time() {
        let mut p = LdaPlayground::new();
        assert_eq!(p.try_add_class(-3.0, 0.0, 0.5, 40, 1).unwrap(), 0);
        assert!(p.pooled_cov().is_empty());
        assert_eq!(p.try_add_class(3.0, 0.0, 0.5, 40, 2).unwrap(), 1);
        assert_eq!(p.classify(-3.0, 0.0), 0);
        assert_eq!(p.classify(3.0, 0.0), 1);
        let before = p.pooled_cov();
        p.try_add_class(0.0, 4.0, 0.5, 40, 3).unwrap();
        assert_eq!(p.classify(0.0, 4.0), 2);
        assert_ne!(p.pooled_cov(), before);
        let map = p.decision_map(-5.0, 5.0, -5.0, 5.0, 20, 10);
        assert_eq!(map.len(), 200);
        assert!(map.iter().all(|&c| c < 3));
        assert_eq!(p.points().len(), 240);
        assert_eq!(p.point_classes().len(), 120);
        assert!(p.try_add_class(0.0, 0.0, 1.0, 1, 4).is_err());
        p.reset();
        assert_eq!(p.class_count(), 0);
    }
}
