//! Seeded synthetic EMG: per class and channel, band-limited Gaussian noise
//! scaled by an activation amplitude and a trapezoidal envelope, plus a white
//! noise floor everywhere.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dsp::{design_bandpass, BiquadCascade};
use crate::error::{MyoError, Result};
use crate::label::{standard_labels, MotionLabel};
use crate::session::recording::{Recording, Trial};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub rise_ms: f64,
    pub hold_ms: f64,
    pub fall_ms: f64,
}

impl Envelope {
    pub fn total_ms(&self) -> f64 {
        self.rise_ms + self.hold_ms + self.fall_ms
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub seed: u64,
    pub sample_rate: u32,
    pub classes: Vec<MotionLabel>,
    /// `amp_matrix[class][channel]`, non-negative.
    pub amp_matrix: Vec<Vec<f64>>,
    /// Excitation band in Hz.
    pub band: (f64, f64),
    pub envelope: Envelope,
    pub noise_floor: f64,
    pub trials_per_class: usize,
    /// Silence (noise floor only) before every trial.
    pub gap_ms: f64,
    /// Standard deviation of the log of a per-trial, per-channel gain that
    /// multiplies the amplitude row. Zero repeats every trial exactly.
    pub trial_jitter: f64,
}

/// Activation level of a driven channel and of the remaining channels.
const ACTIVE: f64 = 1.0;
const IDLE: f64 = 0.1;
const REST: f64 = 0.03;
const TRIAL_JITTER: f64 = 0.4;

/// Channels driven by each of the eleven motions, in standard label order.
const MOTION_CHANNELS: [&[usize]; 11] = [
    &[0, 1],
    &[2, 3],
    &[4, 5],
    &[6, 7],
    &[0, 2],
    &[1, 3],
    &[4, 6],
    &[5, 7],
    &[0, 4],
    &[2, 6],
    &[1, 5],
];

impl SynthSpec {
    /// Twelve standard labels on eight channels: rest is uniformly quiet and
    /// every motion drives its own pair of channels.
    pub fn standard(seed: u64) -> Self {
        let channels = 8;
        let mut amp_matrix = vec![vec![REST; channels]];
        for active in MOTION_CHANNELS {
            amp_matrix.push(
                (0..channels)
                    .map(|ch| if active.contains(&ch) { ACTIVE } else { IDLE })
                    .collect(),
            );
        }
        Self {
            seed,
            sample_rate: 1000,
            classes: standard_labels(),
            amp_matrix,
            band: (20.0, 150.0),
            envelope: Envelope {
                rise_ms: 100.0,
                hold_ms: 2800.0,
                fall_ms: 100.0,
            },
            noise_floor: 0.005,
            trials_per_class: 30,
            gap_ms: 500.0,
            trial_jitter: TRIAL_JITTER,
        }
    }

    pub fn channel_count(&self) -> usize {
        self.amp_matrix.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_rate == 0 {
            return Err(MyoError::Config("sample rate must be positive".into()));
        }
        if self.classes.is_empty() || self.amp_matrix.len() != self.classes.len() {
            return Err(MyoError::Config(format!(
                "{} classes but {} amplitude rows",
                self.classes.len(),
                self.amp_matrix.len()
            )));
        }
        let channels = self.channel_count();
        if channels == 0 || self.amp_matrix.iter().any(|r| r.len() != channels) {
            return Err(MyoError::Config("amplitude rows must share one non-zero width".into()));
        }
        if self.amp_matrix.iter().flatten().any(|a| !(a.is_finite() && *a >= 0.0)) {
            return Err(MyoError::Config("amplitudes must be finite and non-negative".into()));
        }
        let nyquist = 0.5 * self.sample_rate as f64;
        let (lo, hi) = self.band;
        if !(lo > 0.0 && lo < hi && hi < nyquist) {
            return Err(MyoError::Config(format!(
                "excitation band {lo}..{hi} Hz must lie inside (0, {nyquist})"
            )));
        }
        let e = &self.envelope;
        if [e.rise_ms, e.hold_ms, e.fall_ms, self.gap_ms]
            .iter()
            .any(|v| !(v.is_finite() && *v >= 0.0))
            || e.total_ms() <= 0.0
        {
            return Err(MyoError::Config("envelope durations must be non-negative with a positive total".into()));
        }
        if !(self.trial_jitter.is_finite() && self.trial_jitter >= 0.0) {
            return Err(MyoError::Config("trial jitter must be non-negative".into()));
        }
        if !(self.noise_floor.is_finite() && self.noise_floor >= 0.0) {
            return Err(MyoError::Config("noise floor must be non-negative".into()));
        }
        for (i, a) in self.amp_matrix.iter().enumerate() {
            if self.amp_matrix[..i].contains(a) {
                log::warn!(
                    "classes {} and {} have identical amplitude rows and cannot be told apart",
                    self.classes[self.amp_matrix[..i].iter().position(|b| b == a).unwrap_or(0)],
                    self.classes[i]
                );
            }
        }
        Ok(())
    }

    fn samples(&self, ms: f64) -> usize {
        (ms * self.sample_rate as f64 / 1000.0).round() as usize
    }

    fn envelope_at(&self, i: usize) -> f64 {
        let rise = self.samples(self.envelope.rise_ms);
        let hold = self.samples(self.envelope.hold_ms);
        let fall = self.samples(self.envelope.fall_ms);
        if i < rise {
            (i as f64 + 0.5) / rise as f64
        } else if i < rise + hold {
            1.0
        } else {
            let k = i - rise - hold;
            1.0 - (k as f64 + 0.5) / fall as f64
        }
    }
}

/// Generates `trials_per_class` trials of every class, class by class, each
/// preceded by a gap.
pub fn synth_generate(spec: &SynthSpec) -> Result<Recording> {
    spec.validate()?;
    let fs = spec.sample_rate as f64;
    let channels = spec.channel_count();
    let gap = spec.samples(spec.gap_ms);
    let trial_len = spec.samples(spec.envelope.total_ms());

    let mut trials = Vec::with_capacity(spec.classes.len() * spec.trials_per_class);
    let mut cursor = 0;
    for (class, label) in spec.classes.iter().enumerate() {
        for _ in 0..spec.trials_per_class {
            cursor += gap;
            trials.push((class, Trial { start: cursor, end: cursor + trial_len, label: label.clone() }));
            cursor += trial_len;
        }
    }
    let total = cursor + gap;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    // per-trial channel amplitudes, then a per-sample envelope and trial index
    let trial_amps: Vec<Vec<f64>> = trials
        .iter()
        .map(|(class, _)| {
            spec.amp_matrix[*class]
                .iter()
                .map(|a| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    a * (spec.trial_jitter * z).exp()
                })
                .collect()
        })
        .collect();
    let mut gain = vec![0.0f64; total];
    let mut trial_of = vec![usize::MAX; total];
    for (k, (_, t)) in trials.iter().enumerate() {
        for i in t.start..t.end {
            gain[i] = spec.envelope_at(i - t.start);
            trial_of[i] = k;
        }
    }

    let shaping = design_bandpass(fs, spec.band.0, spec.band.1, 2)?.cascade;
    let norm = noise_gain(&shaping).recip();
    let mut samples = Vec::with_capacity(channels);
    for ch in 0..channels {
        let mut filter = shaping.for_channels(1)?;
        let mut out = Vec::with_capacity(total);
        for i in 0..total {
            let drive: f64 = StandardNormal.sample(&mut rng);
            let floor: f64 = StandardNormal.sample(&mut rng);
            let excitation = filter.process_sample(0, drive) * norm;
            let amp = if trial_of[i] == usize::MAX {
                0.0
            } else {
                trial_amps[trial_of[i]][ch] * gain[i]
            };
            out.push((amp * excitation + spec.noise_floor * floor) as f32);
        }
        samples.push(out);
    }
    let rec = Recording {
        sample_rate: spec.sample_rate,
        samples,
        trials: trials.into_iter().map(|(_, t)| t).collect(),
    };
    rec.validate()?;
    Ok(rec)
}

/// RMS gain of the filter for unit white noise.
fn noise_gain(filter: &BiquadCascade) -> f64 {
    let mut f = filter.for_channels(1).expect("one channel");
    let mut energy = 0.0;
    for i in 0..1 << 14 {
        let h = f.process_sample(0, if i == 0 { 1.0 } else { 0.0 });
        energy += h * h;
    }
    energy.sqrt()
}
