//! Session replay: a recording is filtered once, cut into windows trial by
//! trial, and the resulting feature vectors drive train, add and test phases.

use std::time::Instant;

use serde::Serialize;

use crate::dsp::{RingBuffer, StreamConfig, Window};
use crate::error::{MyoError, Result};
use crate::eval::{
    confusion, percentile, Calibration, ConfusionMatrix, EfficacyMode, TrialReport, WindowOutcome,
    CALIBRATION_PERCENTILE,
};
use crate::features::{feature_vector, FeatureVector};
use crate::label::MotionLabel;
use crate::lda::{fit_class, ClassModel, PooledModel, Pooling};
use crate::session::recording::{Recording, Trial};
use crate::session::script::{Phase, SessionScript};

/// Windows of one trial, reduced to what the session needs.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialFeatures {
    pub trial: Trial,
    pub vectors: Vec<FeatureVector>,
    /// Mean absolute amplitude of each window, for the speed estimate.
    pub amplitudes: Vec<f64>,
}

/// Every trial of a recording, in recording order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet {
    pub trials: Vec<TrialFeatures>,
    labels: Vec<MotionLabel>,
}

impl FeatureSet {
    /// Filters the whole recording continuously (filter state carries across
    /// trial boundaries) and cuts windows aligned to each trial start.
    /// Window start indices are absolute sample positions.
    pub fn extract(recording: &Recording, config: &StreamConfig) -> Result<Self> {
        check_compatible(recording, config)?;
        let mut filters = config.filter_bank()?;
        let mut frame = vec![0.0; config.channel_count];
        let mut trials: Vec<TrialFeatures> = Vec::with_capacity(recording.trials.len());
        let mut next = recording.trials.iter().peekable();
        let mut active: Option<(&Trial, RingBuffer, TrialFeatures)> = None;

        for i in 0..recording.len() {
            recording.frame(i, &mut frame);
            filters.process_frame(&mut frame)?;

            if active.is_none() {
                if let Some(t) = next.next_if(|t| t.start == i) {
                    let mut ring = config.ring_buffer()?;
                    ring.set_label(Some(t.label.clone()));
                    let tf = TrialFeatures {
                        trial: t.clone(),
                        vectors: Vec::new(),
                        amplitudes: Vec::new(),
                    };
                    active = Some((t, ring, tf));
                }
            }
            if let Some((t, ring, tf)) = active.as_mut() {
                ring.push_frame(&frame)?;
                while let Some(mut w) = ring.next_window() {
                    w.start_index += t.start as u64;
                    tf.amplitudes.push(w.mean_abs());
                    tf.vectors.push(feature_vector(&w)?);
                }
                if i + 1 == t.end {
                    let (_, _, tf) = active.take().expect("active trial");
                    trials.push(tf);
                }
            }
        }
        for tf in &trials {
            if tf.vectors.is_empty() {
                log::warn!(
                    "trial {}..{} ({}) is shorter than one window",
                    tf.trial.start,
                    tf.trial.end,
                    tf.trial.label
                );
            }
        }
        Ok(Self {
            trials,
            labels: recording.labels(),
        })
    }

    pub fn labels(&self) -> &[MotionLabel] {
        &self.labels
    }

    /// Name or numeric id.
    pub fn resolve(&self, key: &str) -> Result<MotionLabel> {
        let id = key.parse::<u16>().ok();
        self.labels
            .iter()
            .find(|l| l.name == key || Some(l.id) == id)
            .cloned()
            .ok_or_else(|| MyoError::UnknownLabel(key.to_string()))
    }

    fn trials_of(&self, id: u16) -> Vec<&TrialFeatures> {
        self.trials.iter().filter(|t| t.trial.label.id == id).collect()
    }

    /// The first `n` trials of a label.
    pub fn training_trials(&self, label: &MotionLabel, n: usize) -> Result<Vec<&TrialFeatures>> {
        let all = self.trials_of(label.id);
        enough(label, all.len(), n)?;
        Ok(all[..n].to_vec())
    }

    /// The last `n` trials of a label.
    pub fn testing_trials(&self, label: &MotionLabel, n: usize) -> Result<Vec<&TrialFeatures>> {
        let all = self.trials_of(label.id);
        enough(label, all.len(), n)?;
        Ok(all[all.len() - n..].to_vec())
    }

    /// All window feature vectors, in recording order.
    pub fn vectors(&self) -> impl Iterator<Item = &FeatureVector> {
        self.trials.iter().flat_map(|t| t.vectors.iter())
    }
}

fn enough(label: &MotionLabel, have: usize, want: usize) -> Result<()> {
    if have < want {
        return Err(MyoError::InsufficientData(format!(
            "label {label} has {have} trials, {want} requested"
        )));
    }
    Ok(())
}

pub(crate) fn check_compatible(recording: &Recording, config: &StreamConfig) -> Result<()> {
    recording.validate()?;
    if recording.channel_count() != config.channel_count {
        return Err(MyoError::Dimension {
            expected: config.channel_count,
            got: recording.channel_count(),
        });
    }
    if recording.sample_rate != config.sample_rate {
        return Err(MyoError::Config(format!(
            "recording is sampled at {} Hz but the configuration expects {} Hz",
            recording.sample_rate, config.sample_rate
        )));
    }
    Ok(())
}

/// Amplitude-based speed estimate for a window, relative to the reference of
/// the window's target class.
pub fn speed_from_amplitude(mean_abs: f64, reference: f64) -> Result<f64> {
    if !(reference > 0.0) {
        return Err(MyoError::Calibration(format!(
            "reference amplitude must be positive, got {reference}"
        )));
    }
    Ok((mean_abs / reference).clamp(0.0, 1.0))
}

/// Per-window speed estimate for a raw window.
pub fn window_speed(window: &Window, calibration: &Calibration, target: u16) -> Result<f64> {
    speed_from_amplitude(window.mean_abs(), calibration.reference(target)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassSummary {
    pub label: MotionLabel,
    pub trials: usize,
    pub windows: usize,
    pub degenerate_windows: usize,
    pub reference_amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassScore {
    pub label: MotionLabel,
    pub windows: u64,
    pub mc_percent: Option<f64>,
}

/// One scored test phase.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    pub classes_in_model: usize,
    pub labels: Vec<MotionLabel>,
    pub trials_per_label: usize,
    pub windows: usize,
    pub mc_percent: f64,
    pub efficacy_percent: f64,
    pub per_class: Vec<ClassScore>,
    pub confusion: ConfusionMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "phase", rename_all = "snake_case")]
pub enum PhaseReport {
    Train(ClassSummary),
    Add(ClassSummary),
    Test(TestReport),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionReport {
    pub efficacy_mode: EfficacyMode,
    pub pooling: String,
    pub phases: Vec<PhaseReport>,
}

impl SessionReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn tests(&self) -> impl Iterator<Item = &TestReport> {
        self.phases.iter().filter_map(|p| match p {
            PhaseReport::Test(t) => Some(t),
            _ => None,
        })
    }
}

/// Incremental training state. Classes trained before the first add or test
/// are pooled together; later classes are folded in one at a time.
#[derive(Debug, Clone)]
pub struct Session {
    pending: Vec<ClassModel>,
    model: Option<PooledModel>,
    calibration: Calibration,
    pooling: Pooling,
    mode: EfficacyMode,
    timing: bool,
}

impl Session {
    pub fn new(pooling: Pooling, mode: EfficacyMode) -> Self {
        Self {
            pending: Vec::new(),
            model: None,
            calibration: Calibration::new(),
            pooling,
            mode,
            timing: false,
        }
    }

    /// Resumes from a stored model.
    pub fn from_model(model: PooledModel, calibration: Calibration, mode: EfficacyMode) -> Self {
        Self {
            pending: Vec::new(),
            pooling: model.pooling(),
            model: Some(model),
            calibration,
            mode,
            timing: false,
        }
    }

    /// Adds wall-clock time to test reports, which makes them
    /// non-reproducible.
    pub fn with_timing(mut self, timing: bool) -> Self {
        self.timing = timing;
        self
    }

    pub fn calibration(&self) -> &Calibration {
        &self.calibration
    }

    pub fn mode(&self) -> EfficacyMode {
        self.mode
    }

    pub fn pooling(&self) -> Pooling {
        self.pooling
    }

    fn fit(&mut self, data: &FeatureSet, key: &str, n: usize) -> Result<(ClassModel, ClassSummary)> {
        let label = data.resolve(key)?;
        let known = self.pending.iter().map(|c| &c.label).chain(
            self.model.iter().flat_map(|m| m.classes().iter().map(|c| &c.label)),
        );
        if known.clone().any(|l| l.id == label.id) {
            return Err(MyoError::Script(format!("label {label} is already trained")));
        }
        let trials = data.training_trials(&label, n)?;
        let vectors: Vec<&FeatureVector> = trials.iter().flat_map(|t| t.vectors.iter()).collect();
        let amps: Vec<f64> = trials.iter().flat_map(|t| t.amplitudes.iter().copied()).collect();
        let d = vectors.first().map_or(0, |v| v.dim());
        if vectors.len() < d + 1 {
            log::warn!(
                "class {label} has {} windows for {d} features; the covariance is rank deficient and the ridge carries it",
                vectors.len()
            );
        }
        let class = fit_class(&vectors, label.clone())?;
        let reference = percentile(&amps, CALIBRATION_PERCENTILE);
        if reference > 0.0 {
            self.calibration.insert(label.id, reference)?;
        } else {
            log::warn!("class {label} is silent; its speed estimate will be 0");
        }
        let summary = ClassSummary {
            label,
            trials: n,
            windows: vectors.len(),
            degenerate_windows: vectors.iter().filter(|v| v.degenerate).count(),
            reference_amplitude: reference,
        };
        Ok((class, summary))
    }

    /// Fits a class for the initial model.
    pub fn train(&mut self, data: &FeatureSet, key: &str, n: usize) -> Result<ClassSummary> {
        if self.model.is_some() {
            return Err(MyoError::Script(
                "the model is already built; extend it with add".into(),
            ));
        }
        let (class, summary) = self.fit(data, key, n)?;
        self.pending.push(class);
        Ok(summary)
    }

    /// Extends the model by one class without touching the others.
    pub fn add_class(&mut self, data: &FeatureSet, key: &str, n: usize) -> Result<ClassSummary> {
        let before = self.model()?.clone();
        let (class, summary) = self.fit(data, key, n)?;
        let after = before.add_class(class)?;
        let preserved = before
            .classes()
            .iter()
            .zip(after.classes())
            .all(|(a, b)| a == b);
        if !preserved {
            return Err(MyoError::Model("adding a class changed an existing class".into()));
        }
        self.model = Some(after);
        Ok(summary)
    }

    /// The model, pooling any classes trained so far if it has not been
    /// built yet.
    pub fn model(&mut self) -> Result<&PooledModel> {
        if self.model.is_none() {
            let classes = std::mem::take(&mut self.pending);
            match PooledModel::build(classes.clone(), self.pooling) {
                Ok(m) => self.model = Some(m),
                Err(e) => {
                    self.pending = classes;
                    return Err(e);
                }
            }
        }
        Ok(self.model.as_ref().expect("model built"))
    }

    /// Classifies the last `n` trials of every listed label.
    pub fn test(&mut self, data: &FeatureSet, keys: &[String], n: usize) -> Result<TestReport> {
        let started = self.timing.then(Instant::now);
        let mode = self.mode;
        let labels = keys.iter().map(|k| data.resolve(k)).collect::<Result<Vec<_>>>()?;
        self.model()?;
        let model = self.model.as_ref().expect("model built");
        if let Some(l) = labels.iter().find(|l| model.class(l.id).is_none()) {
            return Err(MyoError::Script(format!("test label {l} is not in the model")));
        }
        let mut outcomes = Vec::new();
        for label in &labels {
            let reference = self.calibration.reference(label.id).ok();
            if reference.is_none() {
                log::warn!("no amplitude reference for {label}; scoring its speed as 0");
            }
            for t in data.testing_trials(label, n)? {
                for (v, &amp) in t.vectors.iter().zip(&t.amplitudes) {
                    let predicted = model.predict(&v.values)?.clone();
                    let prop = match reference {
                        Some(r) => speed_from_amplitude(amp, r)?,
                        None => 0.0,
                    };
                    outcomes.push(WindowOutcome::new(predicted, label.clone(), prop));
                }
            }
        }
        let matrix = confusion(model.labels(), &outcomes)?;
        let report = TrialReport::new(outcomes, mode)?;
        let per_class = labels
            .iter()
            .map(|l| {
                let i = matrix
                    .labels
                    .iter()
                    .position(|m| m.id == l.id)
                    .expect("test labels are model labels");
                let windows = matrix.row_total(i);
                ClassScore {
                    label: l.clone(),
                    windows,
                    mc_percent: (windows > 0)
                        .then(|| 100.0 * matrix.counts[i][i] as f64 / windows as f64),
                }
            })
            .collect();
        Ok(TestReport {
            classes_in_model: model.classes().len(),
            labels,
            trials_per_label: n,
            windows: report.outcomes.len(),
            mc_percent: report.mc_percent,
            efficacy_percent: report.efficacy_percent,
            per_class,
            confusion: matrix,
            timing_ms: started.map(|t| t.elapsed().as_secs_f64() * 1e3),
        })
    }

    pub fn run_phase(&mut self, data: &FeatureSet, phase: &Phase) -> Result<PhaseReport> {
        Ok(match phase {
            Phase::Train { label, trials } => PhaseReport::Train(self.train(data, label, *trials)?),
            Phase::AddClass { label, trials } => PhaseReport::Add(self.add_class(data, label, *trials)?),
            Phase::Test { labels, trials } => PhaseReport::Test(self.test(data, labels, *trials)?),
        })
    }
}

/// Everything a session run produces.
#[derive(Debug, Clone)]
pub struct SessionOutput {
    pub model: PooledModel,
    pub calibration: Calibration,
    pub report: SessionReport,
}

/// Replays a script against a recording.
pub fn run_session(
    script: &SessionScript,
    recording: &Recording,
    config: &StreamConfig,
    pooling: Pooling,
    mode: EfficacyMode,
) -> Result<SessionOutput> {
    let data = FeatureSet::extract(recording, config)?;
    run_session_on(script, &data, Session::new(pooling, mode))
}

/// Replays a script against already extracted features.
pub fn run_session_on(script: &SessionScript, data: &FeatureSet, mut session: Session) -> Result<SessionOutput> {
    script.check()?;
    for phase in &script.phases {
        for key in match phase {
            Phase::Train { label, .. } | Phase::AddClass { label, .. } => std::slice::from_ref(label),
            Phase::Test { labels, .. } => labels.as_slice(),
        } {
            data.resolve(key)?;
        }
    }
    let phases = script
        .phases
        .iter()
        .map(|p| session.run_phase(data, p))
        .collect::<Result<Vec<_>>>()?;
    let model = session.model()?.clone();
    Ok(SessionOutput {
        report: SessionReport {
            efficacy_mode: session.mode,
            pooling: session.pooling.to_string(),
            phases,
        },
        model,
        calibration: session.calibration,
    })
}
