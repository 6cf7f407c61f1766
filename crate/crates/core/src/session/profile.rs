//! Wall-clock profile of the streaming pipeline on a recording.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::dsp::{Pipeline, StreamConfig};
use crate::error::{MyoError, Result};
use crate::features::feature_vector;
use crate::lda::PooledModel;
use crate::session::recording::Recording;
use crate::session::run::check_compatible;

/// Shortest recording worth profiling, in windows.
pub const MIN_PROFILE_WINDOWS: usize = 100;
/// End-to-end decision latency budget for real-time myoelectric control.
pub const DECISION_BUDGET_MS: f64 = 300.0;
/// Feature extraction time of the original embedded implementation. Kept
/// for comparison only.
pub const REFERENCE_FEATURE_MS: f64 = 90.88;

/// Mean time per window of every stage, in milliseconds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatencyReport {
    pub windows: usize,
    pub buffering_ms: f64,
    pub filtering_ms: f64,
    pub features_ms: f64,
    pub prediction_ms: f64,
    pub feature_predict_ms: f64,
    /// Per-window processing of all four stages.
    pub processing_ms: f64,
    /// Window length plus processing: the age of the oldest sample behind a
    /// decision when it is made.
    pub decision_latency_ms: f64,
    pub shift_budget_ms: f64,
    pub within_shift_budget: bool,
    pub within_decision_budget: bool,
    pub reference_feature_ms: f64,
}

/// Streams the recording through filter, ring buffer, features and
/// prediction, sample by sample, timing each stage.
pub fn profile_latency(config: &StreamConfig, recording: &Recording, model: &PooledModel) -> Result<LatencyReport> {
    check_compatible(recording, config)?;
    let expected = config.channel_count * crate::features::AtdmFeatures::COUNT;
    if model.dim() != expected {
        return Err(MyoError::Dimension {
            expected,
            got: model.dim(),
        });
    }
    let available = crate::dsp::window_count(recording.len(), config.window_len, config.window_shift);
    if available < MIN_PROFILE_WINDOWS {
        return Err(MyoError::InsufficientData(format!(
            "profiling needs at least {MIN_PROFILE_WINDOWS} windows, the recording holds {available}"
        )));
    }

    let mut pipeline = Pipeline::new(config)?;
    let mut frame = vec![0.0; config.channel_count];
    let (mut buffering, mut filtering, mut features, mut prediction) =
        (Duration::ZERO, Duration::ZERO, Duration::ZERO, Duration::ZERO);
    let mut windows = 0usize;
    let mut sink = 0usize;

    for i in 0..recording.len() {
        recording.frame(i, &mut frame);
        let t0 = Instant::now();
        pipeline.filter(&frame)?;
        let t1 = Instant::now();
        pipeline.buffer()?;
        let t2 = Instant::now();
        filtering += t1 - t0;
        buffering += t2 - t1;
        let t3 = Instant::now();
        let Some(window) = pipeline.next_window() else {
            buffering += t3 - t2;
            continue;
        };
        let t4 = Instant::now();
        buffering += t4 - t2;
        let v = feature_vector(&window)?;
        let t5 = Instant::now();
        sink = sink.wrapping_add(usize::from(model.predict(&v.values)?.id));
        let t6 = Instant::now();
        features += t5 - t4;
        prediction += t6 - t5;
        windows += 1;
    }
    std::hint::black_box(sink);

    let per = |d: Duration| d.as_secs_f64() * 1e3 / windows as f64;
    let (buffering_ms, filtering_ms, features_ms, prediction_ms) =
        (per(buffering), per(filtering), per(features), per(prediction));
    let feature_predict_ms = features_ms + prediction_ms;
    let processing_ms = buffering_ms + filtering_ms + feature_predict_ms;
    let decision_latency_ms = config.window_ms() + processing_ms;
    Ok(LatencyReport {
        windows,
        buffering_ms,
        filtering_ms,
        features_ms,
        prediction_ms,
        feature_predict_ms,
        processing_ms,
        decision_latency_ms,
        shift_budget_ms: config.shift_ms(),
        within_shift_budget: feature_predict_ms <= config.shift_ms(),
        within_decision_budget: decision_latency_ms <= DECISION_BUDGET_MS,
        reference_feature_ms: REFERENCE_FEATURE_MS,
    })
}
