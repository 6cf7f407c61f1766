//! Recordings, synthetic data, session replay and latency profiling.

pub mod profile;
pub mod recording;
pub mod run;
pub mod script;
pub mod synth;

pub use profile::{profile_latency, LatencyReport, DECISION_BUDGET_MS, MIN_PROFILE_WINDOWS, REFERENCE_FEATURE_MS};
pub use recording::{
    load_recording, read_recording, recording_from_csv, recording_to_csv, save_recording, write_recording,
    Recording, Trial, RECORDING_MAGIC, RECORDING_VERSION,
};
pub use run::{
    run_session, run_session_on, speed_from_amplitude, window_speed, ClassScore, ClassSummary, FeatureSet,
    PhaseReport, Session, SessionOutput, SessionReport, TestReport, TrialFeatures,
};
pub use script::{Phase, SessionScript};
pub use synth::{synth_generate, Envelope, SynthSpec};
