//! Real-time EMG pattern recognition.
//!
//! Raw multi-channel samples are band-pass and notch filtered, cut into
//! overlapping windows, reduced to four time-derivative moment features per
//! channel and classified by an LDA whose pooled covariance grows by
//! addition when a new motion class is trained.
//!
//! ```
//! use myo_core::features::atdm;
//!
//! let f = atdm(&[1.0, 2.0, 4.0]).unwrap();
//! assert!((f.pap - 105f64.sqrt()).abs() < 1e-12);
//! ```

pub mod config;
pub mod dsp;
pub mod error;
pub mod eval;
pub mod features;
mod io;
pub mod label;
pub mod lda;
pub mod session;

pub use config::Config;
pub use dsp::{Pipeline, StreamConfig, Window};
pub use error::{MyoError, Result};
pub use eval::{Calibration, ConfusionMatrix, EfficacyMode, TrialReport, WindowOutcome};
pub use features::{feature_vector, FeatureVector};
pub use label::MotionLabel;
pub use lda::{PooledModel, Pooling};
pub use session::{Recording, SessionReport, SessionScript};
