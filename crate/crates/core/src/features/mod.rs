//! Per-window feature extraction.

mod moments;
pub mod spectral;
mod td;

pub use moments::{atdm, difference, moments, AtdmFeatures, MomentSet, DEGENERATE_EPS};
pub use spectral::spectral_moment_oracle;
pub use td::{baseline_td, baseline_td_with_threshold, TimeDomainFeatures, RELATIVE_THRESHOLD};

use crate::dsp::Window;
use crate::error::Result;
use crate::label::MotionLabel;

/// Channel-major concatenation of the four features of every channel:
/// `[ch0 pap, ch0 zcap, ch0 mwl, ch0 dbm, ch1 pap, ...]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub label: Option<MotionLabel>,
    pub window_start: u64,
    /// At least one channel was degenerate and contributed zeros.
    pub degenerate: bool,
}

impl FeatureVector {
    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

pub fn feature_vector(window: &Window) -> Result<FeatureVector> {
    let mut values = Vec::with_capacity(window.channel_count() * AtdmFeatures::COUNT);
    let mut degenerate = false;
    for channel in &window.samples {
        let f = atdm(channel)?;
        degenerate |= f.degenerate;
        values.extend_from_slice(&f.as_array());
    }
    Ok(FeatureVector {
        values,
        label: window.label.clone(),
        window_start: window.start_index,
        degenerate,
    })
}

/// Column names in vector order, e.g. `ch0_pap`.
pub fn feature_names(channels: usize) -> Vec<String> {
    (0..channels)
        .flat_map(|ch| {
            AtdmFeatures::NAMES
                .iter()
                .map(move |f| format!("ch{ch}_{f}"))
        })
        .collect()
}

/// CSV with header `window_start,label,ch<i>_<feat>...`, 9 significant digits.
pub fn features_csv(vectors: &[FeatureVector], channels: usize) -> String {
    let mut out = String::from("window_start,label");
    for name in feature_names(channels) {
        out.push(',');
        out.push_str(&name);
    }
    out.push('\n');
    for v in vectors {
        out.push_str(&v.window_start.to_string());
        out.push(',');
        if let Some(label) = &v.label {
            out.push_str(&label.name);
        }
        for x in &v.values {
            out.push_str(&format!(",{x:.8e}"));
        }
        out.push('\n');
    }
    out
}
