use std::fmt;

use serde::{Deserialize, Serialize};

/// A motion class. Ids are unique within a model; names are free text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MotionLabel {
    pub id: u16,
    pub name: String,
}

impl MotionLabel {
    pub fn new(id: u16, name: impl Into<String>) -> Self {
        Self {
            id,
            name: name.into(),
        }
    }
}

impl fmt::Display for MotionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Rest plus the eleven upper-limb motions of the standard protocol, in id order.
pub const STANDARD_MOTIONS: [&str; 12] = [
    "rest",
    "hand_close",
    "hand_open",
    "wrist_extension",
    "wrist_flexion",
    "cutter_grasp",
    "plier_grasp",
    "screw_grasp",
    "quadpod_grasp",
    "large_diameter_grasp",
    "normal_parallel_extension_grasp",
    "forced_parallel_extension_grasp",
];

pub fn standard_labels() -> Vec<MotionLabel> {
    STANDARD_MOTIONS
        .iter()
        .enumerate()
        .map(|(i, name)| MotionLabel::new(i as u16, *name))
        .collect()
}

/// Looks up a standard label by name or numeric id.
pub fn standard_label(key: &str) -> Option<MotionLabel> {
    if let Ok(id) = key.parse::<u16>() {
        return STANDARD_MOTIONS
            .get(id as usize)
            .map(|name| MotionLabel::new(id, *name));
    }
    STANDARD_MOTIONS
        .iter()
        .position(|name| *name == key)
        .map(|i| MotionLabel::new(i as u16, STANDARD_MOTIONS[i]))
}
