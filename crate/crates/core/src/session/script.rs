//! Session scripts, one phase per line:
//!
//! ```text
//! train hand_close 10
//! train hand_open 10
//! test hand_close,hand_open 20
//! add wrist_flexion 10
//! test hand_close,hand_open,wrist_flexion 20
//! ```
//!
//! Consecutive `train` lines form the initial model; `add` extends it one
//! class at a time. Labels are names or numeric ids.

use std::collections::HashSet;

use crate::error::{MyoError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Phase {
    Train { label: String, trials: usize },
    AddClass { label: String, trials: usize },
    Test { labels: Vec<String>, trials: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionScript {
    pub phases: Vec<Phase>,
}

impl SessionScript {
    pub fn parse(text: &str) -> Result<Self> {
        let mut phases = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| MyoError::Parse { line: i + 1, msg };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [verb, labels, trials] = parts[..] else {
                return Err(err(format!("expected `<verb> <label(s)> <trials>`, got `{line}`")));
            };
            let trials: usize = trials
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| err(format!("trial count must be a positive integer, got `{trials}`")))?;
            phases.push(match verb {
                "train" => Phase::Train { label: labels.to_string(), trials },
                "add" => Phase::AddClass { label: labels.to_string(), trials },
                "test" => Phase::Test {
                    labels: labels.split(',').map(str::to_string).filter(|s| !s.is_empty()).collect(),
                    trials,
                },
                other => return Err(err(format!("unknown phase `{other}`"))),
            });
        }
        let script = Self { phases };
        script.check()?;
        Ok(script)
    }

    /// Static consistency: training first, no label trained twice, tests
    /// only on trained labels.
    pub fn check(&self) -> Result<()> {
        let mut trained: HashSet<&str> = HashSet::new();
        let mut built = false;
        for (i, phase) in self.phases.iter().enumerate() {
            let n = i + 1;
            match phase {
                Phase::Train { label, .. } => {
                    if built {
                        return Err(MyoError::Script(format!(
                            "phase {n}: `train {label}` after the model was built; use `add`"
                        )));
                    }
                    if !trained.insert(label) {
                        return Err(MyoError::Script(format!("phase {n}: `{label}` is trained twice")));
                    }
                }
                Phase::AddClass { label, .. } => {
                    if !built && trained.len() < 2 {
                        return Err(MyoError::Script(format!(
                            "phase {n}: `add {label}` needs an initial model of at least two classes"
                        )));
                    }
                    built = true;
                    if !trained.insert(label) {
                        return Err(MyoError::Script(format!("phase {n}: `{label}` is already in the model")));
                    }
                }
                Phase::Test { labels, .. } => {
                    if trained.len() < 2 {
                        return Err(MyoError::Script(format!(
                            "phase {n}: test before a model of at least two classes exists"
                        )));
                    }
                    built = true;
                    if labels.is_empty() {
                        return Err(MyoError::Script(format!("phase {n}: test lists no labels")));
                    }
                    if let Some(l) = labels.iter().find(|l| !trained.contains(l.as_str())) {
                        return Err(MyoError::Script(format!("phase {n}: test references untrained label `{l}`")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Four initial motions, then the remaining seven motions and rest added
    /// one at a time, testing every class trained so far after each step.
    pub fn standard(train_trials: usize, test_trials: usize) -> Self {
        use crate::label::STANDARD_MOTIONS;
        let initial = &STANDARD_MOTIONS[1..5];
        let added = STANDARD_MOTIONS[5..].iter().chain(std::iter::once(&STANDARD_MOTIONS[0]));
        let mut phases: Vec<Phase> = initial
            .iter()
            .map(|l| Phase::Train { label: l.to_string(), trials: train_trials })
            .collect();
        let mut known: Vec<String> = initial.iter().map(|s| s.to_string()).collect();
        phases.push(Phase::Test { labels: known.clone(), trials: test_trials });
        for l in added {
            phases.push(Phase::AddClass { label: l.to_string(), trials: train_trials });
            known.push(l.to_string());
            phases.push(Phase::Test { labels: known.clone(), trials: test_trials });
        }
        Self { phases }
    }

    pub fn to_text(&self) -> String {
        self.phases
            .iter()
            .map(|p| match p {
                Phase::Train { label, trials } => format!("train {label} {trials}\n"),
                Phase::AddClass { label, trials } => format!("add {label} {trials}\n"),
                Phase::Test { labels, trials } => format!("test {} {trials}\n", labels.join(",")),
            })
            .collect()
    }
}
