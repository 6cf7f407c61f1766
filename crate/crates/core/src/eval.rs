//! Online performance metrics: motion completion, motion efficacy and
//! confusion matrices, all scored per window.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dsp::Window;
use crate::error::{MyoError, Result};
use crate::label::MotionLabel;

/// Outcome of one classified window.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowOutcome {
    pub predicted: MotionLabel,
    pub target: MotionLabel,
    /// Proportional speed command in `[0, 1]`.
    pub prop: f64,
}

impl WindowOutcome {
    pub fn new(predicted: MotionLabel, target: MotionLabel, prop: f64) -> Self {
        Self {
            predicted,
            target,
            prop: prop.clamp(0.0, 1.0),
        }
    }

    /// Success indicator: 1 when the predicted motion is the target.
    pub fn est(&self) -> u8 {
        u8::from(self.predicted.id == self.target.id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EfficacyMode {
    /// `sum(prop * est / prop)` over windows with `prop > 0`, which reduces
    /// to the success fraction on that subset.
    #[default]
    Literal,
    /// `sum(est * prop) / N`.
    SpeedWeighted,
}

impl FromStr for EfficacyMode {
    type Err = MyoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(EfficacyMode::Literal),
            "speed-weighted" | "speed_weighted" => Ok(EfficacyMode::SpeedWeighted),
            other => Err(MyoError::Config(format!(
                "efficacy mode must be `literal` or `speed-weighted`, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for EfficacyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EfficacyMode::Literal => "literal",
            EfficacyMode::SpeedWeighted => "speed-weighted",
        })
    }
}

fn non_empty(outcomes: &[WindowOutcome]) -> Result<()> {
    if outcomes.is_empty() {
        Err(MyoError::InsufficientData("no window outcomes to score".into()))
    } else {
        Ok(())
    }
}

/// Percentage of windows whose prediction hit the target.
pub fn motion_completion(outcomes: &[WindowOutcome]) -> Result<f64> {
    non_empty(outcomes)?;
    let hits: u64 = outcomes.iter().map(|o| u64::from(o.est())).sum();
    Ok(100.0 * hits as f64 / outcomes.len() as f64)
}

pub fn motion_efficacy(outcomes: &[WindowOutcome], mode: EfficacyMode) -> Result<f64> {
    non_empty(outcomes)?;
    Ok(match mode {
        EfficacyMode::Literal => {
            let moving: Vec<&WindowOutcome> = outcomes.iter().filter(|o| o.prop > 0.0).collect();
            if moving.is_empty() {
                0.0
            } else {
                let hits: u64 = moving.iter().map(|o| u64::from(o.est())).sum();
                100.0 * hits as f64 / moving.len() as f64
            }
        }
        EfficacyMode::SpeedWeighted => {
            let sum: f64 = outcomes.iter().map(|o| f64::from(o.est()) * o.prop).sum();
            100.0 * sum / outcomes.len() as f64
        }
    })
}

/// Per-class amplitude references for the proportional speed estimate.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Calibration {
    references: BTreeMap<u16, f64>,
}

/// Percentile used to pick each class's reference amplitude.
pub const CALIBRATION_PERCENTILE: f64 = 95.0;

impl Calibration {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: u16, reference: f64) -> Result<()> {
        if !(reference.is_finite() && reference > 0.0) {
            return Err(MyoError::Calibration(format!(
                "reference for class {id} must be positive, got {reference}"
            )));
        }
        self.references.insert(id, reference);
        Ok(())
    }

    /// Reference from training-window mean-absolute amplitudes: their 95th
    /// percentile (linear interpolation between order statistics).
    pub fn insert_from_windows(&mut self, id: u16, windows: &[Window]) -> Result<()> {
        let amps: Vec<f64> = windows.iter().map(Window::mean_abs).collect();
        self.insert(id, percentile(&amps, CALIBRATION_PERCENTILE))
    }

    pub fn reference(&self, id: u16) -> Result<f64> {
        self.references
            .get(&id)
            .copied()
            .ok_or_else(|| MyoError::Calibration(format!("no reference for class {id}")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u16, f64)> + '_ {
        self.references.iter().map(|(k, v)| (*k, *v))
    }

    /// `id = reference` lines; values round-trip exactly.
    pub fn to_text(&self) -> String {
        self.iter().map(|(id, r)| format!("{id} = {r:?}\n")).collect()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cal = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: &str| MyoError::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let (id, value) = line.split_once('=').ok_or_else(|| parse_err("expected `id = value`"))?;
            let id = id.trim().parse().map_err(|_| parse_err("bad class id"))?;
            let value = value.trim().parse().map_err(|_| parse_err("bad reference value"))?;
            cal.insert(id, value)?;
        }
        Ok(cal)
    }
}

pub fn percentile(values: &[f64], pct: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = (pct / 100.0).clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - lo as f64)
}

/// Mean absolute amplitude over the window, relative to `reference`, clamped
/// to `[0, 1]`.
pub fn proportional_speed(window: &Window, reference: f64) -> Result<f64> {
    if !(reference > 0.0) {
        return Err(MyoError::Calibration(format!(
            "reference amplitude must be positive, got {reference}"
        )));
    }
    Ok((window.mean_abs() / reference).clamp(0.0, 1.0))
}

/// Rows are true classes, columns predicted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfusionMatrix {
    pub labels: Vec<MotionLabel>,
    pub counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    pub fn new(labels: Vec<MotionLabel>) -> Self {
        let k = labels.len();
        Self {
            labels,
            counts: vec![vec![0; k]; k],
        }
    }

    fn index(&self, label: &MotionLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l.id == label.id)
            .ok_or_else(|| MyoError::UnknownLabel(label.to_string()))
    }

    pub fn record(&mut self, target: &MotionLabel, predicted: &MotionLabel) -> Result<()> {
        let t = self.index(target)?;
        let p = self.index(predicted)?;
        self.counts[t][p] += 1;
        Ok(())
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.labels.len()).map(|i| self.counts[i][i]).sum()
    }

    pub fn row_total(&self, i: usize) -> u64 {
        self.counts[i].iter().sum()
    }

    /// Diagonal over row sum; `None` for classes with no windows.
    pub fn class_accuracy(&self) -> Vec<Option<f64>> {
        (0..self.labels.len())
            .map(|i| {
                let row = self.row_total(i);
                (row > 0).then(|| self.counts[i][i] as f64 / row as f64)
            })
            .collect()
    }

    /// CSV with a `true\predicted` corner cell and label names on both axes.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("true\\predicted");
        for l in &self.labels {
            out.push(',');
            out.push_str(&l.name);
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.counts) {
            out.push_str(&l.name);
            for c in row {
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn confusion(labels: Vec<MotionLabel>, outcomes: &[WindowOutcome]) -> Result<ConfusionMatrix> {
    let mut m = ConfusionMatrix::new(labels);
    for o in outcomes {
        m.record(&o.target, &o.predicted)?;
    }
    Ok(m)
}

pub fn confusion_from_pairs(
    labels: Vec<MotionLabel>,
    targets: &[MotionLabel],
    predictions: &[MotionLabel],
) -> Result<ConfusionMatrix> {
    if targets.len() != predictions.len() {
        return Err(MyoError::Dimension {
            expected: targets.len(),
            got: predictions.len(),
        });
    }
    let mut m = ConfusionMatrix::new(labels);
    for (t, p) in targets.iter().zip(predictions) {
        m.record(t, p)?;
    }
    Ok(m)
}

/// Scored outcomes of one test block.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub outcomes: Vec<WindowOutcome>,
    pub mc_percent: f64,
    pub efficacy_percent: f64,
    pub mode: EfficacyMode,
}

impl TrialReport {
    pub fn new(outcomes: Vec<WindowOutcome>, mode: EfficacyMode) -> Result<Self> {
        let mc_percent = motion_completion(&outcomes)?;
        let efficacy_percent = motion_efficacy(&outcomes, mode)?;
        Ok(Self {
            outcomes,
            mc_percent,
            efficacy_percent,
            mode,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(id: u16) -> MotionLabel {
        MotionLabel::new(id, format!("m{id}"))
    }

    fn outcomes(ests: &[u8], props: &[f64]) -> Vec<WindowOutcome> {
        ests.iter()
            .zip(props)
            .map(|(&e, &p)| WindowOutcome::new(if e == 1 { l(0) } else { l(1) }, l(0), p))
            .collect()
    }

    #[test]
    fn completion_examples() {
        assert_eq!(motion_completion(&outcomes(&[1; 30], &[1.0; 30])).unwrap(), 100.0);
        let mut e = [1u8; 30];
        e[3] = 0;
        e[17] = 0;
        assert_eq!(motion_completion(&outcomes(&e, &[1.0; 30])).unwrap(), 100.0 * 28.0 / 30.0);
        assert_eq!(motion_completion(&outcomes(&[0; 30], &[1.0; 30])).unwrap(), 0.0);
        assert!(motion_completion(&[]).is_err());
    }

    #[test]
    fn efficacy_examples() {
        let o = outcomes(&[1, 1, 0, 1], &[0.5, 1.0, 0.8, 0.25]);
        assert_eq!(motion_efficacy(&o, EfficacyMode::Literal).unwrap(), 75.0);
        assert_eq!(motion_efficacy(&o, EfficacyMode::SpeedWeighted).unwrap(), 43.75);
        let all = outcomes(&[1; 5], &[1.0; 5]);
        for mode in [EfficacyMode::Literal, EfficacyMode::SpeedWeighted] {
            assert_eq!(motion_efficacy(&all, mode).unwrap(), 100.0);
        }
        assert!(motion_efficacy(&[], EfficacyMode::Literal).is_err());
    }

    #[test]
    fn literal_efficacy_skips_zero_speed_windows() {
        let o = outcomes(&[0, 1, 1], &[0.0, 0.3, 0.9]);
        assert_eq!(motion_efficacy(&o, EfficacyMode::Literal).unwrap(), 100.0);
        let still = outcomes(&[1, 1], &[0.0, 0.0]);
        assert_eq!(motion_efficacy(&still, EfficacyMode::Literal).unwrap(), 0.0);
    }

    #[test]
    fn est_tracks_label_equality() {
        let o = WindowOutcome::new(l(2), l(2), 3.0);
        assert_eq!(o.est(), 1);
        assert_eq!(o.prop, 1.0);
        assert_eq!(WindowOutcome::new(l(1), l(2), 0.5).est(), 0);
    }

    fn window(value: f64) -> Window {
        Window {
            samples: vec![vec![value, -value, value]; 2],
            start_index: 0,
            label: None,
        }
    }

    #[test]
    fn proportional_speed_examples() {
        assert_eq!(proportional_speed(&window(0.5), 0.5).unwrap(), 1.0);
        assert_eq!(proportional_speed(&window(0.0), 0.5).unwrap(), 0.0);
        assert_eq!(proportional_speed(&window(1.0), 0.5).unwrap(), 1.0);
        assert_eq!(proportional_speed(&window(0.125), 0.5).unwrap(), 0.25);
        assert!(matches!(proportional_speed(&window(0.1), 0.0), Err(MyoError::Calibration(_))));
        assert!(proportional_speed(&window(0.1), -1.0).is_err());
    }

    #[test]
    fn calibration_percentile_and_text() {
        assert_eq!(percentile(&[1.0, 2.0, 3.0, 4.0, 5.0], 50.0), 3.0);
        assert!((percentile(&[0.0, 10.0], 95.0) - 9.5).abs() < 1e-12);
        let mut cal = Calibration::new();
        cal.insert_from_windows(3, &[window(0.2), window(0.4)]).unwrap();
        cal.insert(0, 0.1 + 0.2).unwrap();
        let back = Calibration::from_text(&cal.to_text()).unwrap();
        assert_eq!(back, cal);
        assert!(cal.reference(9).is_err());
        assert!(cal.insert(1, 0.0).is_err());
    }

    #[test]
    fn confusion_examples() {
        let labels = vec![l(0), l(1), l(2)];
        let perfect: Vec<_> = (0..3).map(|i| WindowOutcome::new(l(i), l(i), 1.0)).collect();
        let m = confusion(labels.clone(), &perfect).unwrap();
        assert_eq!(m.counts, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);

        let m = confusion_from_pairs(labels.clone(), &[l(0)], &[l(1)]).unwrap();
        assert_eq!(m.total(), 1);
        assert_eq!(m.counts[0][1], 1);
        assert_eq!(m.trace(), 0);

        assert!(matches!(
            confusion_from_pairs(labels.clone(), &[l(0)], &[l(9)]),
            Err(MyoError::UnknownLabel(_))
        ));
        assert!(confusion_from_pairs(labels, &[l(0)], &[]).is_err());
    }

    #[test]
    fn csv_dump() {
        let m = confusion_from_pairs(vec![l(0), l(1)], &[l(0), l(1), l(1)], &[l(0), l(0), l(1)]).unwrap();
        assert_eq!(m.to_csv(), "true\\predicted,m0,m1\nm0,1,0\nm1,1,1\n");
    }

    fn arb_outcomes() -> impl Strategy<Value = Vec<WindowOutcome>> {
        proptest::collection::vec((0u16..4, 0u16..4, 0.0f64..1.0), 1..200).prop_map(|v| {
            v.into_iter()
                .map(|(t, p, prop)| WindowOutcome::new(l(p), l(t), prop))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn metric_bounds_and_orderings(o in arb_outcomes()) {
            let mc = motion_completion(&o).unwrap();
            prop_assert!((0.0..=100.0).contains(&mc));
            let lit = motion_efficacy(&o, EfficacyMode::Literal).unwrap();
            let sw = motion_efficacy(&o, EfficacyMode::SpeedWeighted).unwrap();
            prop_assert!((0.0..=100.0).contains(&lit) && (0.0..=100.0).contains(&sw));
            let moving: Vec<_> = o.iter().filter(|x| x.prop > 0.0).cloned().collect();
            if !moving.is_empty() {
                prop_assert!(lit <= motion_completion(&moving).unwrap());
            }
            prop_assert!(sw <= lit + 1e-9);
            let m = confusion((0..4).map(l).collect(), &o).unwrap();
            prop_assert_eq!(100.0 * m.trace() as f64 / m.total() as f64, mc);
        }

        #[test]
        fn completion_is_monotone_in_successes(n in 1usize..60, k in 0usize..60) {
            let k = k.min(n);
            let make = |hits: usize| -> Vec<WindowOutcome> {
                (0..n).map(|i| WindowOutcome::new(if i < hits { l(0) } else { l(1) }, l(0), 1.0)).collect()
            };
            let lo = motion_completion(&make(k)).unwrap();
            let hi = motion_completion(&make((k + 1).min(n))).unwrap();
            prop_assert!(lo <= hi);
        }
    }

    #[test]
    fn macro_average_matches_completion_when_balanced() {
        let labels: Vec<MotionLabel> = (0..3).map(l).collect();
        // 10 windows per class, different hit counts
        let mut o = Vec::new();
        for (class, hits) in [(0u16, 10usize), (1, 7), (2, 4)] {
            for i in 0..10 {
                let predicted = if i < hits { class } else { (class + 1) % 3 };
                o.push(WindowOutcome::new(l(predicted), l(class), 1.0));
            }
        }
        let m = confusion(labels, &o).unwrap();
        let acc = m.class_accuracy();
        let macro_avg = acc.iter().map(|a| a.unwrap()).sum::<f64>() / 3.0 * 100.0;
        assert!((macro_avg - motion_completion(&o).unwrap()).abs() < 1e-12);
    }
}
