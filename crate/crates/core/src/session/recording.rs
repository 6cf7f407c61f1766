//! Multi-channel EMG recordings with a trial table.
//!
//! Binary layout (little-endian):
//!
//! ```text
//! magic "MYO1" | version u16 | sample_rate u32 | channels u16 | samples u64
//! f32 samples, channel-major (all of channel 0, then channel 1, ...)
//! trial count u32 | per trial: start u32 | end u32 | label id u16 | name (u16 length + UTF-8)
//! ```
//!
//! The CSV form has a header `t,ch0,...,chN,label`, one row per sample, `t`
//! in seconds and the trial label name (empty outside trials). Trials are the
//! maximal runs of one label, so back-to-back trials of the same motion need
//! at least one unlabelled sample between them.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{MyoError, Result};
use crate::io::{ByteReader, ByteWriter};
use crate::label::{standard_label, MotionLabel, STANDARD_MOTIONS};

pub const RECORDING_MAGIC: [u8; 4] = *b"MYO1";
pub const RECORDING_VERSION: u16 = 1;

/// Half-open sample range `[start, end)` holding one motion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub start: usize,
    pub end: usize,
    pub label: MotionLabel,
}

impl Trial {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Recording {
    pub sample_rate: u32,
    /// `samples[channel][index]`
    pub samples: Vec<Vec<f32>>,
    pub trials: Vec<Trial>,
}

impl Recording {
    pub fn channel_count(&self) -> usize {
        self.samples.len()
    }

    pub fn len(&self) -> usize {
        self.samples.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn frame(&self, index: usize, out: &mut [f64]) {
        for (o, ch) in out.iter_mut().zip(&self.samples) {
            *o = f64::from(ch[index]);
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_rate == 0 {
            return Err(MyoError::Config("recording sample rate is zero".into()));
        }
        if self.samples.is_empty() {
            return Err(MyoError::Config("recording has no channels".into()));
        }
        let n = self.len();
        if let Some(ch) = self.samples.iter().position(|c| c.len() != n) {
            return Err(MyoError::Dimension {
                expected: n,
                got: self.samples[ch].len(),
            });
        }
        let mut prev_end = 0;
        for (i, t) in self.trials.iter().enumerate() {
            if t.start >= t.end || t.end > n || t.start < prev_end {
                return Err(MyoError::Config(format!(
                    "trial {i} [{}, {}) is empty, out of bounds or overlaps its predecessor",
                    t.start, t.end
                )));
            }
            prev_end = t.end;
        }
        Ok(())
    }

    /// Distinct trial labels in order of first appearance.
    pub fn labels(&self) -> Vec<MotionLabel> {
        let mut out: Vec<MotionLabel> = Vec::new();
        for t in &self.trials {
            if !out.iter().any(|l| l.id == t.label.id) {
                out.push(t.label.clone());
            }
        }
        out
    }

    /// Resolves a label by name or numeric id against this recording's trials.
    pub fn find_label(&self, key: &str) -> Option<MotionLabel> {
        let id = key.parse::<u16>().ok();
        self.trials
            .iter()
            .map(|t| &t.label)
            .find(|l| l.name == key || Some(l.id) == id)
            .cloned()
    }

    pub fn trials_of(&self, id: u16) -> Vec<&Trial> {
        self.trials.iter().filter(|t| t.label.id == id).collect()
    }
}

pub fn write_recording<W: Write>(rec: &Recording, out: W) -> Result<()> {
    rec.validate()?;
    let mut w = ByteWriter::new(out);
    w.bytes(&RECORDING_MAGIC)?;
    w.u16(RECORDING_VERSION)?;
    w.u32(rec.sample_rate)?;
    w.u16(u16::try_from(rec.channel_count()).map_err(|_| MyoError::Config("too many channels".into()))?)?;
    w.u64(rec.len() as u64)?;
    for ch in &rec.samples {
        for &x in ch {
            w.f32(x)?;
        }
    }
    w.u32(u32::try_from(rec.trials.len()).map_err(|_| MyoError::Config("too many trials".into()))?)?;
    for t in &rec.trials {
        let idx = |v: usize| u32::try_from(v).map_err(|_| MyoError::Config(format!("sample index {v} overflows u32")));
        w.u32(idx(t.start)?)?;
        w.u32(idx(t.end)?)?;
        w.u16(t.label.id)?;
        w.string(&t.label.name)?;
    }
    w.finish()
}

pub fn read_recording<R: Read>(input: R) -> Result<Recording> {
    let mut r = ByteReader::new(input);
    r.magic(RECORDING_MAGIC)?;
    let version = r.u16("version")?;
    if version != RECORDING_VERSION {
        return Err(MyoError::UnsupportedVersion {
            found: version,
            supported: RECORDING_VERSION,
        });
    }
    let sample_rate = r.u32("sample rate")?;
    let channels = r.u16("channel count")? as usize;
    let n = r.u64("sample count")?;
    let n = usize::try_from(n).map_err(|_| MyoError::Truncated(format!("sample count {n} is implausible")))?;
    let mut samples = Vec::with_capacity(channels);
    for _ in 0..channels {
        // grow as we read so a corrupt count cannot force a huge allocation
        let mut ch = Vec::new();
        for _ in 0..n {
            ch.push(r.f32("samples")?);
        }
        samples.push(ch);
    }
    let count = r.u32("trial count")?;
    let mut trials = Vec::new();
    for _ in 0..count {
        let start = r.u32("trial start")? as usize;
        let end = r.u32("trial end")? as usize;
        let id = r.u16("trial label id")?;
        let name = r.string("trial label name")?;
        trials.push(Trial {
            start,
            end,
            label: MotionLabel::new(id, name),
        });
    }
    r.expect_end()?;
    let rec = Recording {
        sample_rate,
        samples,
        trials,
    };
    rec.validate()?;
    Ok(rec)
}

pub fn recording_to_csv(rec: &Recording) -> String {
    let mut out = String::from("t");
    for ch in 0..rec.channel_count() {
        let _ = write!(out, ",ch{ch}");
    }
    out.push_str(",label\n");
    let mut trials = rec.trials.iter().peekable();
    for i in 0..rec.len() {
        while trials.peek().is_some_and(|t| t.end <= i) {
            trials.next();
        }
        let _ = write!(out, "{:?}", i as f64 / rec.sample_rate as f64);
        for ch in &rec.samples {
            let _ = write!(out, ",{:?}", ch[i]);
        }
        out.push(',');
        if let Some(t) = trials.peek().filter(|t| t.start <= i) {
            out.push_str(&t.label.name);
        }
        out.push('\n');
    }
    out
}

/// Parses the CSV form. Label names from the standard motion set keep their
/// standard ids; other names get ids after it, in order of appearance.
pub fn recording_from_csv(text: &str) -> Result<Recording> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| MyoError::Truncated("empty CSV".into()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let channels = cols.len().saturating_sub(2);
    let expected: Vec<String> = std::iter::once("t".to_string())
        .chain((0..channels).map(|c| format!("ch{c}")))
        .chain(std::iter::once("label".to_string()))
        .collect();
    if channels == 0 || cols != expected {
        return Err(MyoError::Parse {
            line: 1,
            msg: format!("expected header `t,ch0,...,label`, got `{header}`"),
        });
    }

    let mut times = Vec::new();
    let mut samples = vec![Vec::new(); channels];
    let mut labels: Vec<String> = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let err = |msg: String| MyoError::Parse { line: i + 1, msg };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != channels + 2 {
            return Err(err(format!("expected {} fields, got {}", channels + 2, fields.len())));
        }
        times.push(fields[0].trim().parse::<f64>().map_err(|_| err("bad time".into()))?);
        for (ch, f) in samples.iter_mut().zip(&fields[1..=channels]) {
            ch.push(f.trim().parse::<f32>().map_err(|_| err(format!("bad sample `{f}`")))?);
        }
        labels.push(fields[channels + 1].trim().to_string());
    }
    if times.len() < 2 {
        return Err(MyoError::Truncated("CSV needs at least two samples to infer the rate".into()));
    }
    let rate = (1.0 / (times[1] - times[0])).round();
    if !(rate.is_finite() && rate >= 1.0 && rate <= u32::MAX as f64) {
        return Err(MyoError::Parse {
            line: 3,
            msg: "cannot infer sample rate from `t`".into(),
        });
    }

    let mut extra: Vec<String> = Vec::new();
    let mut resolve = |name: &str| -> MotionLabel {
        standard_label(name)
            .filter(|l| l.name == name)
            .unwrap_or_else(|| {
                let pos = extra.iter().position(|e| e == name).unwrap_or_else(|| {
                    extra.push(name.to_string());
                    extra.len() - 1
                });
                MotionLabel::new((STANDARD_MOTIONS.len() + pos) as u16, name)
            })
    };
    let mut trials = Vec::new();
    let mut i = 0;
    while i < labels.len() {
        if labels[i].is_empty() {
            i += 1;
            continue;
        }
        let start = i;
        while i < labels.len() && labels[i] == labels[start] {
            i += 1;
        }
        trials.push(Trial {
            start,
            end: i,
            label: resolve(&labels[start]),
        });
    }
    let rec = Recording {
        sample_rate: rate as u32,
        samples,
        trials,
    };
    rec.validate()?;
    Ok(rec)
}

/// Reads a binary recording, or CSV when the file does not start with the
/// binary magic but does start with a CSV header.
pub fn load_recording(path: impl AsRef<Path>) -> Result<Recording> {
    let mut bytes = Vec::new();
    File::open(path.as_ref())?.read_to_end(&mut bytes)?;
    if bytes.starts_with(b"t,") {
        let text = String::from_utf8(bytes).map_err(|_| MyoError::Parse {
            line: 0,
            msg: "CSV is not valid UTF-8".into(),
        })?;
        return recording_from_csv(&text);
    }
    read_recording(bytes.as_slice())
}

/// Writes CSV for a `.csv` path, binary otherwise.
pub fn save_recording(rec: &Recording, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        rec.validate()?;
        std::fs::write(path, recording_to_csv(rec))?;
        Ok(())
    } else {
        write_recording(rec, BufWriter::new(File::create(path)?))
    }
}
