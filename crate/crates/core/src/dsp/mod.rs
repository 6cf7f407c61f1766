//! Streaming front end: band-pass + notch filtering and overlapped windowing.

mod biquad;
mod ring;

pub use biquad::{
    design_bandpass, design_notch, BandpassDesign, Biquad, BiquadCascade, ClampWarning,
    NYQUIST_CLAMP,
};
pub use ring::{window_count, RingBuffer};

use crate::error::{MyoError, Result};
use crate::label::MotionLabel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandpassSpec {
    pub low_hz: f64,
    pub high_hz: f64,
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NotchSpec {
    pub center_hz: f64,
    pub q: f64,
}

/// Acquisition and windowing parameters. Window geometry is in samples.
#[derive(Debug, Clone, PartialEq)]
pub struct StreamConfig {
    pub sample_rate: u32,
    pub channel_count: usize,
    pub window_len: usize,
    pub window_shift: usize,
    pub bandpass: BandpassSpec,
    pub notch: NotchSpec,
}

impl Default for StreamConfig {
    fn default() -> Self {
        Self {
            sample_rate: 1000,
            channel_count: 8,
            window_len: 200,
            window_shift: 75,
            bandpass: BandpassSpec {
                low_hz: 10.0,
                high_hz: 450.0,
                order: 3,
            },
            notch: NotchSpec {
                center_hz: 50.0,
                q: 30.0,
            },
        }
    }
}

impl StreamConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sample_rate == 0 {
            return Err(MyoError::Config("sample_rate must be positive".into()));
        }
        if self.channel_count == 0 {
            return Err(MyoError::Config("channel count must be at least 1".into()));
        }
        if self.window_shift == 0 || self.window_shift > self.window_len {
            return Err(MyoError::Config(format!(
                "window shift {} must be in 1..={}",
                self.window_shift, self.window_len
            )));
        }
        let nyquist = 0.5 * self.sample_rate as f64;
        let bp = &self.bandpass;
        if !(bp.low_hz > 0.0 && bp.low_hz < bp.high_hz && bp.low_hz < nyquist) {
            return Err(MyoError::Config(format!(
                "band-pass edges {}..{} Hz are invalid at {} SPS",
                bp.low_hz, bp.high_hz, self.sample_rate
            )));
        }
        if bp.order == 0 {
            return Err(MyoError::Config("band-pass order must be at least 1".into()));
        }
        if !(self.notch.center_hz > 0.0 && self.notch.center_hz < nyquist) || !(self.notch.q > 0.0)
        {
            return Err(MyoError::Config(format!(
                "notch {} Hz / q {} is invalid at {} SPS",
                self.notch.center_hz, self.notch.q, self.sample_rate
            )));
        }
        Ok(())
    }

    pub fn window_ms(&self) -> f64 {
        1000.0 * self.window_len as f64 / self.sample_rate as f64
    }

    pub fn shift_ms(&self) -> f64 {
        1000.0 * self.window_shift as f64 / self.sample_rate as f64
    }

    /// The band-pass and notch designs, separately.
    pub fn design_filters(&self) -> Result<(BandpassDesign, BiquadCascade)> {
        self.validate()?;
        let fs = self.sample_rate as f64;
        let bp = design_bandpass(fs, self.bandpass.low_hz, self.bandpass.high_hz, self.bandpass.order)?;
        let notch = design_notch(fs, self.notch.center_hz, self.notch.q)?;
        Ok((bp, notch))
    }

    /// Band-pass followed by notch, with state for every channel.
    pub fn filter_bank(&self) -> Result<BiquadCascade> {
        let (bp, notch) = self.design_filters()?;
        bp.cascade.chain(&notch)?.for_channels(self.channel_count)
    }

    pub fn dump_filters(&self) -> Result<String> {
        let (bp, notch) = self.design_filters()?;
        let mut out = bp.cascade.dump("bandpass");
        out.push_str(&notch.dump("notch"));
        Ok(out)
    }

    pub fn ring_buffer(&self) -> Result<RingBuffer> {
        RingBuffer::with_default_capacity(self.channel_count, self.window_len, self.window_shift)
    }
}

/// One `channel_count x window_len` block of filtered samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub samples: Vec<Vec<f64>>,
    pub start_index: u64,
    pub label: Option<MotionLabel>,
}

impl Window {
    pub fn channel_count(&self) -> usize {
        self.samples.len()
    }

    pub fn len(&self) -> usize {
        self.samples.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Mean absolute amplitude over all channels and samples.
    pub fn mean_abs(&self) -> f64 {
        let n: usize = self.samples.iter().map(Vec::len).sum();
        if n == 0 {
            return 0.0;
        }
        self.samples.iter().flatten().map(|x| x.abs()).sum::<f64>() / n as f64
    }

    pub fn check_dims(&self, config: &StreamConfig) -> Result<()> {
        if self.channel_count() != config.channel_count {
            return Err(MyoError::Dimension {
                expected: config.channel_count,
                got: self.channel_count(),
            });
        }
        if let Some(bad) = self.samples.iter().find(|c| c.len() != config.window_len) {
            return Err(MyoError::Dimension {
                expected: config.window_len,
                got: bad.len(),
            });
        }
        Ok(())
    }
}

/// Filter + ring buffer, fed one raw frame per sample tick.
#[derive(Debug, Clone)]
pub struct Pipeline {
    filters: BiquadCascade,
    ring: RingBuffer,
    scratch: Vec<f64>,
}

impl Pipeline {
    pub fn new(config: &StreamConfig) -> Result<Self> {
        Ok(Self {
            filters: config.filter_bank()?,
            ring: config.ring_buffer()?,
            scratch: vec![0.0; config.channel_count],
        })
    }

    pub fn set_label(&mut self, label: Option<MotionLabel>) {
        self.ring.set_label(label);
    }

    /// Filters one frame and buffers it; returns a window when one completes.
    pub fn feed(&mut self, frame: &[f64]) -> Result<Option<Window>> {
        self.filter(frame)?;
        self.buffer()?;
        Ok(self.ring.next_window())
    }

    /// Filtering stage only; the result stays in the scratch frame.
    pub fn filter(&mut self, frame: &[f64]) -> Result<()> {
        if frame.len() != self.scratch.len() {
            return Err(MyoError::Dimension {
                expected: self.scratch.len(),
                got: frame.len(),
            });
        }
        self.scratch.copy_from_slice(frame);
        self.filters.process_frame(&mut self.scratch)
    }

    /// Buffering stage: pushes the last filtered frame into the ring.
    pub fn buffer(&mut self) -> Result<()> {
        self.ring.push_frame(&self.scratch)
    }

    pub fn next_window(&mut self) -> Option<Window> {
        self.ring.next_window()
    }
}
