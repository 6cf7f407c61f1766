//! Flat `key = value` configuration files.
//!
//! ```text
//! # acquisition
//! sample_rate = 1000
//! channels = 8
//! window_len_ms = 200
//! window_shift_ms = 75
//! bp_low_hz = 10
//! bp_high_hz = 450
//! bp_order = 3
//! notch_hz = 50
//! notch_q = 30
//! pooling = sum
//! ```
//! Every key is optional; missing keys keep their defaults.

use std::path::Path;

use crate::dsp::StreamConfig;
use crate::error::{MyoError, Result};
use crate::lda::Pooling;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Config {
    pub stream: StreamConfig,
    pub pooling: Pooling,
}

impl Config {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut config = Config::default();
        let mut window_len_ms = None;
        let mut window_shift_ms = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| MyoError::Parse { line: i + 1, msg };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let num = || -> Result<f64> {
                value
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| err(format!("`{key}` needs a number, got `{value}`")))
            };
            let int = || -> Result<usize> {
                value
                    .parse::<usize>()
                    .map_err(|_| err(format!("`{key}` needs a non-negative integer, got `{value}`")))
            };
            let s = &mut config.stream;
            match key {
                "sample_rate" => {
                    s.sample_rate = u32::try_from(int()?)
                        .map_err(|_| err(format!("sample_rate {value} is too large")))?
                }
                "channels" => s.channel_count = int()?,
                "window_len_ms" => window_len_ms = Some(num()?),
                "window_shift_ms" => window_shift_ms = Some(num()?),
                "bp_low_hz" => s.bandpass.low_hz = num()?,
                "bp_high_hz" => s.bandpass.high_hz = num()?,
                "bp_order" => s.bandpass.order = int()?,
                "notch_hz" => s.notch.center_hz = num()?,
                "notch_q" => s.notch.q = num()?,
                "pooling" => config.pooling = value.parse()?,
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let rate = config.stream.sample_rate as f64;
        let to_samples = |ms: f64| (ms * rate / 1000.0).round() as usize;
        if let Some(ms) = window_len_ms {
            config.stream.window_len = to_samples(ms);
        } else {
            config.stream.window_len = to_samples(200.0);
        }
        if let Some(ms) = window_shift_ms {
            config.stream.window_shift = to_samples(ms);
        } else {
            config.stream.window_shift = to_samples(75.0);
        }
        config.stream.validate()?;
        Ok(config)
    }

    pub fn to_text(&self) -> String {
        let s = &self.stream;
        format!(
            "sample_rate = {}\nchannels = {}\nwindow_len_ms = {}\nwindow_shift_ms = {}\n\
             bp_low_hz = {}\nbp_high_hz = {}\nbp_order = {}\nnotch_hz = {}\nnotch_q = {}\npooling = {}\n",
            s.sample_rate,
            s.channel_count,
            s.window_ms(),
            s.shift_ms(),
            s.bandpass.low_hz,
            s.bandpass.high_hz,
            s.bandpass.order,
            s.notch.center_hz,
            s.notch.q,
            self.pooling
        )
    }
}
