use crate::dsp::Window;
use crate::error::{MyoError, Result};
use crate::label::MotionLabel;

/// Per-channel circular sample store that cuts overlapping analysis windows.
///
/// Windows start at `0, shift, 2*shift, ...` (relative to the first pushed
/// sample) and are yielded as soon as their last sample has been written.
/// A push that would overwrite a complete but undrained window fails with
/// an overrun instead of silently skipping it.
#[derive(Debug, Clone)]
pub struct RingBuffer {
    channels: usize,
    capacity: usize,
    window_len: usize,
    window_shift: usize,
    storage: Vec<Vec<f64>>,
    write_index: u64,
    next_start: u64,
    label: Option<MotionLabel>,
}

impl RingBuffer {
    pub fn new(
        channels: usize,
        capacity: usize,
        window_len: usize,
        window_shift: usize,
    ) -> Result<Self> {
        if channels == 0 {
            return Err(MyoError::Config("channel count must be at least 1".into()));
        }
        if window_shift == 0 || window_shift > window_len {
            return Err(MyoError::Config(format!(
                "window shift {window_shift} must be in 1..={window_len}"
            )));
        }
        if capacity < window_len {
            return Err(MyoError::Config(format!(
                "ring capacity {capacity} is smaller than the window length {window_len}"
            )));
        }
        Ok(Self {
            channels,
            capacity,
            window_len,
            window_shift,
            storage: vec![vec![0.0; capacity]; channels],
            write_index: 0,
            next_start: 0,
            label: None,
        })
    }

    /// Capacity of one window plus one hop.
    pub fn with_default_capacity(
        channels: usize,
        window_len: usize,
        window_shift: usize,
    ) -> Result<Self> {
        Self::new(channels, window_len + window_shift, window_len, window_shift)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Total samples (per channel) written so far.
    pub fn write_index(&self) -> u64 {
        self.write_index
    }

    /// Label stamped on windows yielded from now on.
    pub fn set_label(&mut self, label: Option<MotionLabel>) {
        self.label = label;
    }

    pub fn push_frame(&mut self, frame: &[f64]) -> Result<()> {
        if frame.len() != self.channels {
            return Err(MyoError::Dimension {
                expected: self.channels,
                got: frame.len(),
            });
        }
        let cap = self.capacity as u64;
        if self.write_index >= cap && self.next_start <= self.write_index - cap {
            return Err(MyoError::InsufficientData(format!(
                "ring buffer overrun: window at {} not drained before sample {}",
                self.next_start, self.write_index
            )));
        }
        let slot = (self.write_index % cap) as usize;
        for (store, &x) in self.storage.iter_mut().zip(frame) {
            store[slot] = x;
        }
        self.write_index += 1;
        Ok(())
    }

    pub fn next_window(&mut self) -> Option<Window> {
        let len = self.window_len as u64;
        if self.next_start + len > self.write_index {
            return None;
        }
        let cap = self.capacity as u64;
        let samples = self
            .storage
            .iter()
            .map(|store| {
                (self.next_start..self.next_start + len)
                    .map(|i| store[(i % cap) as usize])
                    .collect()
            })
            .collect();
        let window = Window {
            samples,
            start_index: self.next_start,
            label: self.label.clone(),
        };
        self.next_start += self.window_shift as u64;
        Some(window)
    }

    /// Drains every window that is complete.
    pub fn segment(&mut self) -> Vec<Window> {
        std::iter::from_fn(|| self.next_window()).collect()
    }
}

/// Number of windows a stream of `n` samples produces.
pub fn window_count(n: usize, window_len: usize, window_shift: usize) -> usize {
    if n < window_len {
        0
    } else {
        (n - window_len) / window_shift + 1
    }
}
