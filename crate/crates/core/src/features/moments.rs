use crate::error::{MyoError, Result};

/// Below this, `m0` or `m2` (and the peak ratio) count as zero.
pub const DEGENERATE_EPS: f64 = 1e-12;

/// Backward difference applied `n` times: `y[j] = x[j+1] - x[j]`.
pub fn difference(signal: &[f64], n: usize) -> Result<Vec<f64>> {
    if signal.len() <= n {
        return Err(MyoError::WindowTooShort {
            len: signal.len(),
            min: n + 1,
        });
    }
    let mut out = signal.to_vec();
    for _ in 0..n {
        out = out.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Ok(out)
}

fn root_sum_square(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Root-sum-square moments of a window and its first two differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub m0: f64,
    pub m2: f64,
    pub m4: f64,
    /// `m4 / m2`, the squared peak-count surrogate.
    pub sigma: f64,
    /// `m2 / m0`, the squared zero-crossing surrogate.
    pub theta: f64,
    pub degenerate: bool,
}

pub fn moments(signal: &[f64]) -> Result<MomentSet> {
    if signal.len() < 3 {
        return Err(MyoError::WindowTooShort {
            len: signal.len(),
            min: 3,
        });
    }
    let d1 = difference(signal, 1)?;
    let d2 = difference(&d1, 1)?;
    let m0 = root_sum_square(signal);
    let m2 = root_sum_square(&d1);
    let m4 = root_sum_square(&d2);
    let degenerate = m0 <= DEGENERATE_EPS || m2 <= DEGENERATE_EPS;
    let (sigma, theta) = if degenerate {
        (0.0, 0.0)
    } else {
        (m4 / m2, m2 / m0)
    };
    Ok(MomentSet {
        m0,
        m2,
        m4,
        sigma,
        theta,
        degenerate,
    })
}

/// The four per-channel features, in vector order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AtdmFeatures {
    /// Peak average power, `m0 / sigma`.
    pub pap: f64,
    /// Zero-crossing average power, `m0 / theta`.
    pub zcap: f64,
    /// Waveform length of the first difference.
    pub mwl: f64,
    /// Difference between moments, `m0 - m2`.
    pub dbm: f64,
    pub degenerate: bool,
}

impl AtdmFeatures {
    pub const COUNT: usize = 4;
    pub const NAMES: [&'static str; 4] = ["pap", "zcap", "mwl", "dbm"];

    pub fn as_array(&self) -> [f64; 4] {
        [self.pap, self.zcap, self.mwl, self.dbm]
    }
}

pub fn atdm(signal: &[f64]) -> Result<AtdmFeatures> {
    let m = moments(signal)?;
    // A pure ramp has m4 = 0, which would put a zero under PAP.
    if m.degenerate || m.sigma <= DEGENERATE_EPS {
        return Ok(AtdmFeatures {
            degenerate: true,
            ..AtdmFeatures::default()
        });
    }
    let d1 = difference(signal, 1)?;
    let mwl = d1.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    Ok(AtdmFeatures {
        pap: m.m0 / m.sigma,
        zcap: m.m0 / m.theta,
        mwl,
        dbm: m.m0 - m.m2,
        degenerate: false,
    })
}
