use thiserror::Error;

pub type Result<T> = std::result::Result<T, MyoError>;

#[derive(Debug, Error)]
pub enum MyoError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("window too short: {len} samples, need at least {min}")]
    WindowTooShort { len: usize, min: usize },

    #[error("unsupported spectral moment order {0} (expected 0, 2 or 4)")]
    UnsupportedOrder(usize),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("model error: {0}")]
    Model(String),

    #[error("pooled covariance is singular even with ridge {ridge:e}")]
    Singular { ridge: f64 },

    #[error("calibration error: {0}")]
    Calibration(String),

    #[error("unknown label: {0}")]
    UnknownLabel(String),

    #[error("bad magic: expected {expected:?}, found {found:?}")]
    BadMagic { expected: [u8; 4], found: [u8; 4] },

    #[error("truncated file: {0}")]
    Truncated(String),

    #[error("unsupported format version {found} (supported: {supported})")]
    UnsupportedVersion { found: u16, supported: u16 },

    #[error("{0} unexpected trailing bytes")]
    TrailingBytes(usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("script error: {0}")]
    Script(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
