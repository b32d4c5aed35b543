use thiserror::Error;

/// Errors raised by state construction, operator building and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("squeeze magnitude must be non-negative, got {0} (encode negative real z as r = |z|, phi = pi)")]
    NegativeSqueeze(f64),

    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("displaced-number form requires r = 0, got r = {0}")]
    SqueezeNotZero(f64),

    #[error("degenerate evolution factor at t = {t}: |B| = {b_abs:e}")]
    DegenerateEvolution { t: f64, b_abs: f64 },

    #[error("matrix norm {norm} exceeds the exponential limit {limit}")]
    NormTooLarge { norm: f64, limit: f64 },

    #[error("truncation guard violated: {0}")]
    TruncationGuard(String),

    #[error("truncation leakage {leakage:e} exceeds limit {limit:e}")]
    LeakageTooLarge { leakage: f64, limit: f64 },

    #[error("integration window too small: endpoint density {tail:e} exceeds {limit:e}")]
    WindowTooSmall { tail: f64, limit: f64 },

    #[error("row {row} of the density surface integrates to {integral} over the grid window")]
    RowNormalization { row: usize, integral: f64 },
}

impl Error {
    /// True for errors caused by malformed input parameters, as opposed to
    /// numerical guards tripping on otherwise valid input.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. }
                | Error::NegativeSqueeze(_)
                | Error::InvalidQuadrature(_)
                | Error::InvalidGrid(_)
                | Error::InvalidParameter(_)
                | Error::SqueezeNotZero(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
