//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the transforms and their supporting machinery.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands live on incompatible grids or charts.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A grid or matrix would exceed the configured sample cap.
    #[error("size {requested} exceeds configured cap {cap}")]
    SizeCap { requested: usize, cap: usize },

    /// Input outside the supported domain (phantom component outside the
    /// box, slope outside the chart, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Multiplier evaluated at zero frequency with a singular exponent.
    #[error("singular multiplier evaluation at c = 0 (use the regularized eval with an epsilon floor)")]
    SingularAtZero,

    /// Spectral parameter outside the range the analytic continuation covers.
    #[error("lambda out of supported range: {0}")]
    LambdaRange(String),

    /// Degenerate quantity where a nonzero reference value is required.
    #[error("degenerate value: {0}")]
    Degenerate(String),

    /// A stated hypothesis of a formula is violated by the input.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// Discretization failed to meet its own consistency requirement.
    #[error("construction failed: {0}")]
    Construction(String),

    /// Malformed serialized data.
    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
