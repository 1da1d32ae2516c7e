use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("interval is empty: {0}")]
    EmptyInterval(String),

    #[error("operation requires a nonempty family")]
    EmptyFamily,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The bound formulas assume `n >= k >= d >= 1`.
    #[error("parameter order violated: need n >= k >= d >= 1, got n={n}, k={k}, d={d}")]
    ParameterOrder { n: usize, k: usize, d: usize },

    /// The caller claimed no `k + 1` boxes share a point, but some do.
    #[error("hypothesis violated: measured depth {depth} exceeds k = {k}")]
    HypothesisViolated { depth: usize, k: usize },

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),
}
