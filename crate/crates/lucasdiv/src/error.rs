use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// The pair `(a, b)` is outside the admissible parameter set.
    #[error("invalid Lucas parameters (a={a}, b={b}): {reason}")]
    InvalidParams { a: i64, b: i64, reason: String },

    /// An argument violated an operation precondition.
    #[error("rejected input: {0}")]
    RejectedInput(String),

    /// A bounded search exhausted its cap without a certified answer.
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),

    /// Numerical precision was insufficient to separate a near-miss from an
    /// exact equality; the caller should retry with higher precision.
    #[error("precision {0} bits insufficient to certify; retry higher")]
    PrecisionInsufficient(u32),

    /// A grid scan produced a record violating the theorem bound.
    #[error("bound violation at (a={a}, b={b}, k={k}, m={m})")]
    BoundViolation { a: i64, b: i64, k: u64, m: u64 },

    /// A checkpoint does not match the scan configuration it is resumed under.
    #[error("checkpoint mismatch: {0}")]
    CheckpointMismatch(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
