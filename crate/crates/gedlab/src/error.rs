use thiserror::Error;

/// Errors surfaced by the engine.
///
/// The split matters for callers: `InvalidInput` is a usage problem,
/// `NonIntegerValue` / `Inconsistency` signal an internal mathematical
/// contradiction that must abort the computation, and `Budget` is a guard
/// against requests that exceed the configured desk-scale limits.
#[derive(Debug, Error)]
pub enum GedError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An intersection number or Chern coefficient that the theory requires
    /// to be an integer came out fractional.
    #[error("non-integer {what}: {value}")]
    NonIntegerValue { what: String, value: String },

    /// Two routes that must agree exactly did not, or a sign/positivity
    /// guarantee failed.
    #[error("mathematical inconsistency: {0}")]
    Inconsistency(String),

    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl GedError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        GedError::InvalidInput(msg.into())
    }
}
