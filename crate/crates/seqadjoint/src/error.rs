//! Error type shared by all solvers and model builders.

use thiserror::Error;

/// Errors produced by forward solves, gradient engines and model builders.
#[derive(Debug, Error)]
pub enum Error {
    /// A vector or matrix had the wrong extent for the operation.
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    /// A state, summand or derivative stopped being finite.
    #[error("non-finite value at index {index} while computing {context}")]
    NonFinite { context: &'static str, index: usize },

    /// The horizon N was zero; every recursion here needs at least one step.
    #[error("horizon must be at least 1 (got {0})")]
    EmptyHorizon(usize),

    /// Requested a built-in that is not registered.
    #[error("unknown built-in `{0}`")]
    UnknownBuiltin(String),

    /// A configuration value was missing or out of range; the message names
    /// the offending field.
    #[error("invalid configuration: field `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },

    /// The unscaled forward pass produced a zero marginal likelihood.
    #[error(
        "marginal likelihood underflowed to zero at observation {index}; \
         use scaled_log_likelihood for long sequences"
    )]
    LikelihoodUnderflow { index: usize },

    /// A per-step normalizer of the scaled forward pass was zero, which means
    /// an observation has probability zero under every hidden state.
    #[error("zero normalizer at observation {index} (impossible observation)")]
    ZeroNormalizer { index: usize },

    /// Path enumeration would visit more than the allowed number of paths.
    #[error("state space too large to enumerate: {paths} paths exceeds limit {limit}")]
    EnumerationTooLarge { paths: f64, limit: f64 },

    /// A finite-difference probe produced a non-finite functional value.
    #[error("non-finite functional value while perturbing component {component}")]
    NonFiniteProbe { component: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
