use thiserror::Error;

/// Errors surfaced by the fallible public operations.
///
/// Scalar-mode mismatches inside arithmetic hot paths are treated as contract
/// violations and panic instead; the fallible surface validates inputs where
/// foreign data enters (deserialization, CLI, operator pipelines).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid q parameter: {0}")]
    InvalidQ(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate denominator {denom} for {op} at mode {mode}")]
    DegenerateMode {
        mode: i64,
        denom: String,
        op: &'static str,
    },

    #[error("geometric expansion does not converge at mode {mode} (ratio magnitude {ratio})")]
    DivergentMode { mode: i64, ratio: f64 },

    #[error("scalar mode mismatch in {0}")]
    ModeMismatch(&'static str),

    #[error("expected {expected} mode in {context}")]
    WrongMode {
        expected: &'static str,
        context: &'static str,
    },

    #[error("non-finite state at step {step}, t = {t}")]
    NonFinite { step: u64, t: f64 },

    #[error("dt = {dt} exceeds stability advisory dt_max = {dt_max}; rerun with the override flag to proceed anyway")]
    StabilityAdvisory { dt: f64, dt_max: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
