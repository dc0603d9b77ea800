use thiserror::Error;

/// Errors produced by the library.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Error)]
pub enum Error {
    #[error("time {t} lies outside [{lo}, {hi}]")]
    Domain { t: f64, lo: f64, hi: f64 },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("integration step underflow at t = {t} (u = {u}, v = {v}, h = {h})")]
    StepUnderflow { t: f64, u: f64, v: f64, h: f64 },

    #[error("{what}: bracket expansion exceeded |a| = {limit}")]
    NotFound { what: String, limit: f64 },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
