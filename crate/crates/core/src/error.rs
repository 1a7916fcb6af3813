use thiserror::Error;

/// Errors raised by the numeric core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("abscissa decreases at input row {row}")]
    DecreasingAbscissa { row: usize },
    #[error("function has zero length (constant)")]
    ZeroLength,
    #[error("warp is not strictly increasing and has no inverse")]
    NotInvertible,
    #[error("invalid warp: {0}")]
    InvalidWarp(String),
    #[error("slope of base function is not positive on cell {cell}")]
    NotPositiveSlope { cell: usize },
    #[error("functions disagree at zero: {left} vs {right}")]
    BasepointMismatch { left: f64, right: f64 },
    #[error("cantor level {0} exceeds the exact-arithmetic bound")]
    LevelTooDeep(u32),
    #[error("invalid interval ({lo}, {hi})")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
