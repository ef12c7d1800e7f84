use thiserror::Error;

use crate::measure::Axis;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input: shapes, ranges, CSV content.
    Validation,
    /// Inputs are well formed but the numerics cannot proceed.
    Domain,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry count {found} does not match {rows}x{cols}")]
    EntryCount {
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is not Hermitian: max |M - M^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },
    #[error("trace is {trace}, expected 1 (deviation {deviation:e})")]
    NotUnitTrace { trace: f64, deviation: f64 },
    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),
    #[error("q-logarithm requires x > 0, got {0}")]
    LogDomain(f64),
    #[error("q = {0} is unsupported; bounds are only known for q in (0, 2]")]
    UnsupportedQ(f64),
    #[error("expected 1 to 3 measurement settings, got {0}")]
    SettingCount(usize),
    #[error("measurement axis {0} appears more than once")]
    DuplicateAxis(Axis),
    #[error("count record for axis {0} is empty")]
    EmptyRecord(Axis),
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("missing row: setting {setting}, outcome {outcome}")]
    MissingRow {
        setting: Axis,
        outcome: &'static str,
    },
    #[error("{criterion} profile is not strictly monotone in chi on [0, 1]")]
    NonMonotone { criterion: String },
    #[error("Jacobi iteration did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::UnsupportedQ(_)
            | Error::NonMonotone { .. }
            | Error::NoConvergence { .. }
            | Error::LogDomain(_) => ErrorKind::Domain,
            _ => ErrorKind::Validation,
        }
    }
}
