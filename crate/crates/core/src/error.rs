use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("table size {requested} out of range (must be 1..={cap})")]
    Size { requested: u64, cap: u64 },

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("pole at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("outside domain: {0}")]
    Domain(String),

    #[error("root refinement failed on bracket [{lo}, {hi}]: {reason}")]
    Convergence { lo: f64, hi: f64, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("degenerate case: {0}")]
    Degenerate(String),

    #[error("contour residue unstable at center {re} + {im}i: radius halving moved the result by {delta:e}")]
    Instability { re: f64, im: f64, delta: f64 },

    #[error("missing data: {0}")]
    Data(String),

    #[error("numerical check failed: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn pole(s: num_complex::Complex64) -> Self {
        Error::Pole { re: s.re, im: s.im }
    }
}
