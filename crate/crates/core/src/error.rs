use std::fmt;

use thiserror::Error;

/// Parameter guard that rejected a context.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    /// t > 0, every alpha > 0.
    Positivity,
    /// q must differ from 1.
    Lattice,
    /// alphas pairwise distinct.
    Distinctness,
    /// alpha_i / alpha_j must avoid q^k for |k| <= K_RATIO.
    Ratio,
    /// alpha_i q (1 - q) < 1 for convergent measure sums when 0 < q < 1.
    Convergence,
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Guard::Positivity => "positivity",
            Guard::Lattice => "lattice",
            Guard::Distinctness => "distinctness",
            Guard::Ratio => "ratio",
            Guard::Convergence => "convergence",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to negative power {0}")]
    ZeroToNegativePower(i64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("{guard} guard violated: {detail}")]
    Validation { guard: Guard, detail: String },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("operation requires r = {expected}, context has r = {actual}")]
    WrongArity { expected: usize, actual: usize },
    #[error("singular orthogonality system for multi-index {0}")]
    SingularSystem(String),
    #[error("internal invariant broken: {0}")]
    Invariant(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("q-Gamma pole at s = {0}")]
    Pole(f64),
    #[error("function leaves the closed lattice-function class: {0}")]
    NotInClass(&'static str),
    #[error("basis mismatch: expected {0}")]
    Basis(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
