use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid orbit: {0}")]
    InvalidOrbit(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is not unitary (defect {defect:e} exceeds {tolerance:e})")]
    NonUnitary { defect: f64, tolerance: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("truth table is not symmetric: inputs {first} and {second} have equal weight but different outputs")]
    NotSymmetric { first: String, second: String },

    #[error("weight-0 output is {found}, but U(0) = I fixes the all-zeros state")]
    InitialStateMismatch { found: String },

    #[error("outputs by weight are not embeddable in a single cycle: {0}")]
    NonEmbeddable(String),

    #[error("parse error{}: {message}", row_suffix(*row))]
    Parse { row: Option<usize>, message: String },

    #[error("validation error{}: {message}", row_suffix(*row))]
    Validation { row: Option<usize>, message: String },
}

fn row_suffix(row: Option<usize>) -> String {
    match row {
        Some(r) => format!(" at row {r}"),
        None => String::new(),
    }
}
