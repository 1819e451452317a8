use thiserror::Error;

use crate::structure::ValidationReport;

/// Errors produced by the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("algebra validation failed:\n{0}")]
    Validation(ValidationReport),

    #[error("vector at depth {needed} exceeds constructed depth {depth}")]
    DepthExceeded { needed: usize, depth: usize },

    #[error("weight must be real: coordinate {index} is {value}")]
    NonRealWeight { index: usize, value: String },

    #[error("coroot requires an even root; `{0}` is odd")]
    OddCoroot(String),

    #[error("not a root of the algebra: {0}")]
    NotARoot(String),

    #[error("operation requires a numeric highest weight")]
    SymbolicWeight,

    #[error("division by zero or by a non-scalar element")]
    DivisionByNonScalar,

    #[error("k-type table has no entry for character {0}")]
    MissingKType(String),

    #[error("operation is only defined for {0}")]
    WrongAlgebra(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
