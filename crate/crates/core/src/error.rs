use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("cannot evaluate a Laurent expression at q = 0")]
    ZeroBase,
    #[error("NotIrreducibleFlag: simple root {node} has coefficient {coefficient} in the highest root of {label}")]
    NotIrreducibleFlag {
        label: String,
        node: usize,
        coefficient: i64,
    },
    #[error("element is not in the positive root cone")]
    NotInPositiveCone,
    #[error("weight {0} is not dominant")]
    NonDominantWeight(String),
    #[error("isotypic decomposition does not exhaust the module (rank {rank} of {dim})")]
    DecompositionIncomplete { rank: usize, dim: usize },
    #[error("braiding propagation failed at basis vector {0}")]
    PropagationFailure(usize),
    #[error("input is not a submodule: {0}")]
    NotASubmodule(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("filtration degrees are not set on this algebra")]
    FiltrationUnset,
    #[error("relation space {name} has dimension {got}, expected {expected}")]
    RankMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("relation is not homogeneous for the generator grading")]
    NotHomogeneous,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
