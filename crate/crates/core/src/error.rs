use thiserror::Error;

use crate::graph::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("paths are not composable: range `{range}` differs from source `{source_vertex}`")]
    NotComposable { range: String, source_vertex: String },
    #[error("monomial ranges differ: `{0}` vs `{1}`")]
    RangeMismatch(String, String),
    #[error("scalars belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("invalid graph: {}", format_violations(.0))]
    InvalidGraph(Vec<Violation>),
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("vertex set is not hereditary")]
    NotHereditary,
    #[error("vertex set is not saturated")]
    NotSaturated,
    #[error("invalid admissible pair: {0}")]
    InvalidPair(String),
    #[error("`{0}` is not a breaking vertex")]
    NotBreaking(String),
    #[error("index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("element is not homogeneous of degree {0}")]
    NotHomogeneous(i64),
    #[error("element is not in the requested matrix component")]
    NotInComponent,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("graph is not a single simple closed path")]
    NotACycle,
    #[error("element is zero")]
    ZeroElement,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
