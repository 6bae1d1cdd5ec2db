use thiserror::Error;

use crate::magnus::Valuation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{0} is not a prime below 65536")]
    NonPrime(u64),
    #[error("zero exponent at line {line}, column {col}")]
    ZeroExponent { line: usize, col: usize },
    #[error("unknown generator `{name}` at line {line}, column {col}")]
    UnknownGenerator { name: String, line: usize, col: usize },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("relator {0} reduces to the identity")]
    TrivialRelator(usize),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("generator index {index} out of range for {count} generators")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("series has constant term {0}, expected 1")]
    NotUnit(u16),
    #[error("valuation {valuation} exceeds truncation {truncation}; raise N")]
    ValuationExceedsTruncation { valuation: Valuation, truncation: usize },
    #[error("guardrail refused: {0}")]
    Guardrail(String),
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("inconsistent simplicial module: {0}")]
    InconsistentModule(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn is_guardrail(&self) -> bool {
        matches!(self, Error::Guardrail(_))
    }
}
