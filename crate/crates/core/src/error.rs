use thiserror::Error;

use crate::exactreal::SymbolId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no witness value declared for symbol `{0}`")]
    MissingWitness(SymbolId),

    #[error("comparison undecidable after {depth} refinements: {what}")]
    Undecidable { depth: u32, what: String },

    #[error("duplicate symbols in construction: {0}")]
    DuplicateSymbols(String),

    #[error("unsupported family for this operation: {0}")]
    UnsupportedFamily(String),

    #[error("product of `{left}` and `{right}` cannot be expressed")]
    UnsupportedProduct { left: String, right: String },

    #[error("branch limit of {0} search nodes exceeded")]
    BranchLimit(u64),

    #[error("input set is not orthogonal: {0}")]
    NotOrthogonal(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("exhaustive bound exceeded: {needed} tests needed, limit is {limit}")]
    BoundExceeded { needed: u128, limit: u128 },

    #[error("outside the formula's domain: {0}")]
    DomainError(String),

    #[error("parse error: {0}")]
    Parse(String),
}
