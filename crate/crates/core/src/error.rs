use thiserror::Error;

use crate::exactlat::IntVec;

/// Triple `(B1, B2, b1)` for which no exchange partner exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeViolation {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub element: usize,
}

/// Witness `(a, c, i)` with `a_i > c_i` and no admissible `j`. `coordinate` is 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolymatroidViolation {
    pub a: IntVec,
    pub c: IntVec,
    pub coordinate: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("the zero vector has no primitive form")]
    ZeroVector,
    #[error("vectors must have at least one entry")]
    EmptyVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty family of sets")]
    EmptyFamily,
    #[error("bases {first:?} and {second:?} have different sizes")]
    UnequalCardinalities { first: Vec<usize>, second: Vec<usize> },
    #[error("exchange property fails for B1={:?}, B2={:?}, b1={}", .0.first, .0.second, .0.element)]
    ExchangeFailure(ExchangeViolation),
    #[error("polymatroid exchange fails for a={}, c={}, i={}", .0.a, .0.c, .0.coordinate)]
    PolymatroidExchangeFailure(PolymatroidViolation),
    #[error("rank {d} is invalid for a ground set of size {n}")]
    BadRank { n: usize, d: usize },
    #[error("element {0} lies in no basis")]
    ElementInNoBasis(usize),
    #[error("empty input")]
    EmptyInput,
    #[error("vectors {first} and {second} have different coordinate sums")]
    UnequalModuli { first: IntVec, second: IntVec },
    #[error("no member uses variable {0}")]
    VariableAbsent(usize),
    #[error("generators span dimension {rank}, expected {dim}")]
    DegenerateCone { rank: usize, dim: usize },
    #[error("{what} needs {needed}, cap is {limit}")]
    CapExceeded { what: &'static str, needed: u128, limit: u128 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("integrity error: {0}")]
    IntegrityError(String),
    #[error("normality routes disagree: hilbert={hilbert}, quasi_ehrhart={quasi_ehrhart}")]
    MethodDisagreement { hilbert: bool, quasi_ehrhart: bool },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable snake_case tag used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroVector => "zero_vector",
            Error::EmptyVector => "empty_vector",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::EmptyFamily => "empty_family",
            Error::UnequalCardinalities { .. } => "unequal_cardinalities",
            Error::ExchangeFailure(_) => "exchange_failure",
            Error::PolymatroidExchangeFailure(_) => "polymatroid_exchange_failure",
            Error::BadRank { .. } => "bad_rank",
            Error::ElementInNoBasis(_) => "element_in_no_basis",
            Error::EmptyInput => "empty_input",
            Error::UnequalModuli { .. } => "unequal_moduli",
            Error::VariableAbsent(_) => "variable_absent",
            Error::DegenerateCone { .. } => "degenerate_cone",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::PreconditionFailed(_) => "precondition_failed",
            Error::IntegrityError(_) => "integrity_error",
            Error::MethodDisagreement { .. } => "method_disagreement",
            Error::InvalidInput(_) => "invalid_input",
            Error::Parse(_) => "parse_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
