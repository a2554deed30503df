//! Error type shared by all modules of the crate.

use alloc::boxed::Box;
use alloc::string::String;
use thiserror::Error;

use crate::topology::AxiomViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter set must be nonempty")]
    EmptyParameterSet,
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("duplicate parameter name `{0}`")]
    DuplicateParameter(String),
    #[error("unknown element name `{0}`")]
    UnknownElement(String),
    #[error("unknown parameter name `{0}`")]
    UnknownParameter(String),
    #[error("element `{0}` has no mapping entry")]
    MissingElementMapping(String),
    #[error("parameter `{0}` has no mapping entry")]
    MissingParameterMapping(String),
    #[error("operands belong to different contexts")]
    ContextMismatch,
    #[error("mapping is not bijective")]
    NotBijective,
    #[error("family of soft sets must be nonempty")]
    EmptyFamily,
    #[error("set is not open in the given topology")]
    NotOpen,
    #[error("family is not a soft topology: {0}")]
    NotATopology(Box<AxiomViolation>),
    #[error("subspace parameter set must be nonempty")]
    EmptySubspaceParameters,
    #[error("product requires at least one factor")]
    EmptyFactorList,
    #[error("factor index {index} out of range for {count} factors")]
    FactorIndex { index: usize, count: usize },
    #[error("expected {expected} mappings, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("budget exceeded: {what} needs {actual}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("budget cannot be satisfied: {0}")]
    UnsatisfiableBudget(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
