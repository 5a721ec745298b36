use thiserror::Error;

use crate::magma::GammaMagma;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} is out of range for a structure of order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("unknown Γ-label `{0}`")]
    UnknownLabel(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("ideal predicates are only defined for non-empty subsets")]
    EmptySubset,

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("invalid fuzzy subset: {0}")]
    InvalidFuzzy(String),

    #[error("level cut threshold must be positive")]
    NonPositiveCut,

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} needs {required} evaluations, over the budget of {limit}")]
    Capacity { what: String, required: u128, limit: u128 },

    #[error("search budget exhausted after {} nodes ({} models found so far)", .0.nodes, .0.found.len())]
    BudgetExhausted(Box<PartialSearch>),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Bad input as opposed to a resource limit.
    pub fn is_input(&self) -> bool {
        !self.is_capacity()
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::BudgetExhausted(_))
    }
}

/// State of a model search that ran out of budget.
#[derive(Debug, Clone)]
pub struct PartialSearch {
    pub nodes: u64,
    pub found: Vec<GammaMagma>,
    /// Branching decisions `(cell, value)` on the path being explored when the
    /// budget ran out. Cells index the flattened table family.
    pub frontier: Vec<(usize, usize)>,
}
