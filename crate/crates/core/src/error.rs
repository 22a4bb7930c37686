use thiserror::Error;

/// A failed cyclic-flat axiom, with the sets (as label lists) that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("(Z0) family is not a lattice under inclusion: {reason}")]
    Z0 {
        reason: String,
        sets: Vec<Vec<String>>,
    },
    #[error("(Z1) least cyclic flat {set:?} has rank {rank}, expected 0")]
    Z1 { set: Vec<String>, rank: usize },
    #[error("(Z2) violated for {lower:?} < {upper:?}: need 0 < {rank_gap} < {size_gap}")]
    Z2 {
        lower: Vec<String>,
        upper: Vec<String>,
        rank_gap: i64,
        size_gap: usize,
    },
    #[error("(Z3) violated for {x:?} and {y:?}: {lhs} > {rhs}")]
    Z3 {
        x: Vec<String>,
        y: Vec<String>,
        lhs: i64,
        rhs: i64,
    },
}

impl AxiomViolation {
    pub(crate) fn z0(reason: impl Into<String>, sets: Vec<Vec<String>>) -> Self {
        AxiomViolation::Z0 {
            reason: reason.into(),
            sets,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Axiom(#[from] AxiomViolation),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("ground set of {0} elements exceeds the 62-element limit")]
    GroundTooLarge(usize),
    #[error("{what}: size {size} exceeds budget {limit}")]
    BudgetExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("matroid has coloops {0:?}")]
    HasColoops(Vec<String>),
    #[error("matroid has loops {0:?}")]
    HasLoops(Vec<String>),
    #[error("not a t-expansion: {0}")]
    NotATExpansion(String),
    #[error("matroid union of the given parts differs from the matroid")]
    DecompositionMismatch,
    #[error("malformed branch-decomposition: {0}")]
    MalformedTree(String),
    #[error("tangle axiom fails: {0}")]
    InvalidTangle(String),
    #[error("input order is not a positroid order: {0}")]
    InputOrderNotPositroid(String),
    #[error("matroids are not on a common ground set")]
    GroundMismatch,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_budget(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::BudgetExceeded { what, size, limit })
    } else {
        Ok(())
    }
}
