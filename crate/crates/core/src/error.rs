use thiserror::Error;

use crate::table::{Elem, TableError};

/// Errors from the structural loop operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("order {order} exceeds the full-scan cap {cap}; give a sampling budget")]
    CapExceeded { order: usize, cap: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("element {0} is not power-associative")]
    NotPowerAssociative(Elem),
    #[error("subset is not a subloop")]
    NotASubloop,
    #[error("subloop is not normal")]
    NotNormal,
    #[error("coset product ill-defined at ({0}, {1})")]
    IllDefined(Elem, Elem),
    #[error("subset size mismatch: expected parent of order {expected}, got {actual}")]
    ParentMismatch { expected: usize, actual: usize },
}
