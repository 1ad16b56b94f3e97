use thiserror::Error;

use crate::rootsys::{Family, NodeSet};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {family:?}")]
    InvalidRank { family: Family, rank: usize },

    #[error("vector {0:?} is not a root of the system")]
    NotARoot(Vec<i32>),

    #[error("subdiagram on nodes {0} is not of type A, D or E")]
    UnclassifiableDiagram(NodeSet),

    #[error("node index {index} out of range 1..={rank}")]
    BadNodeIndex { index: usize, rank: usize },

    #[error("node {node} is not minuscule in {system}")]
    NotMinusculeNode { system: String, node: usize },

    #[error("element is not a minimal coset representative for the parabolic {0}")]
    NotMinimalRep(NodeSet),

    #[error("operation requires type {expected}, got {actual}")]
    WrongType { expected: String, actual: String },

    #[error("element does not have full support (support {support})")]
    NotFullSupport { support: NodeSet },

    #[error("normal form is only defined for nodes {supported}; got node {node}")]
    UnsupportedNode { node: usize, supported: String },

    #[error("normal form check failed: {0}")]
    NormalForm(String),

    #[error("vertex {vertex} out of range 1..={len}")]
    VertexOutOfRange { vertex: usize, len: usize },

    #[error("word {word} is not reduced (length {length} < {letters} letters)")]
    NonReducedWord {
        word: String,
        length: usize,
        letters: usize,
    },

    #[error("vertex {0} is not a peak")]
    NotAPeak(usize),

    #[error("bad peak order {order:?}: expected a permutation of {peaks:?}")]
    BadPeakOrder {
        order: Vec<usize>,
        peaks: Vec<usize>,
    },

    #[error("construction 1 produced a decomposition that is not good (index {index}): {detail}")]
    InternalGoodnessViolation { index: usize, detail: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("simple root descent of the first factor is not unique: {0:?}")]
    NonUniqueDescent(Vec<usize>),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("group closure exceeded the cap of {0} elements")]
    ClosureCapExceeded(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that indicate a bug or a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InternalGoodnessViolation { .. }
                | Error::Internal(_)
                | Error::NonUniqueDescent(_)
                | Error::UnclassifiableDiagram(_)
                | Error::ClosureCapExceeded(_)
                | Error::NormalForm(_)
        )
    }
}
