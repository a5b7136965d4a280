use thiserror::Error;

/// Errors raised by the sandpile and enumeration routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutation {0} is decomposable; its graph is disconnected")]
    Decomposable(String),

    #[error("vertex {vertex} is outside [1, {n}]")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {vertex} is stable ({grains} grains, degree {degree}) and cannot topple")]
    StableVertex {
        vertex: usize,
        grains: u32,
        degree: usize,
    },

    #[error("configuration has {got} entries, graph has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },

    #[error("configuration is not recurrent")]
    NotRecurrent,

    #[error("configuration is not minimal recurrent (level {0})")]
    NotMinimal(i64),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("tree is not a spanning tree of the graph: {0}")]
    NotSpanning(String),

    #[error("invalid tiering: {0}")]
    InvalidTiering(String),

    #[error("ordered partition is not compatible: {0}")]
    IncompatiblePartition(String),

    #[error("permutation {0} does not have exactly one descent")]
    NotSingleDescent(String),

    #[error("invalid dot grid: {0}")]
    InvalidGrid(String),

    #[error("size guard exceeded for {what}: {actual} > {limit}")]
    SizeGuard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::SizeGuard {
            what,
            actual,
            limit,
        })
    } else {
        Ok(())
    }
}
