use thiserror::Error;

/// Errors raised by tree construction, queries and the poset routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("edge list does not connect all {n} vertices")]
    DisconnectedInput { n: usize },
    #[error("edge {0}-{1} closes a cycle")]
    CycleDetected(usize, usize),
    #[error("vertex id {id} is out of range for a tree on {n} vertices")]
    BadVertexId { id: usize, n: usize },
    #[error("edge {0}-{1} appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("operation needs at least {needed} vertices, tree has {n}")]
    TooSmall { n: usize, needed: usize },
    #[error("tree on {n} vertices exceeds the limit of {limit} for this operation")]
    TooLarge { n: usize, limit: usize },
    #[error("not a permutation of 0..{n}")]
    BadPermutation { n: usize },
    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),
    #[error("anchor and leaf are the same vertex {0}")]
    SameVertex(usize),
    #[error("{value} is outside the supported range {min}..={max}")]
    OutOfRange {
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("input tree is not automorphism-free")]
    NotAsymmetric,
    #[error("reduction stuck at a tree other than E7: {code}")]
    StuckNotAtE7 { code: String },
    #[error("trace step {step} does not match the tree it is replayed on")]
    TraceMismatch { step: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, TreeError>;
