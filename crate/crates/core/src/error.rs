use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text could not be parsed; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed semiring: {0}")]
    Malformed(String),

    #[error("invalid builtin descriptor `{descriptor}`: {reason}")]
    Descriptor { descriptor: String, reason: String },

    #[error("the semiring does not satisfy `{axiom}`")]
    Axiom { axiom: &'static str },

    #[error("{count} matrices exceed the vertex cap of {cap}")]
    VertexCap { count: String, cap: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),

    #[error("matrices live over different ambient semirings")]
    AmbientMismatch,

    #[error("index {index} out of range 0..{bound}")]
    OutOfRange { index: usize, bound: usize },

    #[error("element `{0}` has no decomposition (it is zero or a zero-divisor)")]
    NotDecomposable(String),

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("invalid component map: {0}")]
    InvalidComponentMap(String),

    #[error("partition is inconsistent with the digraph: {0}")]
    InconsistentPartition(String),

    #[error("not a permutation: {0}")]
    NotPermutation(String),
}
