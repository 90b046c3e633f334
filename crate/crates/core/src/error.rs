use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty complex")]
    EmptyComplex,

    #[error("malformed simplex: {0}")]
    MalformedSimplex(String),

    #[error("unknown simplex {0}")]
    UnknownSimplex(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("no adjacency at top dimension: k = {k}, complex dimension = {n}")]
    NoAdjacencyAtTop { k: usize, n: usize },

    #[error("no co-adjacency at dimension {k} (valid range 1..={n})")]
    NoCoadjacency { k: usize, n: usize },

    #[error("no incidence for dimension {m}: complex dimension = {n}")]
    NoIncidence { m: usize, n: usize },

    #[error("coordinates required")]
    CoordinatesRequired,

    #[error("invalid coordinates: {0}")]
    InvalidCoordinates(String),

    #[error("shape mismatch in {op}: {lhs:?} vs {rhs:?}")]
    Shape {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("non-finite objective")]
    NonFiniteObjective,

    #[error("training diverged at epoch {epoch}")]
    Diverged { epoch: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("embedding dimension {requested} too large: at most {max} for this adjacency graph")]
    EmbeddingTooLarge { requested: usize, max: usize },

    #[error("empty softmax context")]
    EmptyContext,

    #[error("invalid distance matrix: {0}")]
    InvalidDistanceMatrix(String),

    #[error("missing labels: {0}")]
    MissingLabels(String),

    #[error("eigen-solver did not converge after {0} sweeps")]
    EigenNoConvergence(usize),
}

impl Error {
    pub(crate) fn shape(op: &'static str, lhs: (usize, usize), rhs: (usize, usize)) -> Self {
        Error::Shape { op, lhs, rhs }
    }
}
