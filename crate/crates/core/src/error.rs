use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid order {order} for {what} (need at least {min})")]
    InvalidOrder {
        what: &'static str,
        order: usize,
        min: usize,
    },

    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph must be connected with at least two vertices")]
    NotConnected,

    #[error("graph has {vertex_count} vertices; exact solvers support at most {max}")]
    TooLarge { vertex_count: usize, max: usize },

    #[error("removing the whole vertex set leaves no components to judge")]
    WholeVertexSet,

    #[error("vertex set is not a vertex cut")]
    NotACut,

    #[error("precondition failed for factor {factor}: {reason}")]
    FactorPrecondition { factor: u8, reason: String },

    #[error("outside the closed-form domain: {0}")]
    OutOfDomain(String),

    #[error("witness {which} refused: {reason}")]
    WitnessRefused { which: String, reason: String },

    #[error("witness {which} has {actual} vertices but the formula term predicts {predicted}")]
    WitnessSizeMismatch {
        which: String,
        predicted: usize,
        actual: usize,
    },

    #[error("inconclusive: search budget of {budget} checks exhausted")]
    Inconclusive { budget: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
