use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no edges")]
    NoEdges,

    #[error("vertex {0} is isolated, so no edge cover exists")]
    IsolatedVertex(usize),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("too large: {0}")]
    TooLarge(String),

    /// A computed quantity contradicts an identity that must hold; always a bug
    /// or a mislabelled input.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
