use thiserror::Error;

pub type Result<T, E = RzfError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RzfError {
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("edge ({u}, {v}) has invalid weight {weight}; weights must be finite and nonnegative")]
    InvalidWeight { u: usize, v: usize, weight: f64 },

    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("initial blue set is empty")]
    EmptyStart,

    #[error("scaling factor must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("graphs have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),

    #[error(
        "propagation time is infinite: some vertex is not reachable from the start set \
         through positive-weight edges"
    )]
    InfiniteEpt,

    #[error("no white vertex can turn blue from the current state")]
    Stalled,

    #[error(
        "order {n} exceeds the exact solver limit of {limit} vertices \
         (dense table would need about {bytes} bytes); use the Monte Carlo estimator"
    )]
    StateSpaceTooLarge { n: usize, limit: usize, bytes: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("weighted graph given where an unweighted one is required: {0}")]
    WeightedInput(String),

    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },
}

impl RzfError {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        RzfError::InvalidParameter(msg.into())
    }
}
