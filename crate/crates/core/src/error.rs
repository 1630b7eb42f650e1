use thiserror::Error;

/// Errors raised by graph construction, analysis and the file formats.
///
/// Node and edge-set indices carried in error values are 1-based so that
/// messages line up with input files.
#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} is out of range for a graph with {n} nodes")]
    InvalidNode { node: usize, n: usize },

    #[error("edge set {index} is out of range (h = {h})")]
    InvalidEdgeSet { index: usize, h: usize },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("vertex counts differ ({left} vs {right})")]
    VertexCountMismatch { left: usize, right: usize },

    #[error(
        "standing assumption violated: sink at (node, edge set) {}; run augment_sink (CLI: validate --augment) first",
        format_pairs(.violations)
    )]
    StandingAssumption { violations: Vec<(usize, usize)> },

    #[error("node {node} has out-degree 0")]
    ZeroOutDegree { node: usize },

    #[error("edge set {index} is not 1-regular")]
    NotOneRegular { index: usize },

    #[error(
        "transition-matrix set has {nu} elements, above the cap of {cap}; use the state-local MDP construction instead"
    )]
    CapacityExceeded { nu: String, cap: usize },

    #[error("action {action} is out of range for state {state} ({count} actions)")]
    InvalidAction {
        state: usize,
        action: usize,
        count: usize,
    },

    #[error("invalid target set: {0}")]
    InvalidTarget(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid SIR configuration: {0}")]
    Config(String),

    #[error(
        "value iteration did not converge within {iterations} iterations (last change {delta:e})"
    )]
    NotConverged { iterations: usize, delta: f64 },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

fn format_pairs(pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|(i, w)| format!("({i},{w})"))
        .collect::<Vec<_>>()
        .join(", ")
}
