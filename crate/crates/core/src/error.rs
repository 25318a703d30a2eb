use std::fmt;

use thiserror::Error;

/// A syntax error in a set expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where parsing failed.
    pub offset: usize,
    /// Tokens that would have been accepted at `offset`.
    pub expected: Vec<String>,
    pub found: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected ", self.offset)?;
        match self.expected.as_slice() {
            [] => write!(f, "nothing")?,
            [one] => write!(f, "`{one}`")?,
            many => {
                let quoted: Vec<String> = many.iter().map(|t| format!("`{t}`")).collect();
                write!(f, "one of {}", quoted.join(", "))?
            }
        }
        match &self.found {
            Some(tok) => write!(f, ", found `{tok}`"),
            None => write!(f, ", found end of input"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("polynomial at byte {offset} has nonzero constant term {value}; P(0) = 0 is required")]
    ConstantTerm { offset: usize, value: i64 },
    #[error("invalid parameter at byte {offset}: {message}")]
    InvalidParameter { offset: usize, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("gap condition cannot be certified on this window: {0}")]
    GapConditionUnverifiable(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error(
        "position {position} has {count} back-neighbors two or more intervals back (bound {bound})"
    )]
    NeighborBoundViolated {
        position: usize,
        count: usize,
        bound: usize,
    },
    #[error("window exhausted after {} elements of H: {partial:?}", partial.len())]
    WindowExhausted { partial: Vec<usize> },
    #[error("self-loop at vertex {0}")]
    LoopDetected(usize),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0} -> {1} references a vertex outside the graph")]
    VertexOutOfRange(usize, usize),
    #[error("graph contains a cycle")]
    CycleDetected,
    #[error("ordering is not a permutation of the vertex set")]
    InvalidOrdering,
    #[error("edge list: line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("search interrupted after {nodes} nodes; threshold > {lower_bound_exclusive}")]
    Interrupted {
        nodes: u64,
        /// Length of the longest avoiding coloring seen before the interrupt.
        lower_bound_exclusive: usize,
    },
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("config: line {line}: {message}")]
    Config { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
