use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {label} is not in a graph of order {order}")]
    InvalidVertex { label: usize, order: usize },

    #[error("edge {0} is not present in the graph")]
    MissingEdge(Edge),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),

    #[error("graph order {order} exceeds the supported maximum of {max}")]
    TooLarge { order: usize, max: usize },

    #[error("graph6 error at byte {offset}: {kind}")]
    Graph6 { offset: usize, kind: Graph6ErrorKind },

    #[error("edge list error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("{invariant} is undefined here: {reason}")]
    Domain { invariant: &'static str, reason: &'static str },

    #[error("search needs 2^{universe} subsets, cap is {cap}")]
    Budget { universe: usize, cap: u64 },

    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },

    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph6ErrorKind {
    Empty,
    InvalidByte(u8),
    OrderTooLarge,
    Truncated,
    TrailingData,
    NonzeroPadding,
}

impl std::fmt::Display for Graph6ErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Graph6ErrorKind::Empty => write!(f, "empty record"),
            Graph6ErrorKind::InvalidByte(b) => write!(f, "byte 0x{b:02x} outside 63..=126"),
            Graph6ErrorKind::OrderTooLarge => write!(f, "orders above 62 are not supported"),
            Graph6ErrorKind::Truncated => write!(f, "record ends before the adjacency data"),
            Graph6ErrorKind::TrailingData => write!(f, "trailing bytes after the adjacency data"),
            Graph6ErrorKind::NonzeroPadding => write!(f, "padding bits must be zero"),
        }
    }
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain { .. })
    }
}
