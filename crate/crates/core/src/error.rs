use std::fmt;

use crate::graph::{RootedMode, Vertex};

/// Why an arc list failed to describe a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotTreeReason {
    WrongArcCount { expected: usize, found: usize },
    Cycle,
    Disconnected,
    Empty,
}

impl fmt::Display for NotTreeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotTreeReason::WrongArcCount { expected, found } => {
                write!(f, "expected {expected} arcs, found {found}")
            }
            NotTreeReason::Cycle => f.write_str("underlying graph has a cycle"),
            NotTreeReason::Disconnected => f.write_str("underlying graph is disconnected"),
            NotTreeReason::Empty => f.write_str("a tree needs at least one vertex"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a tree on {n} vertices")]
    BadVertexId { vertex: Vertex, n: usize },
    #[error("self-arc at vertex {0}")]
    SelfArc(Vertex),
    #[error("arc ({}, {}) duplicates or reverses another arc", .0.0, .0.1)]
    DuplicateOrAntiparallelArc((Vertex, Vertex)),
    #[error("not a tree: {0}")]
    NotATree(NotTreeReason),
    #[error("vertex {0} is not a leaf of the underlying tree")]
    NotALeaf(Vertex),
    #[error("tree is not an {0}")]
    NotRooted(RootedMode),
    #[error("tree is neither an out-tree nor an in-tree")]
    Unrooted,
    #[error("coloring covers {found} vertices but the tree has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("{what} = {value} exceeds the supported limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("k = {0} is too small, the layered construction needs k >= 2")]
    KTooSmall(usize),
    #[error("underlying tree is not a caterpillar")]
    NotACaterpillar,
    #[error("central path is not a directed path")]
    SpineNotDirected,
    #[error("invalid instance spec: {0}")]
    SpecInvalid(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn too_large(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::TooLarge { what, value, limit })
    } else {
        Ok(())
    }
}
