use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    InvalidVertex { vertex: VertexId, count: usize },
    #[error("edge {edge} out of range (graph has {count} edges)")]
    InvalidEdge { edge: EdgeId, count: usize },
    #[error("loop at vertex {0}: loops are not allowed")]
    Loop(VertexId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{what} exceeds the supported size ({actual} > {limit})")]
    TooLarge { what: &'static str, actual: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edge map is not total: {0}")]
    MapNotTotal(String),
    #[error("not a valid H-colouring ({0} violations)")]
    InvalidColouring(usize),
    #[error("induced vertex map is ambiguous at guest vertex {vertex}: host vertices {candidates:?} share the same incident edges")]
    AmbiguousVertexMap { vertex: VertexId, candidates: Vec<VertexId> },
    #[error("invalid type partition: {0}")]
    InvalidPartition(String),
    #[error("certificate: {0}")]
    Certificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
