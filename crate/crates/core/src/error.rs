use thiserror::Error;

use crate::diagram::DiagramError;
use crate::jones_wenzl::JwError;
use crate::scalar::ScalarError;

/// Errors raised by nets, fusion and skein computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("({0}, {1}, {2}) is not admissible")]
    NotAdmissible(usize, usize, usize),
    #[error("({0}, {1}, {2}) is not q-admissible at root order {3}")]
    NotQAdmissible(usize, usize, usize, u32),
    #[error("label {label} out of range (max {max})")]
    LabelOutOfRange { label: usize, max: usize },
    #[error("embedding is not planar: {0}")]
    NonPlanarEmbedding(String),
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    InvalidDegree { vertex: usize, degree: usize, expected: usize },
    #[error("Euler characteristic mismatch: {0}")]
    EulerMismatch(String),
    #[error("invalid edge {edge}: {reason}")]
    InvalidEdge { edge: usize, reason: String },
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate Gram entry for labels {0:?}")]
    DegenerateGram(Vec<usize>),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Jw(#[from] JwError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Result<T> = std::result::Result<T, Error>;
