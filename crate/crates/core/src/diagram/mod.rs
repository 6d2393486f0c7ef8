//! The Temperley-Lieb category: simple diagrams, formal linear
//! combinations, and the monoidal and pivotal operations on them.

mod basis;
mod morphism;
mod pairing;

use thiserror::Error;

pub use basis::{basis, catalan};
pub use morphism::Morphism;
pub use pairing::Pairing;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
