//! Exact Temperley-Lieb-Jones computations.
//!
//! The diagrammatic layers are generic over [`Scalar`]; the aliases below
//! fix the two coefficient regimes.

pub mod diagram;
pub mod error;
pub mod fusion;
pub mod graph;
pub mod jones_wenzl;
pub mod linalg;
pub mod nets;
pub mod scalar;
pub mod skein;

pub use diagram::{basis, Morphism, Pairing};
pub use error::{Error, Result};
pub use graph::{GraphDocument, HalfEdge, RibbonGraph, Side, Vertex};
pub use jones_wenzl::{check_jw, jw, jw_in};
pub use scalar::{CycloScalar, LaurentPoly, RatScalar, Scalar, ScalarError};

/// Coefficients for generic `q`.
pub type Generic = RatScalar;

/// Coefficients at `q = e^{πi/N}`.
pub type AtRoot<const N: u32> = CycloScalar<N>;

/// Diagram combinations over generic `q`.
pub type GenericMorphism = Morphism<RatScalar>;

/// Diagram combinations at `q = e^{πi/N}`.
pub type RootMorphism<const N: u32> = Morphism<CycloScalar<N>>;
