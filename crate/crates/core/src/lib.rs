//! Rational type of moment-angle complexes `Z(K; (D², S¹))`.
//!
//! The [`classifier`] decides ellipticity combinatorially from minimal
//! non-faces. Two independent engines compute the rational cohomology of
//! `Z(K)`: [`cohomology`] through full subcomplexes, and [`cell_oracle`]
//! through the product cell structure. [`loopspace`] computes rational
//! homotopy ranks of the resulting sphere models.

pub mod cell_oracle;
pub mod classifier;
pub mod cli;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod generate;
pub mod linalg;
pub mod loopspace;
pub mod nonface;
pub mod vertex_set;

pub use classifier::{classify, find_witness, RationalTypeVerdict};
pub use complex::SimplicialComplex;
pub use error::{MacError, Result};
pub use nonface::{minimal_nonfaces, reconstruct, NonfaceFamily};
pub use vertex_set::VertexSet;
