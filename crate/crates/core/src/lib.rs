//! Representation learning on unoriented simplicial complexes.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the algorithmic
//! core. File formats, dataset generation and the command line live in the
//! `simplex-embed` companion crate.
//!
//! Pipeline, bottom-up:
//!
//! - [`complex`]: canonical simplicial complexes, facet/cofacet incidence,
//!   adjacency and co-adjacency matrices.
//! - [`numerics`]: dense matrices, sparse operators, optimizers, the
//!   finite-difference gradient checker, eigen-solver and seeded RNG streams.
//! - [`message_passing`]: AMPS, CMPS and HCMPS layer stacks with exact
//!   backward passes.
//! - [`autoencoder`]: encoder/decoder/similarity/loss framework with the
//!   Laplacian-eigenmaps, inner-product and random-walk instantiations.
//! - [`pooling`]: attention-weighted complex embedding and its stress and
//!   triplet objectives.
//! - [`metrics`]: discretized Hausdorff distance and distance matrices.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod autoencoder;
pub mod complex;
pub mod error;
pub mod message_passing;
pub mod metrics;
pub mod numerics;
pub mod pooling;

pub use complex::{Coordinates, Simplex, SimplicialComplex, SparseMatrix};
pub use error::{Error, Result};
pub use numerics::DenseMatrix;
