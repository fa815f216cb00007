//! Faces of the Kronecker cone `PKron(n1, n2)` built from order matrices.
//!
//! The pipeline runs bottom-up:
//!
//! 1. [`order_matrix`] enumerates the order types of additive matrices with an
//!    integer one-parameter-subgroup witness for each.
//! 2. [`pairs`] reads configurations off each order matrix and builds the
//!    corresponding Weyl group pairs `(v, v̂)`, checked by the root criterion in
//!    [`roots`].
//! 3. [`faces`] turns each normalized pair into the linear equations of its face,
//!    collects lattice points verified with the exact oracle in [`kronecker`],
//!    certifies well-covering pairs and deduplicates faces.

pub mod combinatorics;
pub mod error;
pub mod faces;
pub mod kronecker;
pub mod linalg;
pub mod order_matrix;
pub mod pairs;
pub mod roots;

pub use combinatorics::{
    cycles, lex_index, longest_element, partitions_of, unlex_index, GridIndex, Partition,
    Permutation,
};
pub use error::{Error, Result};

pub use faces::{FaceDescriptor, LatticeTriple};
pub use kronecker::KroneckerOracle;
pub use order_matrix::{enumerate_order_matrices, OrderMatrix};
pub use pairs::{ConfigKind, PairDescriptor, PairStatus};

