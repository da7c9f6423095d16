//! Exact linear algebra over GF(p).
//!
//! [`DenseReduction`] is the row reduction used for the quadratic system
//! itself; [`EchelonBasis`] is an incremental sparse basis that remembers how
//! each basis vector was assembled from the inserted rows.

mod dense;
mod sparse;

pub use dense::DenseReduction;
pub use sparse::{EchelonBasis, PivotRule, SparseVec};
