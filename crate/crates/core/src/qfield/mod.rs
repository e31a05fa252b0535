//! Exact arithmetic in Q(q) and linear algebra over it.

mod laurent;
mod matrix;
mod poly;

pub use laurent::{qbinom, qbinom_base, qint, qint_base, LaurentRat};
pub use matrix::{
    dense_from_sparse, sparse_axpy, sparse_from_dense, ExactMatrix, RowEchelon, SparseVec,
};
