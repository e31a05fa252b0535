//! Exact computer algebra for quantized irreducible flag manifolds.
//!
//! Scalars live in the rational function field Q(q) with q an indeterminate.
//! On top of that sit root data, highest weight modules of U_q(g), braidings,
//! quadratic algebras and the fiber presentations of the Dolbeault and de Rham
//! calculi over the quantized flag manifold.

pub mod braiding;
pub mod cli;
pub mod coeffmodel;
pub mod error;
pub mod flagcalc;
pub mod qfield;
pub mod quadalg;
pub mod report;
pub mod repkit;
pub mod rootdata;

pub use error::{Error, Result};
pub use qfield::{qbinom, qint, ExactMatrix, LaurentRat};
