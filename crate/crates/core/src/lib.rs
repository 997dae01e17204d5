//! Exact construction and verification of quasi-Poisson superalgebras,
//! their loop algebras, and locality of formal distributions.

pub mod catalog;
pub mod error;
pub mod grassmann;
pub mod locality;
pub mod loop_algebra;
pub mod qp;
pub mod scalars;

pub use error::{Error, Result};
pub use scalars::{Matrix, Scalar, Vector};
