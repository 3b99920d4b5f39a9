//! Twisted free modules, graded matrices and the generalized Eagon-Northcott complexes.

mod build;
mod chain;
mod matrix;
mod module;

pub use build::build_complex;
pub use chain::{BettiTable, ChainComplex, TwistCount};
pub use matrix::{determinant, GradedMatrix, DEFAULT_MINOR_CAP};
pub use module::{BasisLabel, TwistedFreeModule};

pub(crate) use matrix::{binomial, subsets};
