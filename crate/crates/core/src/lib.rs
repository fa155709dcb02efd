//! Condition numbers of the roots of characteristic polynomials of complex
//! Gaussian matrices: polynomial arithmetic in log space, a nonsymmetric
//! eigensolver, four condition flavors, distributional checks for Ginibre
//! spectra, closed-form lower bounds, and a reproducible Monte Carlo harness.

pub mod bounds;
pub mod cli;
pub mod condition;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod logspace;
pub mod polynomial;
pub mod randtheory;
pub mod stats;

pub use error::{Error, Result};
