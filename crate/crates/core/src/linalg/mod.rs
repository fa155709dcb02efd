//! Complex Ginibre sampling and dense nonsymmetric eigenvalues.

mod eigen;
mod lu;
mod matrix;
pub mod rng;

pub use eigen::{
    companion_roots, eigenvalues, eigenvalues_default, moduli_sorted, Spectrum, DEFAULT_MAX_SWEEPS,
    DEFAULT_TOL,
};
pub use lu::Lu;
pub use matrix::{sample_ginibre, ComplexMatrix};
