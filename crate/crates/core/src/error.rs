use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial has no log-norm")]
    ZeroPolynomial,
    #[error("polynomial coefficients must be finite")]
    NonFiniteCoefficient,
    #[error("condition undefined at zero root")]
    ZeroRoot,
    #[error("zero is numerically multiple: |p'(zeta)| = {derivative_modulus:e}")]
    NumericallyMultiple { derivative_modulus: f64 },
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("matrix entries must be finite")]
    NonFiniteMatrix,
    #[error("matrix data has {got} entries, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("QR iteration failed to deflate after {iterations} iterations ({} eigenvalues found)", partial.len())]
    NoConvergence {
        iterations: usize,
        partial: Vec<Complex64>,
    },
    #[error("polynomial and spectrum are inconsistent: constant term {constant:e} vs product {product:e}")]
    InconsistentSpectrum { constant: f64, product: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invariant violated at n = {n}, trial {trial} (seed {seed:#018x}): {detail}")]
    InvariantViolation {
        n: usize,
        trial: usize,
        seed: u64,
        detail: String,
    },
    #[error("too many dropped trials at n = {n}: {dropped} of {trials}")]
    TooManyDrops {
        n: usize,
        dropped: usize,
        trials: usize,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
