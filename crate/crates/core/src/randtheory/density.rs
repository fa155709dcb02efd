use num_complex::Complex64;

use super::special::ln_gamma;
use crate::error::{Error, Result};

/// `ln C_n = -[n(n+1)/2 · ln 2 + n ln π + Σ_{k=1}^n ln k!]`.
pub fn ln_ginibre_constant(n: usize) -> f64 {
    let nf = n as f64;
    let ln_superfactorial: f64 = (1..=n).map(|k| ln_gamma(k as f64 + 1.0)).sum();
    -(nf * (nf + 1.0) / 2.0 * std::f64::consts::LN_2
        + nf * std::f64::consts::PI.ln()
        + ln_superfactorial)
}

/// Log of the joint eigenvalue density of an `n×n` complex Ginibre matrix,
/// `ln C_n - ½Σ|λ_i|² + 2Σ_{i<j} ln|λ_i - λ_j|`. Coincident eigenvalues give
/// `-inf`.
pub fn ginibre_log_density(lambdas: &[Complex64]) -> Result<f64> {
    if lambdas.is_empty() {
        return Err(Error::InvalidArgument(
            "density needs at least one eigenvalue".into(),
        ));
    }
    if lambdas
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::InvalidArgument("eigenvalues must be finite".into()));
    }
    let gauss: f64 = lambdas.iter().map(|z| z.norm_sqr()).sum();
    let mut vandermonde = 0.0;
    for (i, a) in lambdas.iter().enumerate() {
        for b in &lambdas[i + 1..] {
            vandermonde += (a - b).norm().ln();
        }
    }
    Ok(ln_ginibre_constant(lambdas.len()) - 0.5 * gauss + 2.0 * vandermonde)
}
