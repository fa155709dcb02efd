//! Closed-form lower bounds on expected log-condition of eigenvalues of
//! complex Ginibre matrices, as roots of the characteristic polynomial.
//! Everything is in natural-log scale.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::randtheory::ln_gamma;

/// Slope of the empirical `E ln cond_min ≈ 0.05 n` regime.
pub const MIN_OVER_INDICES_SLOPE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundKind {
    /// `E ln cond(χ_A, λ_i)`, `λ_i` the eigenvalue coupled to `χ²_{2i}`.
    PerIndex { n: usize, i: usize },
    /// `E (1/n) Σ_i ln cond(χ_A, λ_i)`.
    AverageOverIndices { n: usize },
    /// `0.05 n - k` with a caller-chosen constant `k`.
    MinOverIndicesEmpirical { n: usize, k: f64 },
    /// `ln E cond²` under a uniformly chosen eigenvalue.
    SecondMoment { n: usize },
    /// Deterministic floor valid at every simple root.
    UniversalFloor { n: usize },
}

impl BoundKind {
    pub fn n(&self) -> usize {
        match *self {
            BoundKind::PerIndex { n, .. }
            | BoundKind::AverageOverIndices { n }
            | BoundKind::MinOverIndicesEmpirical { n, .. }
            | BoundKind::SecondMoment { n }
            | BoundKind::UniversalFloor { n } => n,
        }
    }

    pub fn evaluate(&self) -> Result<f64> {
        match *self {
            BoundKind::PerIndex { n, i } => thm1_per_index_bound(n, i),
            BoundKind::AverageOverIndices { n } => thm1_average_bound(n),
            BoundKind::MinOverIndicesEmpirical { n, k } => {
                check_n(n)?;
                if !k.is_finite() {
                    return Err(Error::InvalidArgument("constant must be finite".into()));
                }
                Ok(MIN_OVER_INDICES_SLOPE * n as f64 - k)
            }
            BoundKind::SecondMoment { n } => thm2_second_moment_bound(n),
            BoundKind::UniversalFloor { n } => prop_universal_floor(n),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    Ok(())
}

/// `½(n-1) ln i - 0.79 n - 0.5 i` for `1 ≤ i ≤ n`.
pub fn thm1_per_index_bound(n: usize, i: usize) -> Result<f64> {
    check_n(n)?;
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("index {i} outside 1..={n}")));
    }
    let (n, i) = (n as f64, i as f64);
    Ok(0.5 * (n - 1.0) * i.ln() - 0.79 * n - 0.5 * i)
}

/// `½(n-1) ln n - 1.54 n`.
pub fn thm1_average_bound(n: usize) -> Result<f64> {
    check_n(n)?;
    let n = n as f64;
    Ok(0.5 * (n - 1.0) * n.ln() - 1.54 * n)
}

/// `ln((n-1)! 2ⁿ)`.
pub fn thm2_second_moment_bound(n: usize) -> Result<f64> {
    check_n(n)?;
    Ok(ln_gamma(n as f64) + n as f64 * std::f64::consts::LN_2)
}

/// `-ln n`, i.e. `cond ≥ 1/n`.
pub fn prop_universal_floor(n: usize) -> Result<f64> {
    check_n(n)?;
    // `0.0 - x` rather than `-x` so that n = 1 gives +0.
    Ok(0.0 - (n as f64).ln())
}
