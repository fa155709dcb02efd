//! Digamma and log-gamma.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// B_{2k} / (2k) for k = 1..7
const ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// `ψ(x) = Γ'(x)/Γ(x)` for `x > 0`.
///
/// Shifts `x` up with `ψ(x) = ψ(x+1) - 1/x` until `x ≥ 8`, then sums the
/// asymptotic series `ln x - 1/(2x) - Σ B_{2k}/(2k x^{2k})`. The truncation
/// error at `x = 8` is below `2e-15`.
pub fn digamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || x.is_infinite() {
        return Err(Error::InvalidArgument(format!(
            "digamma needs a finite positive argument, got {x}"
        )));
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 8.0 {
        shift -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut series = 0.0;
    let mut power = inv2;
    for c in ASYMPTOTIC {
        series += c * power;
        power *= inv2;
    }
    Ok(shift + y.ln() - 0.5 / y - series)
}

/// `ln Γ(x)`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}
