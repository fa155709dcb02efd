//! Perturbation-based estimate of the normwise condition number, used to
//! check the closed form independently of it.
//!
//! The estimate is the largest observed `|Δζ|/‖Δp‖ · ‖p‖/|ζ|` over
//! perturbations `Δp` of Euclidean norm `δ`, each root obtained by Newton's
//! method on `p + Δp`. The first half of the budget samples directions
//! uniformly on the sphere; the second half runs a (1+1) evolution strategy
//! around the best direction so far, because the supremum direction occupies
//! a vanishing fraction of the sphere once the degree exceeds a few.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rng::GaussianStream;
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleEstimate {
    pub ln_cond: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

/// Newton iteration from `z0`, stopped once steps reach rounding level.
/// `None` if the iteration diverges or does not settle.
pub fn newton_refine(p: &Polynomial, z0: Complex64, max_iter: usize) -> Option<Complex64> {
    let dp = p.derivative();
    let mut z = z0;
    let mut prev = f64::INFINITY;
    for _ in 0..max_iter {
        let step = p.eval(z) / dp.eval(z);
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        let size = step.norm();
        let scale = z.norm().max(f64::MIN_POSITIVE);
        if size >= prev && size <= 1e-8 * scale {
            return Some(z);
        }
        z -= step;
        prev = size;
        if size <= 2.0 * f64::EPSILON * scale {
            return Some(z);
        }
    }
    (prev <= 1e-8 * z.norm()).then_some(z)
}

/// Lower estimate of `ln_cond(p, zeta)` from `ndirs ≥ 100` perturbations of
/// norm `delta` (default `1e-7·‖p‖`). Directions whose Newton iteration
/// fails, or lands more than `1e-3·|ζ|` away, are skipped and counted.
pub fn finite_difference_cond_oracle(
    p: &Polynomial,
    zeta: Complex64,
    delta: Option<f64>,
    ndirs: usize,
    seed: u64,
) -> Result<OracleEstimate> {
    if ndirs < 100 {
        return Err(Error::InvalidArgument("ndirs must be at least 100".into()));
    }
    let ln_norm = p.ln_euclidean_norm()?;
    let delta = delta.unwrap_or(1e-7 * ln_norm.exp());
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidArgument(
            "delta must be positive and finite".into(),
        ));
    }
    let base = newton_refine(p, zeta, 100).ok_or(Error::NumericallyMultiple {
        derivative_modulus: p.derivative().eval(zeta).norm(),
    })?;
    if base.norm() == 0.0 {
        return Err(Error::ZeroRoot);
    }

    let dim = p.degree() + 1;
    let mut stream = GaussianStream::new(seed);
    let mut evaluated = 0;
    let mut skipped = 0;

    let probe = |direction: &[Complex64]| -> Option<f64> {
        let coeffs = p
            .coeffs()
            .iter()
            .zip(direction)
            .map(|(a, u)| a + u * delta)
            .collect();
        let perturbed = Polynomial::new(coeffs).ok()?;
        let moved = newton_refine(&perturbed, base, 100)?;
        let shift = (moved - base).norm();
        if shift > 1e-3 * base.norm() || shift == 0.0 {
            return None;
        }
        Some(shift.ln() - delta.ln() + ln_norm - base.norm().ln())
    };

    let mut best_dir: Option<Vec<Complex64>> = None;
    let mut best = f64::NEG_INFINITY;
    let explore = ndirs / 2;
    let mut sigma = 0.5;

    for k in 0..ndirs {
        let mut dir: Vec<Complex64> = (0..dim).map(|_| stream.complex_normal()).collect();
        let refining = k >= explore && best_dir.is_some();
        if refining {
            let center = best_dir.as_ref().unwrap();
            for (d, c) in dir.iter_mut().zip(center) {
                *d = c + *d * sigma;
            }
        }
        normalize(&mut dir);
        match probe(&dir) {
            Some(v) => {
                evaluated += 1;
                if v > best {
                    best = v;
                    best_dir = Some(dir);
                    if refining {
                        sigma *= 1.5;
                    }
                } else if refining {
                    sigma *= 0.9;
                }
            }
            None => skipped += 1,
        }
    }

    if evaluated == 0 {
        return Err(Error::InvalidArgument(
            "no perturbation direction converged".into(),
        ));
    }
    Ok(OracleEstimate {
        ln_cond: best,
        evaluated,
        skipped,
    })
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in v.iter_mut() {
        *z /= norm;
    }
}
