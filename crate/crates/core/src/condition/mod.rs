//! Root condition numbers of univariate polynomials, all in natural-log
//! scale.
//!
//! Four flavors are provided for a simple nonzero root `ζ` of `p` of degree
//! `n`, writing `r = |ζ|`:
//!
//! | flavor         | value                                                    |
//! |----------------|----------------------------------------------------------|
//! | normwise       | `‖p‖ / (r |p'(ζ)|) · ‖(1, r, …, rⁿ)‖`                     |
//! | Weyl           | `‖p‖_W / (r |p'(ζ)|) · (1 + r²)^{n/2}`                   |
//! | componentwise  | `Σ |a_k| r^k / (r |p'(ζ)|)`                              |
//! | projective μ   | `cond_W · r / √(1 + r²)`                                 |

mod oracle;
mod profile;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::logspace::{ln_one_plus_square, log_sum_exp};
use crate::polynomial::Polynomial;

pub use oracle::{finite_difference_cond_oracle, newton_refine, OracleEstimate};
pub use profile::{cond_profile, CondProfile, CondRecord, RootIssue};

/// `|p'(ζ)|` below this (linear scale) is treated as a multiple root.
pub const MULTIPLE_ROOT_THRESHOLD: f64 = 1e-290;

/// Precomputed norms and derivative of one polynomial, reused across roots.
#[derive(Debug, Clone)]
pub(crate) struct Conditioner<'a> {
    p: &'a Polynomial,
    derivative: Polynomial,
    ln_norm: f64,
    ln_weyl_norm: f64,
}

/// Per-root quantities shared by every flavor.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RootTerms {
    r: f64,
    ln_r: f64,
    ln_deriv: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Flavors {
    pub ln_cond: f64,
    pub ln_cond_weyl: f64,
    pub ln_cw: f64,
    pub ln_mu: f64,
}

impl<'a> Conditioner<'a> {
    pub(crate) fn new(p: &'a Polynomial) -> Result<Self> {
        Ok(Self {
            ln_norm: p.ln_euclidean_norm()?,
            ln_weyl_norm: p.ln_weyl_norm()?,
            derivative: p.derivative(),
            p,
        })
    }

    pub(crate) fn root_terms(&self, zeta: Complex64) -> Result<RootTerms> {
        self.root_terms_with(zeta, self.derivative.ln_abs_eval(zeta))
    }

    /// As [`root_terms`](Self::root_terms) with `ln|p'(ζ)|` supplied by the caller.
    pub(crate) fn root_terms_with(&self, zeta: Complex64, ln_deriv: f64) -> Result<RootTerms> {
        let r = zeta.norm();
        if r == 0.0 {
            return Err(Error::ZeroRoot);
        }
        if ln_deriv.is_nan() || ln_deriv < MULTIPLE_ROOT_THRESHOLD.ln() {
            return Err(Error::NumericallyMultiple {
                derivative_modulus: ln_deriv.exp(),
            });
        }
        Ok(RootTerms {
            r,
            ln_r: r.ln(),
            ln_deriv,
        })
    }

    pub(crate) fn ln_cond(&self, t: &RootTerms) -> f64 {
        let n = self.p.degree();
        let ln_powers = 0.5 * log_sum_exp((0..=n).map(|k| 2.0 * k as f64 * t.ln_r));
        self.ln_norm - t.ln_r - t.ln_deriv + ln_powers
    }

    pub(crate) fn ln_cond_weyl(&self, t: &RootTerms) -> f64 {
        let n = self.p.degree() as f64;
        self.ln_weyl_norm - t.ln_r - t.ln_deriv + 0.5 * n * ln_one_plus_square(t.r)
    }

    pub(crate) fn ln_cw(&self, t: &RootTerms) -> f64 {
        -t.ln_r - t.ln_deriv + self.p.ln_abs_weighted_sum(t.r)
    }

    pub(crate) fn flavors_of(&self, t: &RootTerms) -> Flavors {
        let ln_cond_weyl = self.ln_cond_weyl(t);
        Flavors {
            ln_cond: self.ln_cond(t),
            ln_cond_weyl,
            ln_cw: self.ln_cw(t),
            ln_mu: mu_from_weyl(ln_cond_weyl, t.r),
        }
    }
}

fn mu_from_weyl(ln_cond_weyl: f64, r: f64) -> f64 {
    ln_cond_weyl + r.ln() - 0.5 * ln_one_plus_square(r)
}

/// Normwise relative condition of `p` at its simple root `zeta`.
pub fn ln_cond(p: &Polynomial, zeta: Complex64) -> Result<f64> {
    let c = Conditioner::new(p)?;
    let t = c.root_terms(zeta)?;
    Ok(c.ln_cond(&t))
}

/// Condition induced by the Weyl norm.
pub fn ln_cond_weyl(p: &Polynomial, zeta: Complex64) -> Result<f64> {
    let c = Conditioner::new(p)?;
    let t = c.root_terms(zeta)?;
    Ok(c.ln_cond_weyl(&t))
}

/// Componentwise condition. Zero coefficients contribute nothing to the sum.
pub fn ln_cond_componentwise(p: &Polynomial, zeta: Complex64) -> Result<f64> {
    let c = Conditioner::new(p)?;
    let t = c.root_terms(zeta)?;
    Ok(c.ln_cw(&t))
}

/// Projective condition `μ` of the homogenized polynomial at `[ζ : 1]`.
pub fn ln_mu_projective(p: &Polynomial, zeta: Complex64) -> Result<f64> {
    let weyl = ln_cond_weyl(p, zeta)?;
    Ok(mu_from_weyl(weyl, zeta.norm()))
}

/// `Σ_{j≠i} [ln r_i + ln r_j − ln(r_i + r_j)]` for 0-based `i`: the log of
/// the eigenvalue-moduli product that lower-bounds every flavor except the
/// componentwise one at a characteristic polynomial. Returns `-inf` when a
/// modulus entering the product is zero.
pub fn ln_pair_product_bound(moduli: &[f64], i: usize) -> Result<f64> {
    if i >= moduli.len() {
        return Err(Error::InvalidArgument(format!(
            "index {i} out of range for {} moduli",
            moduli.len()
        )));
    }
    if moduli.iter().any(|&m| m.is_nan() || m < 0.0) {
        return Err(Error::InvalidArgument("moduli must be nonnegative".into()));
    }
    let ri = moduli[i];
    if ri == 0.0 && moduli.len() > 1 {
        return Ok(f64::NEG_INFINITY);
    }
    let mut total = 0.0;
    for (j, &rj) in moduli.iter().enumerate() {
        if j == i {
            continue;
        }
        if rj == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        total += ri.ln() + rj.ln() - (ri + rj).ln();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quad() -> Polynomial {
        Polynomial::from_real(&[2.0, -3.0, 1.0]).unwrap()
    }

    #[test]
    fn normwise_examples() {
        let p = Polynomial::from_real(&[-1.0, 1.0]).unwrap();
        assert!((ln_cond(&p, c(1.0, 0.0)).unwrap() - LN_2).abs() < 1e-15);
        assert!((ln_cond(&quad(), c(1.0, 0.0)).unwrap() - 0.5 * 42f64.ln()).abs() < 1e-14);
        assert!((0.5 * 42f64.ln() - 1.8684).abs() < 1e-3);
    }

    #[test]
    fn weyl_examples() {
        let got = ln_cond_weyl(&quad(), c(1.0, 0.0)).unwrap();
        assert!((got - (9.5f64.sqrt() * 2.0).ln()).abs() < 1e-14);
        assert!((got - 1.8194).abs() < 1e-3);
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        assert!((ln_cond_weyl(&p, c(1.0, 0.0)).unwrap() - 0.5 * LN_2).abs() < 1e-15);
    }

    #[test]
    fn componentwise_examples() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        assert!(ln_cond_componentwise(&p, c(1.0, 0.0)).unwrap().abs() < 1e-15);
        assert!((ln_cond_componentwise(&quad(), c(1.0, 0.0)).unwrap() - 6f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn projective_example() {
        let got = ln_mu_projective(&quad(), c(1.0, 0.0)).unwrap();
        assert!((got - (9.5f64.sqrt() * 2f64.sqrt()).ln()).abs() < 1e-14);
        assert!((got - 1.4728).abs() < 1e-3);
    }

    #[test]
    fn pair_bound_examples() {
        assert!((ln_pair_product_bound(&[1.0, 1.0], 0).unwrap() - 0.5f64.ln()).abs() < 1e-15);
        assert!(
            (ln_pair_product_bound(&[1.0, 2.0], 0).unwrap() - (2.0f64 / 3.0).ln()).abs() < 1e-15
        );
        assert_eq!(ln_pair_product_bound(&[3.5], 0).unwrap(), 0.0);
        assert_eq!(
            ln_pair_product_bound(&[1.0, 0.0, 2.0], 2).unwrap(),
            f64::NEG_INFINITY
        );
        assert!(ln_pair_product_bound(&[1.0], 1).is_err());
    }

    #[test]
    fn zero_root_is_rejected() {
        let p = Polynomial::from_real(&[0.0, 1.0, 1.0]).unwrap();
        assert!(matches!(ln_cond(&p, c(0.0, 0.0)), Err(Error::ZeroRoot)));
        assert!(matches!(
            ln_cond_weyl(&p, c(0.0, 0.0)),
            Err(Error::ZeroRoot)
        ));
    }

    #[test]
    fn double_root_is_rejected() {
        let p = Polynomial::from_real(&[1.0, -2.0, 1.0]).unwrap();
        assert!(matches!(
            ln_cond(&p, c(1.0, 0.0)),
            Err(Error::NumericallyMultiple { .. })
        ));
        // constant polynomial: derivative vanishes identically
        let k = Polynomial::from_real(&[3.0]).unwrap();
        assert!(matches!(
            ln_cond_componentwise(&k, c(1.0, 0.0)),
            Err(Error::NumericallyMultiple { .. })
        ));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(matches!(
            ln_cond(&Polynomial::zero(), c(1.0, 0.0)),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn mu_identity_is_exact() {
        let p =
            Polynomial::new(vec![c(0.3, -1.0), c(2.0, 0.5), c(-1.0, 1.0), c(0.7, 0.0)]).unwrap();
        for z in [c(0.4, 0.9), c(-3.0, 2.0), c(0.01, 0.0)] {
            let w = ln_cond_weyl(&p, z).unwrap();
            let mu = ln_mu_projective(&p, z).unwrap();
            let r = z.norm();
            assert!((mu - (w + r.ln() - 0.5 * (1.0 + r * r).ln())).abs() < 1e-14);
            assert!(mu < w);
        }
    }

    #[test]
    fn large_roots_do_not_overflow() {
        // cond(X - c, c) = ‖(1, c)‖² / c ≈ c for huge c
        let p = Polynomial::from_real(&[-1e250, 1.0]).unwrap();
        let v = ln_cond(&p, c(1e250, 0.0)).unwrap();
        assert!((v - 1e250f64.ln()).abs() < 1e-10);
        assert!(ln_cond_weyl(&p, c(1e250, 0.0)).unwrap().is_finite());
    }
}
