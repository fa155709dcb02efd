//! Univariate complex polynomials in the monomial basis.
//!
//! Coefficients are stored in ascending degree, `a_0, a_1, ..., a_n`. Norms
//! are reported as natural logarithms so that degree-100 characteristic
//! polynomials, whose coefficients and norms routinely exceed `1e100`, stay
//! representable all the way through the condition-number formulas.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::logspace::log_sum_exp;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros. An empty or all-zero input gives the zero polynomial.
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::NonFiniteCoefficient);
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0)],
        }
    }

    /// `X^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: Complex64) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation. Overflow yields infinities.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    /// Coefficients `k * a_k` shifted down one degree. A constant polynomial
    /// differentiates to the zero polynomial; check [`Polynomial::is_zero`].
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * k as f64)
            .collect();
        Self { coeffs }
    }

    /// `ln |p(z)|`, evaluated on max-scaled coefficients and, for `|z| > 1`,
    /// on the reversed polynomial in `1/z`. Finite whenever the true value
    /// is, regardless of the size of `z^n` or the coefficients.
    pub fn ln_abs_eval(&self, z: Complex64) -> f64 {
        let scale = self.max_abs_coeff();
        if scale == 0.0 {
            return f64::NEG_INFINITY;
        }
        let r = z.norm();
        if r <= 1.0 {
            let v = self
                .coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a / scale);
            v.norm().ln() + scale.ln()
        } else {
            let w = z.inv();
            let v = self
                .coeffs
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * w + a / scale);
            v.norm().ln() + self.degree() as f64 * r.ln() + scale.ln()
        }
    }

    /// `½ ln Σ |a_k|²`, computed with the largest modulus factored out.
    pub fn ln_euclidean_norm(&self) -> Result<f64> {
        let scale = self.max_abs_coeff();
        if scale == 0.0 {
            return Err(Error::ZeroPolynomial);
        }
        let sum: f64 = self.coeffs.iter().map(|a| (a / scale).norm_sqr()).sum();
        Ok(0.5 * sum.ln() + scale.ln())
    }

    /// `½ ln Σ binom(n,k)^{-1} |a_k|²` with log-space binomials.
    pub fn ln_weyl_norm(&self) -> Result<f64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = self.degree();
        let terms: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 0.0)
            .map(|(k, a)| 2.0 * a.norm().ln() - ln_binomial(n, k))
            .collect();
        Ok(0.5 * log_sum_exp(terms.iter().copied()))
    }

    /// Sum of `ln|a_k|` weighted log terms: `ln Σ |a_k| r^k`, skipping zero
    /// coefficients.
    pub(crate) fn ln_abs_weighted_sum(&self, r: f64) -> f64 {
        let ln_r = r.ln();
        let terms: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 0.0)
            .map(|(k, a)| a.norm().ln() + k as f64 * ln_r)
            .collect();
        log_sum_exp(terms.iter().copied())
    }

    fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }
}

/// `ln binom(n, k)` via log-gamma.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    debug_assert!(k <= n);
    libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0)
}

/// Monic `(X - λ_1)...(X - λ_n)` by sequential product expansion. Empty
/// input gives the constant 1.
pub fn char_poly_from_spectrum(eigs: &[Complex64]) -> Result<Polynomial> {
    if eigs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFiniteCoefficient);
    }
    let mut coeffs = Vec::with_capacity(eigs.len() + 1);
    coeffs.push(Complex64::new(1.0, 0.0));
    for &lambda in eigs {
        coeffs.push(Complex64::new(0.0, 0.0));
        for k in (1..coeffs.len()).rev() {
            coeffs[k] = coeffs[k - 1] - lambda * coeffs[k];
        }
        coeffs[0] = -lambda * coeffs[0];
    }
    Polynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_small_cases() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(p.eval(c(2.0, 0.0)), c(3.0, 0.0));
        let lambda = c(0.25, -1.5);
        let q = Polynomial::new(vec![-lambda, c(1.0, 0.0)]).unwrap();
        assert_eq!(q.eval(lambda), c(0.0, 0.0));
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = Polynomial::from_real(&[1.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.degree(), 1);
        assert!(Polynomial::from_real(&[0.0, 0.0]).unwrap().is_zero());
        assert!(Polynomial::new(vec![]).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(
            Polynomial::from_real(&[1.0, f64::NAN]),
            Err(Error::NonFiniteCoefficient)
        ));
    }

    #[test]
    fn derivative_examples() {
        let p = Polynomial::from_real(&[2.0, -3.0, 1.0]).unwrap();
        assert_eq!(p.derivative(), Polynomial::from_real(&[-3.0, 2.0]).unwrap());
        assert!(Polynomial::from_real(&[5.0])
            .unwrap()
            .derivative()
            .is_zero());
        // (X-1)(X-2) has |p'(1)| = 1
        assert_eq!(p.derivative().eval(c(1.0, 0.0)).norm(), 1.0);
    }

    #[test]
    fn euclidean_norm_examples() {
        let p = Polynomial::from_real(&[-1.0, 1.0]).unwrap();
        assert!((p.ln_euclidean_norm().unwrap() - 0.5 * 2f64.ln()).abs() < 1e-15);
        let q = Polynomial::from_real(&[2.0, -3.0, 1.0]).unwrap();
        assert!((q.ln_euclidean_norm().unwrap() - 0.5 * 14f64.ln()).abs() < 1e-15);
        let big = Polynomial::from_real(&[1e200]).unwrap();
        assert!((big.ln_euclidean_norm().unwrap() - 1e200f64.ln()).abs() < 1e-12);
        assert!(matches!(
            Polynomial::zero().ln_euclidean_norm(),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn weyl_norm_examples() {
        let q = Polynomial::from_real(&[2.0, -3.0, 1.0]).unwrap();
        assert!((q.ln_weyl_norm().unwrap() - 0.5 * 9.5f64.ln()).abs() < 1e-14);
        assert!(Polynomial::monomial(37).ln_weyl_norm().unwrap().abs() < 1e-12);
        assert!(matches!(
            Polynomial::zero().ln_weyl_norm(),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn char_poly_examples() {
        let p = char_poly_from_spectrum(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(p, Polynomial::from_real(&[2.0, -3.0, 1.0]).unwrap());
        let q = char_poly_from_spectrum(&[c(0.0, 1.0), c(0.0, -1.0)]).unwrap();
        assert_eq!(q, Polynomial::from_real(&[1.0, 0.0, 1.0]).unwrap());
        assert_eq!(
            char_poly_from_spectrum(&[]).unwrap(),
            Polynomial::from_real(&[1.0]).unwrap()
        );
    }

    #[test]
    fn ln_abs_eval_matches_direct() {
        let p =
            Polynomial::new(vec![c(1.0, 2.0), c(-0.5, 0.25), c(3.0, -1.0), c(0.1, 0.0)]).unwrap();
        for z in [c(0.3, 0.7), c(-4.0, 2.5), c(0.0, 0.0), c(1.0, 0.0)] {
            let direct = p.eval(z).norm().ln();
            assert!((p.ln_abs_eval(z) - direct).abs() < 1e-13, "z = {z}");
        }
    }

    #[test]
    fn ln_abs_eval_beyond_overflow() {
        // (X - 1e200) at 2e200: value 1e200, but z^1 times coefficients is fine;
        // use X^300 at 1e3 where the direct value overflows.
        let p = Polynomial::monomial(300);
        let got = p.ln_abs_eval(c(1e3, 0.0));
        assert!((got - 300.0 * 1e3f64.ln()).abs() < 1e-10);
    }
}
