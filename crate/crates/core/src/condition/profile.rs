use num_complex::Complex64;
use serde::Serialize;

use super::{ln_pair_product_bound, Conditioner};
use crate::error::{Error, Result};
use crate::linalg::Spectrum;
use crate::logspace::to_linear;
use crate::polynomial::Polynomial;

/// Relative tolerance on the constant-term consistency check.
const CONSISTENCY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootIssue {
    ZeroRoot,
    NumericallyMultiple,
}

/// One eigenvalue's condition in every flavor. Flagged records carry NaN
/// condition values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CondRecord {
    pub lambda: Complex64,
    pub ln_cond: f64,
    pub ln_cond_weyl: f64,
    pub ln_cw: f64,
    pub ln_mu: f64,
    pub ln_pair_bound: f64,
    pub issue: Option<RootIssue>,
}

impl CondRecord {
    /// Linear-scale normwise condition, `None` when it overflows `f64`.
    pub fn cond_linear(&self) -> Option<f64> {
        to_linear(self.ln_cond)
    }
}

/// Condition numbers of a characteristic polynomial at each eigenvalue.
/// Extremes range over unflagged records only and are NaN if there are none.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CondProfile {
    pub records: Vec<CondRecord>,
    pub ln_cond_min: f64,
    pub ln_cond_max: f64,
    pub ln_cw_max: f64,
    pub ln_cond_mean: f64,
    pub flagged: usize,
}

impl CondProfile {
    pub fn valid_records(&self) -> impl Iterator<Item = &CondRecord> {
        self.records.iter().filter(|r| r.issue.is_none())
    }
}

/// Profiles `p` at every eigenvalue of `s`. `p` must be the characteristic
/// polynomial of the spectrum: same degree and `|a_0/a_n| = Π|λ_i|` to a
/// relative `1e-6`.
pub fn cond_profile(p: &Polynomial, s: &Spectrum) -> Result<CondProfile> {
    check_consistency(p, s)?;
    let conditioner = Conditioner::new(p)?;
    let moduli: Vec<f64> = s.eigenvalues.iter().map(|z| z.norm()).collect();
    let ln_leading = p.leading().norm().ln();

    let mut records = Vec::with_capacity(s.len());
    for (i, &lambda) in s.eigenvalues.iter().enumerate() {
        let ln_pair_bound = ln_pair_product_bound(&moduli, i)?;
        // p = a_n Π (z - λ_j), so p'(λ_i) = a_n Π_{j≠i} (λ_i - λ_j) exactly;
        // Horner on the expanded coefficients loses everything once the
        // root is badly conditioned.
        let ln_deriv = ln_leading
            + s.eigenvalues
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &mu)| (lambda - mu).norm().ln())
                .sum::<f64>();
        let flavors = conditioner
            .root_terms_with(lambda, ln_deriv)
            .map(|t| conditioner.flavors_of(&t));
        let record = match flavors {
            Ok(f) => CondRecord {
                lambda,
                ln_cond: f.ln_cond,
                ln_cond_weyl: f.ln_cond_weyl,
                ln_cw: f.ln_cw,
                ln_mu: f.ln_mu,
                ln_pair_bound,
                issue: None,
            },
            Err(e) => {
                let issue = match e {
                    Error::ZeroRoot => RootIssue::ZeroRoot,
                    Error::NumericallyMultiple { .. } => RootIssue::NumericallyMultiple,
                    other => return Err(other),
                };
                CondRecord {
                    lambda,
                    ln_cond: f64::NAN,
                    ln_cond_weyl: f64::NAN,
                    ln_cw: f64::NAN,
                    ln_mu: f64::NAN,
                    ln_pair_bound,
                    issue: Some(issue),
                }
            }
        };
        records.push(record);
    }

    let valid: Vec<&CondRecord> = records.iter().filter(|r| r.issue.is_none()).collect();
    let flagged = records.len() - valid.len();
    let (ln_cond_min, ln_cond_max, ln_cw_max, ln_cond_mean) = if valid.is_empty() {
        (f64::NAN, f64::NAN, f64::NAN, f64::NAN)
    } else {
        (
            valid
                .iter()
                .map(|r| r.ln_cond)
                .fold(f64::INFINITY, f64::min),
            valid
                .iter()
                .map(|r| r.ln_cond)
                .fold(f64::NEG_INFINITY, f64::max),
            valid
                .iter()
                .map(|r| r.ln_cw)
                .fold(f64::NEG_INFINITY, f64::max),
            valid.iter().map(|r| r.ln_cond).sum::<f64>() / valid.len() as f64,
        )
    };

    Ok(CondProfile {
        records,
        ln_cond_min,
        ln_cond_max,
        ln_cw_max,
        ln_cond_mean,
        flagged,
    })
}

fn check_consistency(p: &Polynomial, s: &Spectrum) -> Result<()> {
    if p.degree() != s.len() || p.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "polynomial of degree {} paired with {} eigenvalues",
            p.degree(),
            s.len()
        )));
    }
    let ln_constant = (p.coeffs()[0] / p.leading()).norm().ln();
    let ln_product: f64 = s.eigenvalues.iter().map(|z| z.norm().ln()).sum();
    let consistent = if ln_constant == f64::NEG_INFINITY || ln_product == f64::NEG_INFINITY {
        ln_constant == ln_product
    } else {
        (ln_constant - ln_product).abs() <= CONSISTENCY_TOL
    };
    if consistent {
        Ok(())
    } else {
        Err(Error::InconsistentSpectrum {
            constant: ln_constant.exp(),
            product: ln_product.exp(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigenvalues_default, ComplexMatrix};
    use crate::polynomial::char_poly_from_spectrum;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diag_one_two_matches_hand_values() {
        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let s = eigenvalues_default(&a).unwrap();
        let p = char_poly_from_spectrum(&s.eigenvalues).unwrap();
        let prof = cond_profile(&p, &s).unwrap();
        let at_one = prof
            .records
            .iter()
            .find(|r| (r.lambda - c(1.0, 0.0)).norm() < 1e-12)
            .unwrap();
        assert!((at_one.ln_cond - 0.5 * 42f64.ln()).abs() < 1e-12);
        assert!((at_one.ln_cond_weyl - (9.5f64.sqrt() * 2.0).ln()).abs() < 1e-12);
        assert!((at_one.ln_cw - 6f64.ln()).abs() < 1e-12);
        assert!((at_one.ln_mu - (9.5f64.sqrt() * 2f64.sqrt()).ln()).abs() < 1e-12);
        assert!((at_one.ln_pair_bound - (2.0f64 / 3.0).ln()).abs() < 1e-12);
        assert!(prof.ln_cond_min <= prof.ln_cond_max);
        assert_eq!(prof.flagged, 0);
        assert!(at_one.cond_linear().is_some());
    }

    #[test]
    fn mismatched_pair_is_rejected() {
        let s = Spectrum::new(vec![c(1.0, 0.0), c(2.0, 0.0)], 0.0);
        let wrong = Polynomial::from_real(&[3.0, -4.0, 1.0]).unwrap();
        assert!(matches!(
            cond_profile(&wrong, &s),
            Err(Error::InconsistentSpectrum { .. })
        ));
        let short = Polynomial::from_real(&[-1.0, 1.0]).unwrap();
        assert!(cond_profile(&short, &s).is_err());
    }

    #[test]
    fn multiple_and_zero_eigenvalues_are_flagged() {
        let s = Spectrum::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(3.0, 0.0)], 0.0);
        let p = char_poly_from_spectrum(&s.eigenvalues).unwrap();
        let prof = cond_profile(&p, &s).unwrap();
        assert_eq!(prof.flagged, 2);
        assert_eq!(prof.ln_cond_min, prof.ln_cond_max);

        let s = Spectrum::new(vec![c(0.0, 0.0), c(2.0, 0.0)], 0.0);
        let p = char_poly_from_spectrum(&s.eigenvalues).unwrap();
        let prof = cond_profile(&p, &s).unwrap();
        assert_eq!(prof.records[0].issue, Some(RootIssue::ZeroRoot));
        assert_eq!(prof.flagged, 1);
    }
}
