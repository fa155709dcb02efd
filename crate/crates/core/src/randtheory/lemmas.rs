//! Monte Carlo checks of the χ-variable moment facts behind the lower bounds.
//!
//! Throughout, `r_k ~ χ_{2k}` (so `r_k² ~ χ²_{2k}`) and distinct indices are
//! independent. Each check draws `draws` ladders `(r_1, …, r_m)` from one
//! seeded stream and compares a sample mean to its target with a slack of
//! three standard errors.

use serde::Serialize;

use super::chi2::{expected_ln_chi2, ChiSquareSpec};
use super::special::digamma;
use crate::error::{Error, Result};
use crate::linalg::rng::{derive_seed, GaussianStream};
use crate::stats::MeanSe;

pub const SE_SLACK: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `|mean - target| ≤ 3 SE`
    Equal,
    /// `mean ≤ target + 3 SE`
    AtMost,
    /// `mean ≥ target - 3 SE`
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloCheck {
    pub label: String,
    pub i: usize,
    pub j: usize,
    pub mean: f64,
    pub se: f64,
    pub target: f64,
    pub relation: Relation,
    pub passed: bool,
}

impl MonteCarloCheck {
    fn new(
        label: &str,
        i: usize,
        j: usize,
        samples: &[f64],
        target: f64,
        relation: Relation,
    ) -> Self {
        let MeanSe { mean, se } = MeanSe::of(samples);
        let slack = SE_SLACK * se;
        let passed = match relation {
            Relation::Equal => (mean - target).abs() <= slack,
            Relation::AtMost => mean <= target + slack,
            Relation::AtLeast => mean >= target - slack,
        };
        Self {
            label: label.to_string(),
            i,
            j,
            mean,
            se,
            target,
            relation,
            passed,
        }
    }
}

/// Draws `draws` independent ladders `(r_1, …, r_m)`.
fn ladders(m: usize, draws: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let specs: Vec<ChiSquareSpec> = (1..=m)
        .map(|k| ChiSquareSpec::new(2 * k as u32))
        .collect::<Result<_>>()?;
    let mut stream = GaussianStream::new(seed);
    Ok((0..draws)
        .map(|_| specs.iter().map(|s| s.draw(&mut stream).sqrt()).collect())
        .collect())
}

fn check_draws(draws: usize) -> Result<()> {
    if draws < 2 {
        return Err(Error::InvalidArgument("need at least two draws".into()));
    }
    Ok(())
}

/// `E ln r_i² = ψ(i) + ln 2` for each listed `i`.
pub fn check_expected_ln_chi2(
    indices: &[usize],
    draws: usize,
    seed: u64,
) -> Result<Vec<MonteCarloCheck>> {
    check_draws(draws)?;
    indices
        .iter()
        .map(|&i| {
            if i == 0 {
                return Err(Error::InvalidArgument("index must be >= 1".into()));
            }
            let spec = ChiSquareSpec::new(2 * i as u32)?;
            let mut stream = GaussianStream::new(derive_seed(seed, &[i as u64]));
            let samples: Vec<f64> = (0..draws).map(|_| spec.draw(&mut stream).ln()).collect();
            let target = expected_ln_chi2(2 * i as u32)?;
            Ok(MonteCarloCheck::new(
                "E ln chi2_2i",
                i,
                0,
                &samples,
                target,
                Relation::Equal,
            ))
        })
        .collect()
}

/// `E ln((r_i + r_j)/r_j) ≤ √(i/(j-1))` for `1 ≤ i ≤ max_i`, `2 ≤ j ≤ max_j`,
/// `i ≠ j`.
pub fn check_ratio_log_bound(
    max_i: usize,
    max_j: usize,
    draws: usize,
    seed: u64,
) -> Result<Vec<MonteCarloCheck>> {
    check_draws(draws)?;
    let rs = ladders(max_i.max(max_j), draws, seed)?;
    let mut out = Vec::new();
    for i in 1..=max_i {
        for j in 2..=max_j {
            if i == j {
                continue;
            }
            let samples: Vec<f64> = rs
                .iter()
                .map(|r| ((r[i - 1] + r[j - 1]) / r[j - 1]).ln())
                .collect();
            let target = (i as f64 / (j as f64 - 1.0)).sqrt();
            out.push(MonteCarloCheck::new(
                "E ln((r_i+r_j)/r_j)",
                i,
                j,
                &samples,
                target,
                Relation::AtMost,
            ));
        }
    }
    Ok(out)
}

/// `E r_i²/r_j² = (i/j)·(2j/(2j-2))`, the F-distribution mean, for
/// `1 ≤ i ≤ max_i`, `2 ≤ j ≤ max_j`, `i ≠ j`.
pub fn check_f_moment(
    max_i: usize,
    max_j: usize,
    draws: usize,
    seed: u64,
) -> Result<Vec<MonteCarloCheck>> {
    check_draws(draws)?;
    let rs = ladders(max_i.max(max_j), draws, seed)?;
    let mut out = Vec::new();
    for i in 1..=max_i {
        for j in 2..=max_j {
            if i == j {
                continue;
            }
            let samples: Vec<f64> = rs
                .iter()
                .map(|r| (r[i - 1] * r[i - 1]) / (r[j - 1] * r[j - 1]))
                .collect();
            let (fi, fj) = (i as f64, j as f64);
            let target = fi / fj * (2.0 * fj / (2.0 * fj - 2.0));
            out.push(MonteCarloCheck::new(
                "E r_i^2/r_j^2",
                i,
                j,
                &samples,
                target,
                Relation::Equal,
            ));
        }
    }
    Ok(out)
}

/// `E ln(r_i r_j/(r_i + r_j)) ≥ E ln(s_2 r_j/(s_2 + r_j)) - ½ ln 2` for
/// `2 ≤ i ≤ max_i`, `1 ≤ j ≤ max_j`, `i ≠ j`, where `s_2 ~ χ_4` is an
/// independent copy so that the right-hand pair is independent even when
/// `j = 2`. Tested on the paired difference, which shares `r_j`.
pub fn check_pair_coupling(
    max_i: usize,
    max_j: usize,
    draws: usize,
    seed: u64,
) -> Result<Vec<MonteCarloCheck>> {
    check_draws(draws)?;
    let m = max_i.max(max_j).max(2);
    let rs = ladders(m, draws, derive_seed(seed, &[0]))?;
    let spec = ChiSquareSpec::new(4)?;
    let mut stream = GaussianStream::new(derive_seed(seed, &[1]));
    let copies: Vec<f64> = (0..draws).map(|_| spec.draw(&mut stream).sqrt()).collect();

    let mut out = Vec::new();
    for i in 2..=max_i {
        for j in 1..=max_j {
            if i == j {
                continue;
            }
            let samples: Vec<f64> = rs
                .iter()
                .zip(&copies)
                .map(|(r, &s2)| {
                    let (ri, rj) = (r[i - 1], r[j - 1]);
                    (ri * rj / (ri + rj)).ln() - (s2 * rj / (s2 + rj)).ln()
                })
                .collect();
            let target = -0.5 * std::f64::consts::LN_2;
            out.push(MonteCarloCheck::new(
                "E ln(r_i r_j/(r_i+r_j)) - E ln(r_2 r_j/(r_2+r_j))",
                i,
                j,
                &samples,
                target,
                Relation::AtLeast,
            ));
        }
    }
    Ok(out)
}

/// `ψ(i) + ψ(j) - ψ(i+j) - [ψ(2) + ψ(j) - ψ(2+j)]`, nonnegative for
/// `i ≥ 2`, `j ≥ 1`.
pub fn digamma_coupling_gap(i: usize, j: usize) -> Result<f64> {
    let psi = |x: usize| digamma(x as f64);
    Ok(psi(i)? + psi(j)? - psi(i + j)? - (psi(2)? + psi(j)? - psi(2 + j)?))
}
