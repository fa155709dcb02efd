//! Statistical check that squared eigenvalue moduli of complex Ginibre
//! matrices behave like independent `χ²_2, χ²_4, …, χ²_{2n}` variables.
//!
//! The identity is between unordered sets, so it is tested through
//! observables that do not depend on labelling: selected order statistics
//! (two-sample KS against the sorted reference sets) and the log-determinant
//! `Σ ln|λ_i|²`, whose mean must equal `Σ_i (ψ(i) + ln 2)`.

use rayon::prelude::*;
use serde::Serialize;

use super::chi2::{expected_ln_chi2, ChiSquareSpec};
use super::ks::ks_two_sample;
use crate::error::{Error, Result};
use crate::linalg::rng::{derive_seed, GaussianStream};
use crate::linalg::{eigenvalues_default, sample_ginibre};
use crate::stats::MeanSe;

/// KS p-values at or below this fail the check.
pub const P_VALUE_THRESHOLD: f64 = 0.001;
/// Allowed deviation of the log-determinant mean, in standard errors.
pub const SE_SLACK: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderStatisticTest {
    /// 1-based rank among the `n` squared moduli.
    pub k: usize,
    pub statistic: f64,
    pub p_value: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KostlanReport {
    pub n: usize,
    pub trials: usize,
    pub dropped: usize,
    pub order_statistics: Vec<OrderStatisticTest>,
    pub ln_det_mean: f64,
    pub ln_det_se: f64,
    pub ln_det_expected: f64,
    pub ln_det_passed: bool,
    pub passed: bool,
}

/// Order statistics examined for dimension `n`: `{1, ⌈n/2⌉, n}`.
pub fn tested_ranks(n: usize) -> Vec<usize> {
    let mut ks = vec![1, n.div_ceil(2), n];
    ks.dedup();
    ks
}

/// Runs `trials ≥ 200` Ginibre spectra against as many reference sets.
/// Trial `t` uses matrix seed `derive_seed(seed, [0, n, t])` and reference
/// seed `derive_seed(seed, [1, n, t])`; eigensolver failures drop the trial.
pub fn verify_kostlan(n: usize, trials: usize, seed: u64) -> Result<KostlanReport> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if trials < 200 {
        return Err(Error::InvalidArgument(
            "Kostlan check needs at least 200 trials".into(),
        ));
    }
    let ladder: Vec<ChiSquareSpec> = (1..=n)
        .map(|i| ChiSquareSpec::new(2 * i as u32))
        .collect::<Result<_>>()?;

    let outcomes: Vec<Option<(Vec<f64>, Vec<f64>)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let a = sample_ginibre(n, derive_seed(seed, &[0, n as u64, t as u64])).ok()?;
            let spectrum = eigenvalues_default(&a).ok()?;
            let mut observed: Vec<f64> =
                spectrum.eigenvalues.iter().map(|z| z.norm_sqr()).collect();
            observed.sort_by(f64::total_cmp);

            let mut stream = GaussianStream::new(derive_seed(seed, &[1, n as u64, t as u64]));
            let mut reference: Vec<f64> = ladder.iter().map(|c| c.draw(&mut stream)).collect();
            reference.sort_by(f64::total_cmp);
            Some((observed, reference))
        })
        .collect();

    let kept: Vec<&(Vec<f64>, Vec<f64>)> = outcomes.iter().flatten().collect();
    let dropped = trials - kept.len();
    if kept.is_empty() {
        return Err(Error::TooManyDrops { n, dropped, trials });
    }

    let order_statistics: Vec<OrderStatisticTest> = tested_ranks(n)
        .into_iter()
        .map(|k| {
            let xs: Vec<f64> = kept.iter().map(|(o, _)| o[k - 1]).collect();
            let ys: Vec<f64> = kept.iter().map(|(_, r)| r[k - 1]).collect();
            let ks = ks_two_sample(&xs, &ys)?;
            Ok(OrderStatisticTest {
                k,
                statistic: ks.statistic,
                p_value: ks.p_value,
                passed: ks.p_value > P_VALUE_THRESHOLD,
            })
        })
        .collect::<Result<_>>()?;

    let ln_dets: Vec<f64> = kept
        .iter()
        .map(|(o, _)| o.iter().map(|x| x.ln()).sum())
        .collect();
    let MeanSe { mean, se } = MeanSe::of(&ln_dets);
    let expected = (1..=n)
        .map(|i| expected_ln_chi2(2 * i as u32))
        .sum::<Result<f64>>()?;
    let ln_det_passed = (mean - expected).abs() <= SE_SLACK * se;
    let passed = ln_det_passed && order_statistics.iter().all(|t| t.passed);

    Ok(KostlanReport {
        n,
        trials,
        dropped,
        order_statistics,
        ln_det_mean: mean,
        ln_det_se: se,
        ln_det_expected: expected,
        ln_det_passed,
        passed,
    })
}
