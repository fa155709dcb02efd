use rayon::prelude::*;
use serde::Serialize;

use super::{build_pool, profile_ginibre, EntryScale, MAX_DROP_FRACTION};
use crate::bounds::thm2_second_moment_bound;
use crate::error::{Error, Result};
use crate::linalg::rng::{derive_seed, GaussianStream};
use crate::logspace::LogSumExp;

pub const MIN_SECOND_MOMENT_TRIALS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecondMomentReport {
    pub n: usize,
    pub trials: usize,
    pub dropped: usize,
    /// `ln` of the sample mean of `cond²`.
    pub ln_mean_cond_sq: f64,
    pub ln_bound: f64,
    pub passed: bool,
}

/// `2 ln cond(χ_A, λ)` for `trials` draws of `(A, λ)`, `A` Ginibre and `λ`
/// one of its eigenvalues picked uniformly; `None` marks a dropped trial.
/// Trial `t` uses matrix seed `derive_seed(seed, [n, t, 0])` and index seed
/// `derive_seed(seed, [n, t, 1])`, so a longer run extends a shorter one.
pub fn second_moment_samples(
    n: usize,
    trials: usize,
    seed: u64,
    workers: usize,
) -> Result<Vec<Option<f64>>> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let pool = build_pool(workers)?;
    pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let (n64, t64) = (n as u64, t as u64);
                let Some((_, profile)) =
                    profile_ginibre(n, derive_seed(seed, &[n64, t64, 0]), EntryScale::Standard)?
                else {
                    return Ok(None);
                };
                let i = GaussianStream::new(derive_seed(seed, &[n64, t64, 1])).index(n);
                Ok(Some(2.0 * profile.records[i].ln_cond))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    })
}

/// Estimates `ln E cond²` for `n ∈ {2, 3}` with at least `10⁵` trials and
/// compares it with `ln((n-1)! 2ⁿ)`. The sum of `cond²` is accumulated as a
/// streaming log-sum-exp in trial order.
pub fn run_second_moment_check(n: usize, trials: usize, seed: u64) -> Result<SecondMomentReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "second-moment check supports n in {{2, 3}}, got {n}"
        )));
    }
    if trials < MIN_SECOND_MOMENT_TRIALS {
        return Err(Error::InvalidArgument(format!(
            "second-moment check needs at least {MIN_SECOND_MOMENT_TRIALS} trials"
        )));
    }
    let samples = second_moment_samples(n, trials, seed, 0)?;
    let mut acc = LogSumExp::new();
    let mut kept = 0usize;
    for v in samples.iter().flatten() {
        acc.push(*v);
        kept += 1;
    }
    let dropped = trials - kept;
    if kept == 0 || dropped as f64 > MAX_DROP_FRACTION * trials as f64 {
        return Err(Error::TooManyDrops { n, dropped, trials });
    }
    let ln_mean_cond_sq = acc.value() - (kept as f64).ln();
    let ln_bound = thm2_second_moment_bound(n)?;
    Ok(SecondMomentReport {
        n,
        trials,
        dropped,
        ln_mean_cond_sq,
        ln_bound,
        passed: ln_mean_cond_sq >= ln_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_checks() {
        assert!(run_second_moment_check(4, MIN_SECOND_MOMENT_TRIALS, 1).is_err());
        assert!(run_second_moment_check(2, 10, 1).is_err());
    }

    #[test]
    fn prefix_extension() {
        let short = second_moment_samples(2, 50, 5, 2).unwrap();
        let long = second_moment_samples(2, 120, 5, 1).unwrap();
        assert_eq!(short[..], long[..50]);
    }
}
