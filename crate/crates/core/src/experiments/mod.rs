//! Monte Carlo harness over complex Ginibre matrices: per-dimension
//! averages of log-condition extremes of the characteristic polynomial's
//! roots, bound verification, and plain-text table output.
//!
//! Trial `t` at dimension `n` uses the matrix seed
//! `derive_seed(master_seed, [n, t])`. Trials run on a rayon pool, their
//! scalars are collected into a buffer indexed by `t`, and the reduction
//! walks that buffer in order, so results do not depend on the worker count.

mod curves;
mod second_moment;
mod verify;

use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::condition::{cond_profile, CondProfile};
use crate::error::{Error, Result};
use crate::linalg::rng::derive_seed;
use crate::linalg::{eigenvalues_default, sample_ginibre, Spectrum};
use crate::polynomial::char_poly_from_spectrum;
use crate::stats::MeanSe;

pub use curves::{emit_table, format_sig6, normalized_curves, Curve, NormalizedCurves};
pub use second_moment::{
    run_second_moment_check, second_moment_samples, SecondMomentReport, MIN_SECOND_MOMENT_TRIALS,
};
pub use verify::{verify_theorem_bounds, BoundCheckRow, BoundsReport, MIN_VERIFY_TRIALS};

/// Slack for `ln cond ≥ pair-product bound`.
pub const PAIR_BOUND_TOL: f64 = 1e-6;
/// Slack for `ln cond ≥ -ln n`.
pub const FLOOR_TOL: f64 = 1e-9;
/// A dimension aborts when more than this fraction of its trials is dropped.
pub const MAX_DROP_FRACTION: f64 = 0.05;

pub const CSV_HEADER: &str =
    "n,trials,avg_ln_cond_min,se_min,avg_ln_cond_max,se_max,avg_ln_cw_max,se_cw,avg_ln_cond_mean_i,se_mean_i,dropped";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Euclidean,
    Weyl,
    Componentwise,
    Projective,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [
        Flavor::Euclidean,
        Flavor::Weyl,
        Flavor::Componentwise,
        Flavor::Projective,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Euclidean => "euclidean",
            Flavor::Weyl => "weyl",
            Flavor::Componentwise => "componentwise",
            Flavor::Projective => "projective",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown flavor `{s}`")))
    }
}

/// Entry normalization of the sampled matrices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryScale {
    /// Real and imaginary parts `N(0, 1)`, so `E|a_ij|² = 2`.
    #[default]
    Standard,
    /// Entries divided by `√2`, so `E|a_ij|² = 1`.
    UnitVariance,
}

impl EntryScale {
    pub fn name(self) -> &'static str {
        match self {
            EntryScale::Standard => "standard",
            EntryScale::UnitVariance => "unit-variance",
        }
    }

    fn factor(self) -> f64 {
        match self {
            EntryScale::Standard => 1.0,
            EntryScale::UnitVariance => std::f64::consts::FRAC_1_SQRT_2,
        }
    }
}

impl FromStr for EntryScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [EntryScale::Standard, EntryScale::UnitVariance]
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown entry scale `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub trials_per_n: usize,
    pub master_seed: u64,
    /// Euclidean is always computed; the others add inline checks
    /// (Weyl, projective) or fill the `cw` columns (componentwise).
    pub flavors: Vec<Flavor>,
    /// Worker threads; 0 picks the rayon default.
    pub workers: usize,
    pub entry_scale: EntryScale,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_min: 2,
            n_max: 100,
            trials_per_n: 500,
            master_seed: 0,
            flavors: vec![Flavor::Euclidean, Flavor::Componentwise],
            workers: 0,
            entry_scale: EntryScale::Standard,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(Error::InvalidArgument(format!(
                "need 2 <= n_min <= n_max, got {}..={}",
                self.n_min, self.n_max
            )));
        }
        if self.trials_per_n == 0 {
            return Err(Error::InvalidArgument("trials_per_n must be >= 1".into()));
        }
        Ok(())
    }

    fn has(&self, f: Flavor) -> bool {
        self.flavors.contains(&f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub n: usize,
    /// Trials that contributed, i.e. `trials_per_n - dropped`.
    pub trials: usize,
    pub avg_ln_cond_min: f64,
    pub se_min: f64,
    pub avg_ln_cond_max: f64,
    pub se_max: f64,
    pub avg_ln_cw_max: f64,
    pub se_cw: f64,
    pub avg_ln_cond_mean_i: f64,
    pub se_mean_i: f64,
    pub dropped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentTable {
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.trials,
                r.avg_ln_cond_min,
                r.se_min,
                r.avg_ln_cond_max,
                r.se_max,
                r.avg_ln_cw_max,
                r.se_cw,
                r.avg_ln_cond_mean_i,
                r.se_mean_i,
                r.dropped
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

/// Per-matrix scalars feeding one table row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialStats {
    pub ln_cond_min: f64,
    pub ln_cond_max: f64,
    pub ln_cw_max: f64,
    pub ln_cond_mean: f64,
}

/// Samples, solves and profiles one Ginibre matrix. `Ok(None)` means the
/// trial is dropped (eigensolver failure or a flagged eigenvalue).
pub fn profile_ginibre(
    n: usize,
    seed: u64,
    scale: EntryScale,
) -> Result<Option<(Spectrum, CondProfile)>> {
    let mut a = sample_ginibre(n, seed)?;
    if scale != EntryScale::Standard {
        let c = scale.factor();
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] *= c;
            }
        }
    }
    let spectrum = match eigenvalues_default(&a) {
        Ok(s) => s,
        Err(Error::NoConvergence { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let p = char_poly_from_spectrum(&spectrum.eigenvalues)?;
    let profile = match cond_profile(&p, &spectrum) {
        Ok(pr) => pr,
        Err(Error::InconsistentSpectrum { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if profile.flagged > 0 {
        return Ok(None);
    }
    Ok(Some((spectrum, profile)))
}

fn run_trial(cfg: &ExperimentConfig, n: usize, t: usize) -> Result<Option<TrialStats>> {
    let seed = derive_seed(cfg.master_seed, &[n as u64, t as u64]);
    let Some((_, profile)) = profile_ginibre(n, seed, cfg.entry_scale)? else {
        return Ok(None);
    };
    let violation = |detail: String| Error::InvariantViolation {
        n,
        trial: t,
        seed,
        detail,
    };
    let floor = -(n as f64).ln() - FLOOR_TOL;
    // NaN never satisfies `>=`, so it is reported as a violation too.
    let below = |v: f64, b: f64| v.partial_cmp(&b).is_none_or(|o| o.is_lt());
    for (i, r) in profile.records.iter().enumerate() {
        let bound = r.ln_pair_bound - PAIR_BOUND_TOL;
        if below(r.ln_cond, bound) {
            return Err(violation(format!(
                "eigenvalue {i}: ln cond {} below pair bound {}",
                r.ln_cond, r.ln_pair_bound
            )));
        }
        if below(r.ln_cond, floor) {
            return Err(violation(format!(
                "eigenvalue {i}: ln cond {} below -ln n",
                r.ln_cond
            )));
        }
        if cfg.has(Flavor::Weyl) && below(r.ln_cond_weyl, bound) {
            return Err(violation(format!(
                "eigenvalue {i}: ln cond_W {} below pair bound {}",
                r.ln_cond_weyl, r.ln_pair_bound
            )));
        }
        if cfg.has(Flavor::Projective) && below(r.ln_mu, bound) {
            return Err(violation(format!(
                "eigenvalue {i}: ln mu {} below pair bound {}",
                r.ln_mu, r.ln_pair_bound
            )));
        }
    }
    Ok(Some(TrialStats {
        ln_cond_min: profile.ln_cond_min,
        ln_cond_max: profile.ln_cond_max,
        ln_cw_max: if cfg.has(Flavor::Componentwise) {
            profile.ln_cw_max
        } else {
            f64::NAN
        },
        ln_cond_mean: profile.ln_cond_mean,
    }))
}

/// Runs every trial at dimension `n` and returns the outcomes in trial order.
fn run_dimension(cfg: &ExperimentConfig, n: usize) -> Result<Vec<Option<TrialStats>>> {
    (0..cfg.trials_per_n)
        .into_par_iter()
        .map(|t| run_trial(cfg, n, t))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub(crate) fn build_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

fn aggregate(n: usize, outcomes: &[Option<TrialStats>]) -> Result<ExperimentRow> {
    let kept: Vec<&TrialStats> = outcomes.iter().flatten().collect();
    let trials = outcomes.len();
    let dropped = trials - kept.len();
    if kept.is_empty() || dropped as f64 > MAX_DROP_FRACTION * trials as f64 {
        return Err(Error::TooManyDrops { n, dropped, trials });
    }
    let column =
        |f: fn(&TrialStats) -> f64| MeanSe::of(&kept.iter().map(|s| f(s)).collect::<Vec<_>>());
    let min = column(|s| s.ln_cond_min);
    let max = column(|s| s.ln_cond_max);
    let cw = column(|s| s.ln_cw_max);
    let mean = column(|s| s.ln_cond_mean);
    Ok(ExperimentRow {
        n,
        trials: kept.len(),
        avg_ln_cond_min: min.mean,
        se_min: min.se,
        avg_ln_cond_max: max.mean,
        se_max: max.se,
        avg_ln_cw_max: cw.mean,
        se_cw: cw.se,
        avg_ln_cond_mean_i: mean.mean,
        se_mean_i: mean.se,
        dropped,
    })
}

/// Runs the full sweep `n_min..=n_max`. Aborts on the first invariant
/// violation (the error carries the trial seed) or when a dimension drops
/// more than 5% of its trials.
pub fn run_cond_experiment(cfg: &ExperimentConfig) -> Result<ExperimentTable> {
    cfg.validate()?;
    let pool = build_pool(cfg.workers)?;
    let rows = pool.install(|| {
        (cfg.n_min..=cfg.n_max)
            .map(|n| aggregate(n, &run_dimension(cfg, n)?))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(ExperimentTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(workers: usize) -> ExperimentConfig {
        ExperimentConfig {
            n_min: 2,
            n_max: 6,
            trials_per_n: 20,
            master_seed: 99,
            flavors: Flavor::ALL.to_vec(),
            workers,
            entry_scale: EntryScale::Standard,
        }
    }

    #[test]
    fn config_validation() {
        assert!(ExperimentConfig {
            n_min: 1,
            ..small(1)
        }
        .validate()
        .is_err());
        assert!(ExperimentConfig {
            n_min: 7,
            ..small(1)
        }
        .validate()
        .is_err());
        assert!(ExperimentConfig {
            trials_per_n: 0,
            ..small(1)
        }
        .validate()
        .is_err());
        assert!(ExperimentConfig::default().validate().is_ok());
    }

    #[test]
    fn flavor_names_round_trip() {
        for f in Flavor::ALL {
            assert_eq!(f.name().parse::<Flavor>().unwrap(), f);
        }
        assert!("frobenius".parse::<Flavor>().is_err());
    }

    #[test]
    fn deterministic_across_workers() {
        let a = run_cond_experiment(&small(1)).unwrap();
        let b = run_cond_experiment(&small(3)).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.rows.len(), 5);
        for r in &a.rows {
            assert_eq!(r.trials + r.dropped, 20);
            assert!(r.avg_ln_cond_min <= r.avg_ln_cond_mean_i);
            assert!(r.avg_ln_cond_mean_i <= r.avg_ln_cond_max);
        }
    }

    #[test]
    fn cw_columns_absent_without_componentwise() {
        let cfg = ExperimentConfig {
            flavors: vec![Flavor::Euclidean],
            ..small(1)
        };
        let t = run_cond_experiment(&cfg).unwrap();
        assert!(t.rows.iter().all(|r| r.avg_ln_cw_max.is_nan()));
    }

    #[test]
    fn csv_layout() {
        let t = run_cond_experiment(&ExperimentConfig {
            n_max: 2,
            ..small(1)
        })
        .unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1].split(',').count(), 11);
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn drops_abort() {
        let outcomes = vec![
            None,
            Some(TrialStats {
                ln_cond_min: 0.0,
                ln_cond_max: 0.0,
                ln_cw_max: 0.0,
                ln_cond_mean: 0.0,
            }),
        ];
        assert!(matches!(
            aggregate(3, &outcomes),
            Err(Error::TooManyDrops { .. })
        ));
    }
}
