use serde::Serialize;

use super::ExperimentTable;
use crate::bounds::{prop_universal_floor, thm1_average_bound};
use crate::error::Result;

/// Rows with fewer contributing trials fail verification outright.
pub const MIN_VERIFY_TRIALS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheckRow {
    pub n: usize,
    pub trials: usize,
    pub enough_trials: bool,
    pub avg_ln_cond_mean_i: f64,
    pub se_mean_i: f64,
    pub average_bound: f64,
    pub average_passed: bool,
    pub avg_ln_cond_min: f64,
    pub floor: f64,
    pub floor_passed: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub rows: Vec<BoundCheckRow>,
    pub passed: bool,
}

/// Per row: `avg mean_i ln cond + 3 SE ≥ ½(n-1) ln n - 1.54 n` and
/// `avg ln cond_min ≥ -ln n`.
pub fn verify_theorem_bounds(t: &ExperimentTable) -> Result<BoundsReport> {
    let rows = t
        .rows
        .iter()
        .map(|r| {
            let average_bound = thm1_average_bound(r.n)?;
            let floor = prop_universal_floor(r.n)?;
            let enough_trials = r.trials >= MIN_VERIFY_TRIALS;
            let average_passed = r.avg_ln_cond_mean_i + 3.0 * r.se_mean_i >= average_bound;
            let floor_passed = r.avg_ln_cond_min >= floor;
            Ok(BoundCheckRow {
                n: r.n,
                trials: r.trials,
                enough_trials,
                avg_ln_cond_mean_i: r.avg_ln_cond_mean_i,
                se_mean_i: r.se_mean_i,
                average_bound,
                average_passed,
                avg_ln_cond_min: r.avg_ln_cond_min,
                floor,
                floor_passed,
                passed: enough_trials && average_passed && floor_passed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = rows.iter().all(|r| r.passed);
    Ok(BoundsReport { rows, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::ExperimentRow;

    fn row(n: usize, mean_i: f64, min: f64, trials: usize) -> ExperimentRow {
        ExperimentRow {
            n,
            trials,
            avg_ln_cond_min: min,
            se_min: 0.1,
            avg_ln_cond_max: mean_i,
            se_max: 0.1,
            avg_ln_cond_mean_i: mean_i,
            se_mean_i: 0.1,
            avg_ln_cw_max: f64::NAN,
            se_cw: f64::NAN,
            dropped: 0,
        }
    }

    #[test]
    fn negative_control() {
        let below = thm1_average_bound(10).unwrap() - 1.0;
        let t = ExperimentTable {
            rows: vec![row(10, 2.0, 0.5, 1000), row(12, below, 0.5, 1000)],
        };
        let rep = verify_theorem_bounds(&t).unwrap();
        assert!(rep.rows[0].passed);
        assert!(!rep.rows[1].average_passed);
        assert!(!rep.passed);
    }

    #[test]
    fn floor_and_trial_count() {
        let t = ExperimentTable {
            rows: vec![row(10, 2.0, -3.0, 1000), row(10, 2.0, 0.5, 50)],
        };
        let rep = verify_theorem_bounds(&t).unwrap();
        assert!(!rep.rows[0].floor_passed);
        assert!(rep.rows[1].floor_passed && !rep.rows[1].enough_trials && !rep.rows[1].passed);
    }
}
