use serde::Serialize;

use super::special::digamma;
use crate::error::{Error, Result};
use crate::linalg::rng::GaussianStream;

/// A chi-squared law with `dof` degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChiSquareSpec {
    dof: u32,
}

impl ChiSquareSpec {
    pub fn new(dof: u32) -> Result<Self> {
        if dof == 0 {
            return Err(Error::InvalidArgument("chi-squared needs dof >= 1".into()));
        }
        Ok(Self { dof })
    }

    pub fn dof(&self) -> u32 {
        self.dof
    }

    /// `E ln χ²_k = ψ(k/2) + ln 2`.
    pub fn expected_ln(&self) -> f64 {
        digamma(self.dof as f64 / 2.0).expect("positive dof") + std::f64::consts::LN_2
    }

    /// One draw: `2 Σ E_j` over `⌊k/2⌋` standard exponentials, plus `Z²`
    /// when `k` is odd.
    pub fn draw(&self, stream: &mut GaussianStream) -> f64 {
        let pairs = self.dof / 2;
        let mut total = 0.0;
        for _ in 0..pairs {
            total += stream.exponential();
        }
        total *= 2.0;
        if self.dof % 2 == 1 {
            let z = stream.standard_normal();
            total += z * z;
        }
        total
    }
}

/// `ψ(dof/2) + ln 2`.
pub fn expected_ln_chi2(dof: u32) -> Result<f64> {
    Ok(ChiSquareSpec::new(dof)?.expected_ln())
}

/// `count` independent draws of `χ²_dof`, deterministic in `seed`.
pub fn sample_chi2(dof: u32, count: usize, seed: u64) -> Result<Vec<f64>> {
    let spec = ChiSquareSpec::new(dof)?;
    let mut stream = GaussianStream::new(seed);
    Ok((0..count).map(|_| spec.draw(&mut stream)).collect())
}
