//! Special functions and distributional machinery for complex Ginibre
//! spectra: digamma, χ² log-moments, the joint eigenvalue density, and
//! Monte Carlo verification of the χ² description of eigenvalue moduli.

mod chi2;
mod density;
mod kostlan;
mod ks;
pub mod lemmas;
mod special;

pub use chi2::{expected_ln_chi2, sample_chi2, ChiSquareSpec};
pub use density::{ginibre_log_density, ln_ginibre_constant};
pub use kostlan::{
    tested_ranks, verify_kostlan, KostlanReport, OrderStatisticTest, P_VALUE_THRESHOLD,
};
pub use ks::{kolmogorov_survival, ks_two_sample, KsResult};
pub use special::{digamma, ln_gamma, EULER_GAMMA};
