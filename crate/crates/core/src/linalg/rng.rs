//! Seeded random streams.
//!
//! Every random quantity in the crate comes from a [`GaussianStream`]:
//!
//! * generator: ChaCha with 8 rounds (`rand_chacha::ChaCha8Rng`), seeded with
//!   `SeedableRng::seed_from_u64`;
//! * uniform variates: `((x >> 11) + 1) * 2^-53` for each 64-bit output `x`,
//!   i.e. the open-closed interval `(0, 1]`;
//! * normal variates: Box–Muller, `sqrt(-2 ln u1) * (cos 2πu2, sin 2πu2)`,
//!   using the `libm` implementations of `log`, `sqrt`, `sin` and `cos` so
//!   that draws are bit-identical across platforms.
//!
//! Independent streams for trials and workers are keyed by
//! [`derive_seed`], which folds a path of integers into a seed with the
//! SplitMix64 finalizer.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function applied to `x + γ`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds `path` into `master`: `h <- splitmix64(h ^ splitmix64(p))` for each
/// element in order.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(master), |h, &p| splitmix64(h ^ splitmix64(p)))
}

#[derive(Debug, Clone)]
pub struct GaussianStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `(0, 1]`.
    pub fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index in `0..bound` by rejection on the top bits.
    pub fn index(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        let bound = bound as u64;
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.rng.next_u64();
            if x < zone {
                return (x % bound) as usize;
            }
        }
    }

    /// One Box–Muller pair.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let radius = libm::sqrt(-2.0 * libm::log(u1));
        let angle = std::f64::consts::TAU * u2;
        (radius * libm::cos(angle), radius * libm::sin(angle))
    }

    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let (a, b) = self.normal_pair();
        self.spare = Some(b);
        a
    }

    /// Complex Gaussian with independent standard normal real and imaginary
    /// parts, taken from a single Box–Muller pair.
    pub fn complex_normal(&mut self) -> Complex64 {
        let (re, im) = self.normal_pair();
        Complex64::new(re, im)
    }

    /// Standard exponential, `-ln u`.
    pub fn exponential(&mut self) -> f64 {
        -libm::log(self.uniform())
    }
}
