use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use serde::Serialize;

use super::rng::GaussianStream;
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFiniteMatrix);
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(n, entries)
    }

    pub fn diagonal(diag: &[Complex64]) -> Result<Self> {
        let n = diag.len();
        Self::from_fn(n, |i, j| {
            if i == j {
                diag[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Companion matrix of `p` (degree ≥ 1): ones on the subdiagonal and
    /// `-a_{n-1-j}/a_n` along the first row, so its eigenvalues are the roots
    /// of `p`. Already upper Hessenberg.
    pub fn companion(p: &Polynomial) -> Result<Self> {
        let n = p.degree();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "companion matrix needs degree >= 1".into(),
            ));
        }
        let a = p.coeffs();
        let lead = p.leading();
        Self::from_fn(n, |i, j| {
            if i == 0 {
                -a[n - 1 - j] / lead
            } else if i == j + 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n);
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `A - shift·I`.
    pub fn shifted(&self, shift: Complex64) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] -= shift;
        }
        out
    }

    /// `P A P⁻¹` for the permutation sending index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out[(perm[i], perm[j])] = self[(i, j)];
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.n + j]
    }
}

/// An `n×n` complex Ginibre matrix: `2n²` independent standard normals,
/// filled row-major, real then imaginary part of each entry from one
/// Box–Muller pair. Deterministic in `(n, seed)`.
pub fn sample_ginibre(n: usize, seed: u64) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut stream = GaussianStream::new(seed);
    let entries = (0..n * n).map(|_| stream.complex_normal()).collect();
    ComplexMatrix::new(n, entries)
}
