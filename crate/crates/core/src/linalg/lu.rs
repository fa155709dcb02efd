use num_complex::Complex64;

use super::matrix::ComplexMatrix;

/// LU factorization with partial pivoting, `PA = LU`, stored compactly.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    factors: Vec<Complex64>,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    pub fn new(a: &ComplexMatrix) -> Self {
        let n = a.dim();
        let mut f = a.entries().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let pivot_row = (k..n)
                .max_by(|&i, &j| f[i * n + k].norm().total_cmp(&f[j * n + k].norm()))
                .unwrap_or(k);
            if pivot_row != k {
                for j in 0..n {
                    f.swap(k * n + j, pivot_row * n + j);
                }
                perm.swap(k, pivot_row);
                swaps += 1;
            }
            let pivot = f[k * n + k];
            if pivot == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i in k + 1..n {
                let m = f[i * n + k] / pivot;
                f[i * n + k] = m;
                for j in k + 1..n {
                    let u = f[k * n + j];
                    f[i * n + j] -= m * u;
                }
            }
        }
        Self {
            n,
            factors: f,
            perm,
            swaps,
        }
    }

    /// `ln |det A|` as the sum of log pivot moduli; `-inf` if singular.
    pub fn ln_abs_det(&self) -> f64 {
        (0..self.n)
            .map(|k| self.factors[k * self.n + k].norm().ln())
            .sum()
    }

    pub fn swaps(&self) -> usize {
        self.swaps
    }

    /// Solves `Ax = b`, or `None` when a pivot is exactly zero.
    pub fn solve(&self, b: &[Complex64]) -> Option<Vec<Complex64>> {
        let n = self.n;
        let f = &self.factors;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = f[i * n + j];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = f[i * n + j];
                x[i] = x[i] - u * x[j];
            }
            let d = f[i * n + i];
            if d == Complex64::new(0.0, 0.0) {
                return None;
            }
            x[i] /= d;
        }
        Some(x)
    }
}
