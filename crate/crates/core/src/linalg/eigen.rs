//! Eigenvalues of dense complex matrices: Householder reduction to upper
//! Hessenberg form, then single-shift (Wilkinson) QR sweeps chased with
//! complex Givens rotations. Only the active diagonal block is updated since
//! no Schur vectors are kept.

use num_complex::Complex64;
use serde::Serialize;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

pub const DEFAULT_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_SWEEPS: usize = 40;

/// Computed eigenvalues in deflation order.
///
/// `max_residual` is the largest deflation ratio
/// `|h_{k+1,k}| / (|h_{k,k}| + |h_{k+1,k+1}|)` seen when an eigenvalue was
/// split off; it never exceeds the solver tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub moduli_sorted: Vec<f64>,
    pub max_residual: f64,
}

impl Spectrum {
    pub fn new(eigenvalues: Vec<Complex64>, max_residual: f64) -> Self {
        let moduli_sorted = moduli_sorted(&eigenvalues);
        Self {
            eigenvalues,
            moduli_sorted,
            max_residual,
        }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// Ascending moduli.
pub fn moduli_sorted(eigenvalues: &[Complex64]) -> Vec<f64> {
    let mut m: Vec<f64> = eigenvalues.iter().map(|z| z.norm()).collect();
    m.sort_by(f64::total_cmp);
    m
}

/// Eigenvalues with the default tolerance and sweep budget.
pub fn eigenvalues_default(a: &ComplexMatrix) -> Result<Spectrum> {
    eigenvalues(a, DEFAULT_TOL, DEFAULT_MAX_SWEEPS)
}

/// All `n` eigenvalues of `a`. Fails with [`Error::NoConvergence`] (carrying
/// the eigenvalues found so far) if the total QR iteration count exceeds
/// `max_sweeps * n`.
pub fn eigenvalues(a: &ComplexMatrix, tol: f64, max_sweeps: usize) -> Result<Spectrum> {
    let n = a.dim();
    let mut h = Hessenberg::reduce(a);
    let budget = max_sweeps.max(1) * n;
    let norm = a.frobenius_norm();

    let mut found = Vec::with_capacity(n);
    let mut max_residual: f64 = 0.0;
    let mut total_iters = 0;
    let mut iters_since_deflation = 0;
    let mut hi = n - 1;

    loop {
        if hi == 0 {
            found.push(h.at(0, 0));
            break;
        }

        // Find the lowest l such that H[l..=hi, l..=hi] is unreduced.
        let mut l = 0;
        for k in (1..=hi).rev() {
            let sub = h.at(k, k - 1).norm();
            let scale = h.at(k - 1, k - 1).norm() + h.at(k, k).norm();
            let negligible = if scale > 0.0 {
                sub <= tol * scale
            } else {
                sub <= tol * norm
            };
            if negligible || sub < f64::MIN_POSITIVE {
                if k == hi && sub > 0.0 {
                    let ratio = if scale > 0.0 { sub / scale } else { sub / norm };
                    max_residual = max_residual.max(ratio);
                }
                h.set(k, k - 1, Complex64::new(0.0, 0.0));
                l = k;
                break;
            }
        }

        if l == hi {
            found.push(h.at(hi, hi));
            hi -= 1;
            iters_since_deflation = 0;
            continue;
        }

        if total_iters >= budget {
            return Err(Error::NoConvergence {
                iterations: total_iters,
                partial: found,
            });
        }
        total_iters += 1;
        iters_since_deflation += 1;

        let shift = if iters_since_deflation % 20 == 10 {
            h.at(l, l) + 0.75 * h.at(l + 1, l).re.abs()
        } else if iters_since_deflation % 20 == 0 {
            h.at(hi, hi) + 0.75 * h.at(hi, hi - 1).re.abs()
        } else {
            wilkinson_shift(
                h.at(hi - 1, hi - 1),
                h.at(hi - 1, hi),
                h.at(hi, hi - 1),
                h.at(hi, hi),
            )
        };
        h.qr_sweep(l, hi, shift);
    }

    Ok(Spectrum::new(found, max_residual))
}

/// Roots of `p` as eigenvalues of its companion matrix.
pub fn companion_roots(p: &Polynomial, tol: f64, max_sweeps: usize) -> Result<Spectrum> {
    eigenvalues(&ComplexMatrix::companion(p)?, tol, max_sweeps)
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let bc = b * c;
    if bc == Complex64::new(0.0, 0.0) {
        return d;
    }
    let p = (a - d) * 0.5;
    let disc = (p * p + bc).sqrt();
    let plus = p + disc;
    let minus = p - disc;
    let denom = if plus.norm() >= minus.norm() {
        plus
    } else {
        minus
    };
    if denom == Complex64::new(0.0, 0.0) {
        d
    } else {
        d - bc / denom
    }
}

/// Returns `(c, s, r)` with real `c` such that
/// `[[c, s], [-conj(s), c]] · [x, y]ᵀ = [r, 0]ᵀ`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0), x);
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay, Complex64::new(ay, 0.0));
    }
    let norm = ax.hypot(ay);
    let phase = x / ax;
    let c = ax / norm;
    let s = phase * y.conj() / norm;
    (c, s, phase * norm)
}

struct Hessenberg {
    n: usize,
    h: Vec<Complex64>,
}

impl Hessenberg {
    fn reduce(a: &ComplexMatrix) -> Self {
        let n = a.dim();
        let mut h = a.entries().to_vec();
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n.saturating_sub(2) {
            let len = n - k - 1;
            let tail: f64 = (k + 2..n).map(|i| h[i * n + k].norm_sqr()).sum();
            if tail == 0.0 {
                continue;
            }
            let x0 = h[(k + 1) * n + k];
            let xnorm = (x0.norm_sqr() + tail).sqrt();
            let phase = if x0.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                x0 / x0.norm()
            };
            let alpha = -phase * xnorm;
            for (t, i) in (k + 1..n).enumerate() {
                v[t] = h[i * n + k];
            }
            v[0] -= alpha;
            let vnorm2: f64 = v[..len].iter().map(|z| z.norm_sqr()).sum();
            let beta = 2.0 / vnorm2;

            // Left: rows k+1.., columns k..
            for j in k..n {
                let s: Complex64 = (0..len).map(|t| v[t].conj() * h[(k + 1 + t) * n + j]).sum();
                let s = s * beta;
                for t in 0..len {
                    h[(k + 1 + t) * n + j] -= s * v[t];
                }
            }
            // Right: all rows, columns k+1..
            for i in 0..n {
                let row = &mut h[i * n + k + 1..i * n + n];
                let s: Complex64 = row.iter().zip(&v[..len]).map(|(a, b)| a * b).sum();
                let s = s * beta;
                for (t, e) in row.iter_mut().enumerate() {
                    *e -= s * v[t].conj();
                }
            }
            h[(k + 1) * n + k] = alpha;
            for i in k + 2..n {
                h[i * n + k] = Complex64::new(0.0, 0.0);
            }
        }
        Self { n, h }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.h[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.h[i * self.n + j] = z;
    }

    fn rotate_rows(
        &mut self,
        i: usize,
        c: f64,
        s: Complex64,
        cols: std::ops::RangeInclusive<usize>,
    ) {
        let n = self.n;
        for col in cols {
            let x = self.h[i * n + col];
            let y = self.h[(i + 1) * n + col];
            self.h[i * n + col] = c * x + s * y;
            self.h[(i + 1) * n + col] = -s.conj() * x + c * y;
        }
    }

    fn rotate_cols(
        &mut self,
        j: usize,
        c: f64,
        s: Complex64,
        rows: std::ops::RangeInclusive<usize>,
    ) {
        let n = self.n;
        for row in rows {
            let x = self.h[row * n + j];
            let y = self.h[row * n + j + 1];
            self.h[row * n + j] = c * x + s.conj() * y;
            self.h[row * n + j + 1] = -s * x + c * y;
        }
    }

    /// One implicit single-shift QR step on the block `l..=hi`.
    fn qr_sweep(&mut self, l: usize, hi: usize, shift: Complex64) {
        let (c, s, _) = givens(self.at(l, l) - shift, self.at(l + 1, l));
        self.rotate_rows(l, c, s, l..=hi);
        self.rotate_cols(l, c, s, l..=(l + 2).min(hi));
        for k in l + 1..hi {
            let (c, s, r) = givens(self.at(k, k - 1), self.at(k + 1, k - 1));
            self.set(k, k - 1, r);
            self.set(k + 1, k - 1, Complex64::new(0.0, 0.0));
            self.rotate_rows(k, c, s, k..=hi);
            self.rotate_cols(k, c, s, l..=(k + 2).min(hi));
        }
    }
}
