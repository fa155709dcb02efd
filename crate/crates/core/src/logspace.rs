//! Log-domain reductions shared by the norm and condition code.

/// `ln(Σ exp(x_i))`, shifted by the maximum term. Empty input or all `-inf`
/// yields `-inf`.
pub fn log_sum_exp<I>(terms: I) -> f64
where
    I: IntoIterator<Item = f64>,
    I::IntoIter: Clone,
{
    let iter = terms.into_iter();
    let max = iter.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    max + iter.map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Streaming log-sum-exp accumulator. Results depend only on the order of
/// `push` calls.
#[derive(Debug, Clone, Copy)]
pub struct LogSumExp {
    max: f64,
    scaled_sum: f64,
}

impl Default for LogSumExp {
    fn default() -> Self {
        Self::new()
    }
}

impl LogSumExp {
    pub fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            scaled_sum: 0.0,
        }
    }

    pub fn push(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x <= self.max {
            self.scaled_sum += (x - self.max).exp();
        } else {
            self.scaled_sum = self.scaled_sum * (self.max - x).exp() + 1.0;
            self.max = x;
        }
    }

    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled_sum.ln()
        }
    }
}

/// `ln(1 + r²)` without overflow for large `r`.
pub fn ln_one_plus_square(r: f64) -> f64 {
    if r > 1.0 {
        2.0 * r.ln() + (1.0 / (r * r)).ln_1p()
    } else {
        (r * r).ln_1p()
    }
}

/// Converts a log-scale value back to linear scale, or `None` when the result
/// is not representable as a finite `f64`.
pub fn to_linear(ln_value: f64) -> Option<f64> {
    let v = ln_value.exp();
    if v.is_finite() && (v > 0.0 || ln_value == f64::NEG_INFINITY) {
        Some(v)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lse_matches_direct_sum() {
        let xs = [-1.0, -2.0, -3.0];
        let direct = xs.iter().map(|x: &f64| x.exp()).sum::<f64>().ln();
        assert!((log_sum_exp(xs) - direct).abs() < 1e-15);
        assert_eq!(log_sum_exp(Vec::<f64>::new()), f64::NEG_INFINITY);
    }

    #[test]
    fn lse_survives_huge_terms() {
        let v = log_sum_exp([1000.0, 1000.0]);
        assert!((v - (1000.0 + 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn streaming_agrees_with_batch() {
        let xs = [3.0, -7.5, 800.0, 12.0, 799.0, f64::NEG_INFINITY];
        let mut acc = LogSumExp::new();
        for &x in &xs {
            acc.push(x);
        }
        assert!((acc.value() - log_sum_exp(xs)).abs() < 1e-12);
    }

    #[test]
    fn ln_one_plus_square_both_regimes() {
        for &r in &[1e-3f64, 0.3, 1.0, 2.0, 1e5] {
            let direct = (1.0 + r * r).ln();
            assert!((ln_one_plus_square(r) - direct).abs() < 1e-14 * direct.abs().max(1.0));
        }
        assert!(ln_one_plus_square(1e200).is_finite());
    }

    #[test]
    fn linear_overflow_is_signalled() {
        assert_eq!(to_linear(0.0), Some(1.0));
        assert_eq!(to_linear(800.0), None);
    }
}
