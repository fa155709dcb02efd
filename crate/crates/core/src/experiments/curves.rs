use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::ExperimentTable;
use crate::error::{Error, Result};

pub type Curve = Vec<(usize, f64)>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizedCurves {
    /// `avg ln cond_min / n`
    pub min_over_n: Curve,
    /// `avg ln cond_max / (n ln n ln ln n)`, rows with `n ≥ 4` only
    pub max_over_n_ln_n_ln_ln_n: Curve,
    /// `avg ln Cw_max / ln n`
    pub cw_over_ln_n: Curve,
    /// `avg ln cond_max / n`
    pub max_over_n: Curve,
}

pub fn normalized_curves(t: &ExperimentTable) -> Result<NormalizedCurves> {
    if t.rows.is_empty() {
        return Err(Error::InvalidArgument("empty experiment table".into()));
    }
    let mut c = NormalizedCurves {
        min_over_n: Vec::new(),
        max_over_n_ln_n_ln_ln_n: Vec::new(),
        cw_over_ln_n: Vec::new(),
        max_over_n: Vec::new(),
    };
    for r in &t.rows {
        let n = r.n as f64;
        c.min_over_n.push((r.n, r.avg_ln_cond_min / n));
        c.max_over_n.push((r.n, r.avg_ln_cond_max / n));
        c.cw_over_ln_n.push((r.n, r.avg_ln_cw_max / n.ln()));
        if r.n >= 4 {
            c.max_over_n_ln_n_ln_ln_n
                .push((r.n, r.avg_ln_cond_max / (n * n.ln() * n.ln().ln())));
        }
    }
    Ok(c)
}

/// Fixed notation with six significant digits: `0.5 → "0.500000"`,
/// `123.456789 → "123.457"`.
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 {
            "0.00000".into()
        } else {
            format!("{v}")
        };
    }
    let decimals = |x: f64| (5 - x.abs().log10().floor() as i32).max(0) as usize;
    let d = decimals(v);
    let s = format!("{v:.d$}");
    // Rounding can carry into a new leading digit (9.999999 → 10.00000).
    let rounded: f64 = s.parse().unwrap_or(v);
    let d2 = decimals(rounded);
    if d2 < d {
        format!("{v:.d2$}")
    } else {
        s
    }
}

/// Writes `curve` as `"n value\n"` lines. Empty curves and non-finite
/// values are rejected before anything touches the filesystem.
pub fn emit_table(curve: &[(usize, f64)], path: &Path) -> Result<()> {
    if curve.is_empty() {
        return Err(Error::InvalidArgument("empty curve".into()));
    }
    if let Some((n, v)) = curve.iter().find(|(_, v)| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "non-finite value {v} at n = {n}"
        )));
    }
    let mut out = String::new();
    for (n, v) in curve {
        let _ = writeln!(out, "{n} {}", format_sig6(*v));
    }
    std::fs::write(path, out)?;
    Ok(())
}
