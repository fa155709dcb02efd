//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 usage or argument error, 2 numerical failure,
//! 3 statistical verification failure (`kostlan`, `second-moment`,
//! `experiment --verify`).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::BoundKind;
use crate::condition::{
    cond_profile, ln_cond, ln_cond_componentwise, ln_cond_weyl, ln_mu_projective,
    ln_pair_product_bound, newton_refine, CondRecord, RootIssue,
};
use crate::error::{Error, Result};
use crate::experiments::{
    emit_table, normalized_curves, run_cond_experiment, run_second_moment_check,
    verify_theorem_bounds, BoundsReport, EntryScale, ExperimentConfig, ExperimentTable, Flavor,
    SecondMomentReport,
};
use crate::linalg::{
    companion_roots, eigenvalues_default, sample_ginibre, ComplexMatrix, DEFAULT_MAX_SWEEPS,
    DEFAULT_TOL,
};
use crate::polynomial::{char_poly_from_spectrum, Polynomial};
use crate::randtheory::{verify_kostlan, KostlanReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

/// Environment variable supplying the default master seed.
pub const SEED_ENV: &str = "CHARCOND_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "charcond",
    version,
    about = "Condition of characteristic-polynomial roots of Gaussian matrices"
)]
struct Cli {
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Condition numbers at every root of a polynomial or eigenvalue of a matrix
    Cond(CondArgs),
    /// Sample Ginibre matrices and print their spectra
    Sample(SampleArgs),
    /// Check squared eigenvalue moduli against independent chi-square variables
    Kostlan(KostlanArgs),
    /// Evaluate a closed-form lower bound
    Bounds(BoundsArgs),
    /// Monte Carlo sweep over dimensions
    Experiment(ExperimentArgs),
    /// Estimate ln E cond^2 for n in {2, 3}
    SecondMoment(SecondMomentArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct CondInput {
    /// `diag:a,b,...`, `ginibre:n:seed` or `file:path` (CSV rows of re,im pairs);
    /// complex scalars are written `re` or `re:im`
    #[arg(long)]
    matrix: Option<String>,
    /// Coefficients in ascending degree, comma separated, each `re` or `re:im`
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
}

#[derive(Debug, Args)]
struct CondArgs {
    #[command(flatten)]
    input: CondInput,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    /// Sample `k` (0-based) uses seed `seed + k`
    #[arg(long, default_value_t = 1)]
    count: usize,
}

#[derive(Debug, Args)]
struct KostlanArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 5000)]
    trials: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundArg {
    Thm1Index,
    Thm1Average,
    Thm1MinEmpirical,
    Thm2,
    Floor,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long, value_enum)]
    kind: BoundArg,
    #[arg(long)]
    n: usize,
    /// Eigenvalue index, required by `thm1-index`
    #[arg(long)]
    i: Option<usize>,
    /// Constant subtracted by `thm1-min-empirical`
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    k: f64,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 100)]
    n_max: usize,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Comma-separated subset of euclidean, weyl, componentwise, projective
    #[arg(long, default_value = "euclidean,componentwise")]
    flavors: String,
    /// `standard` (re, im ~ N(0,1)) or `unit-variance` (E|a_ij|^2 = 1)
    #[arg(long, default_value = "standard")]
    entries: String,
    /// Write the table as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write normalized curves to `<prefix>fmin.table` etc.
    #[arg(long)]
    table_out: Option<String>,
    /// Check the rows against the theorem bounds; exit 3 on failure
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct SecondMomentArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Serialize)]
struct CondReport {
    source: String,
    degree: usize,
    records: Vec<CondRecord>,
    ln_cond_min: f64,
    ln_cond_max: f64,
    ln_cw_max: f64,
    ln_cond_mean: f64,
    flagged: usize,
}

#[derive(Debug, Serialize)]
struct SampleEntry {
    seed: u64,
    eigenvalues: Vec<Complex64>,
    moduli_sorted: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct BoundReport {
    bound: BoundKind,
    value: f64,
}

#[derive(Debug, Serialize)]
struct ExperimentReport {
    config: ExperimentConfig,
    table: ExperimentTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<BoundsReport>,
    tables_written: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Report {
    Cond(CondReport),
    Sample { n: usize, samples: Vec<SampleEntry> },
    Kostlan(KostlanReport),
    Bounds(BoundReport),
    Experiment(ExperimentReport),
    SecondMoment(SecondMomentReport),
}

impl Report {
    fn passed(&self) -> bool {
        match self {
            Report::Kostlan(r) => r.passed,
            Report::SecondMoment(r) => r.passed,
            Report::Experiment(r) => r.verification.as_ref().is_none_or(|v| v.passed),
            _ => true,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let report = match dispatch(cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = if cli.json {
        serde_json::to_string_pretty(&report)
            .map_err(std::io::Error::other)
            .and_then(|s| writeln!(out, "{s}"))
    } else {
        render_text(&report, out)
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_NUMERICAL;
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_)
        | Error::ShapeMismatch { .. }
        | Error::EmptyMatrix
        | Error::Io(_) => EXIT_USAGE,
        Error::ZeroPolynomial | Error::NonFiniteCoefficient | Error::NonFiniteMatrix => EXIT_USAGE,
        _ => EXIT_NUMERICAL,
    }
}

fn dispatch(cmd: Command) -> Result<Report> {
    match cmd {
        Command::Cond(a) => cond(a).map(Report::Cond),
        Command::Sample(a) => sample(a),
        Command::Kostlan(a) => verify_kostlan(a.n, a.trials, a.seed).map(Report::Kostlan),
        Command::Bounds(a) => bounds(a).map(Report::Bounds),
        Command::Experiment(a) => experiment(a).map(Report::Experiment),
        Command::SecondMoment(a) => {
            run_second_moment_check(a.n, a.trials, a.seed).map(Report::SecondMoment)
        }
    }
}

fn parse_scalar(s: &str) -> Result<Complex64> {
    let bad = || Error::InvalidArgument(format!("cannot parse `{s}` as a number"));
    let mut parts = s.trim().splitn(2, ':');
    let re: f64 = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.trim().parse().map_err(|_| bad())?,
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}

fn parse_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(parse_scalar).collect()
}

fn read_matrix_csv(path: &Path) -> Result<ComplexMatrix> {
    let text = std::fs::read_to_string(path)?;
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split(',')
                .map(|x| {
                    x.trim().parse::<f64>().map_err(|_| {
                        Error::InvalidArgument(format!(
                            "bad number `{}` in {}",
                            x.trim(),
                            path.display()
                        ))
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    let mut entries = Vec::with_capacity(n * n);
    for row in &rows {
        if row.len() != 2 * n {
            return Err(Error::ShapeMismatch {
                expected: 2 * n,
                got: row.len(),
            });
        }
        entries.extend(row.chunks(2).map(|p| Complex64::new(p[0], p[1])));
    }
    ComplexMatrix::new(n, entries)
}

fn parse_matrix(spec: &str) -> Result<ComplexMatrix> {
    if let Some(rest) = spec.strip_prefix("diag:") {
        return ComplexMatrix::diagonal(&parse_list(rest)?);
    }
    if let Some(rest) = spec.strip_prefix("ginibre:") {
        let (n, seed) = rest
            .split_once(':')
            .and_then(|(n, s)| Some((n.parse::<usize>().ok()?, s.parse::<u64>().ok()?)))
            .ok_or_else(|| {
                Error::InvalidArgument(format!("expected ginibre:n:seed, got `{spec}`"))
            })?;
        return sample_ginibre(n, seed);
    }
    if let Some(rest) = spec.strip_prefix("file:") {
        return read_matrix_csv(Path::new(rest));
    }
    Err(Error::InvalidArgument(format!(
        "unrecognized matrix `{spec}`"
    )))
}

fn cond(a: CondArgs) -> Result<CondReport> {
    if let Some(spec) = a.input.matrix {
        let m = parse_matrix(&spec)?;
        let spectrum = eigenvalues_default(&m)?;
        let p = char_poly_from_spectrum(&spectrum.eigenvalues)?;
        let pr = cond_profile(&p, &spectrum)?;
        return Ok(CondReport {
            source: spec,
            degree: p.degree(),
            records: pr.records,
            ln_cond_min: pr.ln_cond_min,
            ln_cond_max: pr.ln_cond_max,
            ln_cw_max: pr.ln_cw_max,
            ln_cond_mean: pr.ln_cond_mean,
            flagged: pr.flagged,
        });
    }
    let spec = a.input.poly.unwrap_or_default();
    let p = Polynomial::new(parse_list(&spec)?)?;
    if p.degree() == 0 {
        return Err(Error::InvalidArgument(
            "polynomial must have degree >= 1".into(),
        ));
    }
    let roots: Vec<Complex64> = companion_roots(&p, DEFAULT_TOL, DEFAULT_MAX_SWEEPS)?
        .eigenvalues
        .into_iter()
        .map(|z| newton_refine(&p, z, 50).unwrap_or(z))
        .collect();
    let moduli: Vec<f64> = roots.iter().map(|z| z.norm()).collect();
    let records = roots
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            let ln_pair_bound = ln_pair_product_bound(&moduli, i)?;
            let values = (|| {
                Ok::<_, Error>((
                    ln_cond(&p, z)?,
                    ln_cond_weyl(&p, z)?,
                    ln_cond_componentwise(&p, z)?,
                    ln_mu_projective(&p, z)?,
                ))
            })();
            Ok(match values {
                Ok((c, w, cw, mu)) => CondRecord {
                    lambda: z,
                    ln_cond: c,
                    ln_cond_weyl: w,
                    ln_cw: cw,
                    ln_mu: mu,
                    ln_pair_bound,
                    issue: None,
                },
                Err(e @ (Error::ZeroRoot | Error::NumericallyMultiple { .. })) => CondRecord {
                    lambda: z,
                    ln_cond: f64::NAN,
                    ln_cond_weyl: f64::NAN,
                    ln_cw: f64::NAN,
                    ln_mu: f64::NAN,
                    ln_pair_bound,
                    issue: Some(if matches!(e, Error::ZeroRoot) {
                        RootIssue::ZeroRoot
                    } else {
                        RootIssue::NumericallyMultiple
                    }),
                },
                Err(e) => return Err(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let valid: Vec<&CondRecord> = records.iter().filter(|r| r.issue.is_none()).collect();
    let fold = |f: fn(&CondRecord) -> f64, init: f64, op: fn(f64, f64) -> f64| {
        if valid.is_empty() {
            f64::NAN
        } else {
            valid.iter().map(|r| f(r)).fold(init, op)
        }
    };
    Ok(CondReport {
        source: spec,
        degree: p.degree(),
        ln_cond_min: fold(|r| r.ln_cond, f64::INFINITY, f64::min),
        ln_cond_max: fold(|r| r.ln_cond, f64::NEG_INFINITY, f64::max),
        ln_cw_max: fold(|r| r.ln_cw, f64::NEG_INFINITY, f64::max),
        ln_cond_mean: fold(|r| r.ln_cond, 0.0, |a, b| a + b) / valid.len() as f64,
        flagged: records.len() - valid.len(),
        records,
    })
}

fn sample(a: SampleArgs) -> Result<Report> {
    if a.n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let samples = (0..a.count as u64)
        .map(|k| {
            let seed = a.seed.wrapping_add(k);
            let s = eigenvalues_default(&sample_ginibre(a.n, seed)?)?;
            Ok(SampleEntry {
                seed,
                eigenvalues: s.eigenvalues,
                moduli_sorted: s.moduli_sorted,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Report::Sample { n: a.n, samples })
}

fn bounds(a: BoundsArgs) -> Result<BoundReport> {
    let n = a.n;
    let bound = match a.kind {
        BoundArg::Thm1Index => BoundKind::PerIndex {
            n,
            i: a.i
                .ok_or_else(|| Error::InvalidArgument("thm1-index needs --i".into()))?,
        },
        BoundArg::Thm1Average => BoundKind::AverageOverIndices { n },
        BoundArg::Thm1MinEmpirical => BoundKind::MinOverIndicesEmpirical { n, k: a.k },
        BoundArg::Thm2 => BoundKind::SecondMoment { n },
        BoundArg::Floor => BoundKind::UniversalFloor { n },
    };
    Ok(BoundReport {
        value: bound.evaluate()?,
        bound,
    })
}

fn experiment(a: ExperimentArgs) -> Result<ExperimentReport> {
    let mut flavors: Vec<Flavor> = a
        .flavors
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_>>()?;
    if !flavors.contains(&Flavor::Euclidean) {
        flavors.insert(0, Flavor::Euclidean);
    }
    flavors.dedup();
    let config = ExperimentConfig {
        n_min: a.n_min,
        n_max: a.n_max,
        trials_per_n: a.trials,
        master_seed: a.seed,
        flavors,
        workers: a.workers,
        entry_scale: a.entries.parse::<EntryScale>()?,
    };
    config.validate()?;
    let table = run_cond_experiment(&config)?;
    if let Some(path) = &a.csv {
        table.write_csv(path)?;
    }
    let mut tables_written = Vec::new();
    if let Some(prefix) = &a.table_out {
        let curves = normalized_curves(&table)?;
        let mut outputs = vec![
            ("fmin.table", &curves.min_over_n),
            ("fmax.table", &curves.max_over_n),
        ];
        if !curves.max_over_n_ln_n_ln_ln_n.is_empty() {
            outputs.push(("fmaxloglog.table", &curves.max_over_n_ln_n_ln_ln_n));
        }
        if config.flavors.contains(&Flavor::Componentwise) {
            outputs.push(("fmaxcomploghalf.table", &curves.cw_over_ln_n));
        }
        for (name, curve) in outputs {
            let path = format!("{prefix}{name}");
            emit_table(curve, Path::new(&path))?;
            tables_written.push(path);
        }
    }
    let verification = if a.verify {
        Some(verify_theorem_bounds(&table)?)
    } else {
        None
    };
    Ok(ExperimentReport {
        config,
        table,
        verification,
        tables_written,
    })
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_text(report: &Report, out: &mut dyn Write) -> std::io::Result<()> {
    match report {
        Report::Cond(r) => {
            writeln!(out, "source: {}", r.source)?;
            writeln!(out, "degree: {}", r.degree)?;
            writeln!(
                out,
                "{:>3} {:>14} {:>14} {:>12} {:>12} {:>12} {:>12} {:>12}",
                "i", "re", "im", "ln_cond", "ln_cond_weyl", "ln_cw", "ln_mu", "ln_pair"
            )?;
            for (i, rec) in r.records.iter().enumerate() {
                write!(
                    out,
                    "{:>3} {:>14.6e} {:>14.6e}",
                    i + 1,
                    rec.lambda.re,
                    rec.lambda.im
                )?;
                match rec.issue {
                    None => writeln!(
                        out,
                        " {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
                        rec.ln_cond, rec.ln_cond_weyl, rec.ln_cw, rec.ln_mu, rec.ln_pair_bound
                    )?,
                    Some(issue) => writeln!(out, " flagged: {issue:?}")?,
                }
            }
            writeln!(
                out,
                "ln_cond_min {:.6}  ln_cond_max {:.6}  ln_cond_mean {:.6}  ln_cw_max {:.6}  flagged {}",
                r.ln_cond_min, r.ln_cond_max, r.ln_cond_mean, r.ln_cw_max, r.flagged
            )
        }
        Report::Sample { n, samples } => {
            for s in samples {
                writeln!(out, "# n {n} seed {}", s.seed)?;
                for z in &s.eigenvalues {
                    writeln!(out, "{:.12e} {:.12e} {:.12e}", z.re, z.im, z.norm_sqr())?;
                }
            }
            Ok(())
        }
        Report::Kostlan(r) => {
            writeln!(out, "n {} trials {} dropped {}", r.n, r.trials, r.dropped)?;
            for t in &r.order_statistics {
                writeln!(
                    out,
                    "order statistic k={:<3} D={:.6} p={:.6} {}",
                    t.k,
                    t.statistic,
                    t.p_value,
                    pass_fail(t.passed)
                )?;
            }
            writeln!(
                out,
                "ln|det|^2 mean {:.6} se {:.6} expected {:.6} {}",
                r.ln_det_mean,
                r.ln_det_se,
                r.ln_det_expected,
                pass_fail(r.ln_det_passed)
            )?;
            writeln!(out, "overall {}", pass_fail(r.passed))
        }
        Report::Bounds(r) => writeln!(out, "{:.6}", r.value),
        Report::Experiment(r) => {
            out.write_all(r.table.to_csv().as_bytes())?;
            for p in &r.tables_written {
                writeln!(out, "# wrote {p}")?;
            }
            if let Some(v) = &r.verification {
                for row in &v.rows {
                    writeln!(
                        out,
                        "# verify n={} mean_i {:.6} (se {:.6}) >= {:.6}: {}; min {:.6} >= {:.6}: {}; trials {}: {}",
                        row.n,
                        row.avg_ln_cond_mean_i,
                        row.se_mean_i,
                        row.average_bound,
                        pass_fail(row.average_passed),
                        row.avg_ln_cond_min,
                        row.floor,
                        pass_fail(row.floor_passed),
                        row.trials,
                        pass_fail(row.enough_trials)
                    )?;
                }
                writeln!(out, "# verify overall {}", pass_fail(v.passed))?;
            }
            Ok(())
        }
        Report::SecondMoment(r) => writeln!(
            out,
            "n {} trials {} dropped {} ln mean cond^2 {:.6} bound {:.6} {}",
            r.n,
            r.trials,
            r.dropped,
            r.ln_mean_cond_sq,
            r.ln_bound,
            pass_fail(r.passed)
        ),
    }
}
