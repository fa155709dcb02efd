use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn charcond(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charcond"))
        .args(args)
        .env_remove("CHARCOND_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let o = charcond(&full);
    let v: Value =
        serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    (o.status.code().unwrap(), v)
}

#[test]
fn bounds_average_at_hundred() {
    let o = charcond(&["bounds", "--kind", "thm1-average", "--n", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 73.95).abs() <= 0.01);
}

#[test]
fn bounds_every_kind() {
    for (kind, extra) in [
        ("thm1-index", vec!["--i", "5"]),
        ("thm1-average", vec![]),
        ("thm1-min-empirical", vec!["--k", "-2"]),
        ("thm2", vec![]),
        ("floor", vec![]),
    ] {
        let mut args = vec!["bounds", "--kind", kind, "--n", "10"];
        args.extend(extra);
        let (code, v) = json(&args);
        assert_eq!(code, 0);
        assert!(v["value"].is_number());
    }
    assert_eq!(
        charcond(&["bounds", "--kind", "thm1-index", "--n", "10"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        charcond(&["bounds", "--kind", "thm1-index", "--n", "10", "--i", "11"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn cond_diag_one_two() {
    let (code, v) = json(&["cond", "--matrix", "diag:1,2"]);
    assert_eq!(code, 0);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    let at_one = records
        .iter()
        .find(|r| (r["lambda"][0].as_f64().unwrap() - 1.0).abs() < 1e-12)
        .unwrap();
    let get = |k: &str| at_one[k].as_f64().unwrap();
    assert!((get("ln_cond") - 42f64.sqrt().ln()).abs() < 1e-10);
    assert!((get("ln_cond_weyl") - (9.5f64.sqrt() * 2.0).ln()).abs() < 1e-10);
    assert!((get("ln_cw") - 6f64.ln()).abs() < 1e-10);
    assert!((get("ln_mu") - (9.5f64.sqrt() * 2f64.sqrt()).ln()).abs() < 1e-10);

    let text = stdout(&charcond(&["cond", "--matrix", "diag:1,2"]));
    assert!(
        text.contains("1.868835")
            && text.contains("1.818793")
            && text.contains("1.791759")
            && text.contains("1.472219")
    );
}

#[test]
fn cond_polynomial_and_file_inputs() {
    let (code, v) = json(&["cond", "--poly", "-1,0,1"]);
    assert_eq!(code, 0);
    for r in v["records"].as_array().unwrap() {
        assert!((r["ln_cw"].as_f64().unwrap()).abs() < 1e-12);
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    std::fs::write(&path, "0,0,1,0\n1,0,0,0\n").unwrap();
    let spec = format!("file:{}", path.display());
    let (code, v) = json(&["cond", "--matrix", &spec]);
    assert_eq!(code, 0);
    let mut eigs: Vec<f64> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["lambda"][0].as_f64().unwrap())
        .collect();
    eigs.sort_by(f64::total_cmp);
    assert!((eigs[0] + 1.0).abs() < 1e-12 && (eigs[1] - 1.0).abs() < 1e-12);

    std::fs::write(&path, "0,0,1\n1,0\n").unwrap();
    assert_eq!(
        charcond(&["cond", "--matrix", &spec]).status.code(),
        Some(1)
    );
    assert_eq!(
        charcond(&["cond", "--matrix", "ginibre:4:9"]).status.code(),
        Some(0)
    );
    assert_eq!(
        charcond(&["cond", "--matrix", "bogus:1"]).status.code(),
        Some(1)
    );
}

#[test]
fn flagged_roots_are_reported() {
    let (code, v) = json(&["cond", "--matrix", "diag:0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["flagged"], 1);
    assert!(v["records"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["issue"] == "zero_root"));
}

#[test]
fn usage_errors_exit_one() {
    let o = charcond(&["cond", "--matrix", "diag:1", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(charcond(&["nonsense"]).status.code(), Some(1));
    assert_eq!(
        charcond(&["kostlan", "--n", "3", "--trials", "10"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        charcond(&["second-moment", "--n", "4"]).status.code(),
        Some(1)
    );
    assert_eq!(
        charcond(&["experiment", "--n-min", "1", "--n-max", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(charcond(&["--help"]).status.code(), Some(0));
    assert_eq!(charcond(&["--version"]).status.code(), Some(0));
}

#[test]
fn kostlan_passes_at_five() {
    let (code, v) = json(&["kostlan", "--n", "5", "--trials", "5000", "--seed", "7"]);
    assert_eq!(code, 0);
    for t in v["order_statistics"].as_array().unwrap() {
        assert!(t["p_value"].as_f64().unwrap() > 0.001);
    }
}

#[test]
fn verification_failure_exits_three() {
    // 20 trials per row is below the 100-trial minimum, so verification fails.
    let o = charcond(&[
        "experiment",
        "--n-min",
        "3",
        "--n-max",
        "4",
        "--trials",
        "20",
        "--verify",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("# verify overall FAIL"));
}

#[test]
fn second_moment_report() {
    let (code, v) = json(&[
        "second-moment",
        "--n",
        "2",
        "--trials",
        "100000",
        "--seed",
        "1",
    ]);
    assert_eq!(code, 0);
    assert!(v["ln_mean_cond_sq"].as_f64().unwrap() >= 4f64.ln());
}

#[test]
fn seeded_commands_are_reproducible() {
    for args in [
        vec!["sample", "--n", "6", "--seed", "3", "--count", "3"],
        vec!["cond", "--matrix", "ginibre:12:5"],
        vec!["kostlan", "--n", "3", "--trials", "300", "--seed", "2"],
        vec![
            "experiment",
            "--n-min",
            "2",
            "--n-max",
            "6",
            "--trials",
            "30",
            "--seed",
            "4",
        ],
    ] {
        let a = charcond(&args);
        let b = charcond(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_charcond"));
        c.args(args).env_remove("CHARCOND_SEED");
        if let Some(e) = env {
            c.env("CHARCOND_SEED", e);
        }
        c.output().unwrap().stdout
    };
    let flag = run(None, &["sample", "--n", "3", "--seed", "5"]);
    assert_eq!(run(Some("5"), &["sample", "--n", "3"]), flag);
    assert_eq!(run(Some("9"), &["sample", "--n", "3", "--seed", "5"]), flag);
    assert_ne!(run(None, &["sample", "--n", "3"]), flag);
}

#[test]
fn experiment_files_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let outputs = |workers: &str, tag: &str| {
        let csv = dir.path().join(format!("{tag}.csv"));
        let prefix = format!("{}/{tag}-", dir.path().display());
        let (code, v) = json(&[
            "experiment",
            "--n-min",
            "2",
            "--n-max",
            "8",
            "--trials",
            "25",
            "--seed",
            "11",
            "--workers",
            workers,
            "--csv",
            csv.to_str().unwrap(),
            "--table-out",
            &prefix,
            "--flavors",
            "euclidean,weyl,componentwise,projective",
        ]);
        assert_eq!(code, 0);
        let mut files = vec![std::fs::read(&csv).unwrap()];
        for name in [
            "fmin.table",
            "fmax.table",
            "fmaxloglog.table",
            "fmaxcomploghalf.table",
        ] {
            files.push(std::fs::read(format!("{prefix}{name}")).unwrap());
        }
        assert_eq!(v["tables_written"].as_array().unwrap().len(), 4);
        files
    };
    let one = outputs("1", "a");
    assert_eq!(outputs("4", "b"), one);
    let csv = String::from_utf8(one[0].clone()).unwrap();
    assert!(csv.starts_with(charcond::experiments::CSV_HEADER));
    assert_eq!(csv.lines().count(), 8);
}

#[test]
fn in_process_runner() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = charcond::cli::run(
        ["charcond", "bounds", "--kind", "floor", "--n", "1"],
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "0.000000\n");
}
