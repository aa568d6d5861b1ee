//! End-to-end tests against the compiled binary: flag handling, file
//! formats, exit codes, and the reproducibility guarantees.

use std::fs;
use std::process::{Command, Output};

fn degflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degflow"))
        .args(args)
        .output()
        .expect("binary should launch")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("stdout should be UTF-8")
}

fn stderr_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stderr).expect("stderr should be UTF-8")
}

fn parse_csv(text: &str) -> Vec<(u64, f64)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,p"));
    lines
        .map(|line| {
            let (k, p) = line.split_once(',').expect("two columns");
            (k.parse().unwrap(), p.parse().unwrap())
        })
        .collect()
}

#[test]
fn compute_csv_probabilities_sum_to_one() {
    let output = degflow(&[
        "compute", "--model", "ba", "--m", "3", "--t", "10000", "--format", "csv",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let entries = parse_csv(stdout_of(&output));
    let total: f64 = entries.iter().map(|&(_, p)| p).sum();
    assert!((total - 1.0).abs() <= 1e-9, "sum {total}");
    assert!(
        entries.windows(2).all(|w| w[0].0 < w[1].0),
        "k not ascending"
    );
}

#[test]
fn compute_json_carries_exact_segment_boundaries() {
    let output = degflow(&[
        "compute", "--model", "power", "--theta", "0.2", "--m", "1", "--t", "200000", "--format",
        "json",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let doc: serde_json::Value = serde_json::from_str(stdout_of(&output)).unwrap();
    let starts: Vec<u64> = doc["segments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["start"].as_u64().unwrap())
        .collect();
    assert_eq!(
        starts,
        vec![32, 243, 1024, 3125, 7776, 16807, 32768, 59049, 100_000, 161_051]
    );
    assert_eq!(doc["model"]["family"], "power");
    assert_eq!(doc["S"], 32);
}

#[test]
fn logarithmic_run_needs_a_viable_start() {
    // The default start clears the validity bound…
    let ok = degflow(&["compute", "--model", "log", "--m", "3", "--t", "100"]);
    assert!(ok.status.success(), "{}", stderr_of(&ok));

    // …an arrival with zero initial links cannot be tracked…
    let degenerate = degflow(&[
        "compute", "--model", "log", "--m", "3", "--t", "100", "--S", "2",
    ]);
    assert_eq!(degenerate.status.code(), Some(2));
    assert!(stderr_of(&degenerate).contains("initial degree 0"));

    // …and an early start trips the probability bound itself.
    let invalid = degflow(&[
        "compute", "--model", "log", "--m", "3", "--t", "100", "--S", "3",
    ]);
    assert_eq!(invalid.status.code(), Some(2));
    assert!(
        stderr_of(&invalid).contains("probability"),
        "{}",
        stderr_of(&invalid)
    );
}

#[test]
fn fit_consumes_both_compute_formats() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("d.json");
    let csv = dir.path().join("d.csv");
    for (path, format) in [(&json, "json"), (&csv, "csv")] {
        let output = degflow(&[
            "compute",
            "--model",
            "ba",
            "--m",
            "3",
            "--t",
            "20000",
            "--format",
            format,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(output.status.success(), "{}", stderr_of(&output));
    }

    // Metadata present: the fit window is the calibrated tail.
    let from_json = degflow(&["fit", "--input", json.to_str().unwrap()]);
    assert!(from_json.status.success(), "{}", stderr_of(&from_json));
    let fit: serde_json::Value = serde_json::from_str(stdout_of(&from_json)).unwrap();
    let gamma = fit["gamma"].as_f64().unwrap();
    assert!((2.90..=3.05).contains(&gamma), "gamma {gamma}");

    // Bare CSV: no metadata, fit spans the data; narrowing flags still work.
    let from_csv = degflow(&[
        "fit",
        "--input",
        csv.to_str().unwrap(),
        "--k-min",
        "39",
        "--k-max",
        "77",
    ]);
    assert!(from_csv.status.success(), "{}", stderr_of(&from_csv));
    let narrowed: serde_json::Value = serde_json::from_str(stdout_of(&from_csv)).unwrap();
    assert!((narrowed["gamma"].as_f64().unwrap() - gamma).abs() < 1e-12);
}

#[test]
fn fit_recovers_an_exact_power_law() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cubic.csv");
    let mut text = String::from("k,p\n");
    for k in 2u64..=120 {
        let p = 2.0 * (k as f64).powi(-3);
        text.push_str(&format!("{k},{p:.16e}\n"));
    }
    fs::write(&path, text).unwrap();
    let output = degflow(&["fit", "--input", path.to_str().unwrap()]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let fit: serde_json::Value = serde_json::from_str(stdout_of(&output)).unwrap();
    assert!((fit["gamma"].as_f64().unwrap() - 3.0).abs() < 1e-9);
    assert!((fit["c"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert_eq!(fit["n_points"], 119);
}

#[test]
fn fit_rejects_a_single_point() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.csv");
    fs::write(&path, "k,p\n5,1.0\n").unwrap();
    let output = degflow(&["fit", "--input", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(
        stderr_of(&output).contains("usable points"),
        "{}",
        stderr_of(&output)
    );
}

#[test]
fn fit_table_estimates_the_drift_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let mut inputs = Vec::new();
    for t in ["5000", "10000", "20000"] {
        let path = dir.path().join(format!("t{t}.json"));
        let output = degflow(&[
            "compute",
            "--model",
            "ba",
            "--m",
            "3",
            "--t",
            t,
            "--format",
            "json",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(output.status.success(), "{}", stderr_of(&output));
        inputs.push(path);
    }
    let mut args = vec!["fit".to_string()];
    for path in &inputs {
        args.push("--input".to_string());
        args.push(path.to_str().unwrap().to_string());
    }
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let output = degflow(&args);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let table: serde_json::Value = serde_json::from_str(stdout_of(&output)).unwrap();
    assert_eq!(table["rows"].as_array().unwrap().len(), 3);
    // Constant growth: the amplitude should not drift with the horizon.
    let z = table["z"].as_f64().unwrap();
    assert!(z.abs() < 0.1, "z {z}");
}

#[test]
fn usage_problems_exit_one_and_help_exits_zero() {
    let missing = degflow(&["compute", "--model", "ba"]);
    assert_eq!(
        missing.status.code(),
        Some(1),
        "missing --t should be a usage error"
    );

    let unknown = degflow(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(1));

    let conflict = degflow(&[
        "compute", "--model", "ba", "--t", "100", "--loglog", "--format", "json",
    ]);
    assert_eq!(conflict.status.code(), Some(1));
    assert!(stderr_of(&conflict).contains("--loglog"));

    let help = degflow(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout_of(&help).contains("compute"));
}

#[test]
fn identical_invocations_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let output = degflow(&[
            "simulate",
            "--model",
            "ba",
            "--m",
            "2",
            "--t",
            "3000",
            "--seed",
            "99",
            "--reps",
            "4",
            "--format",
            "json",
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(output.status.success(), "{}", stderr_of(&output));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn relative_outputs_land_in_the_configured_directory() {
    let dir = tempfile::tempdir().unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_degflow"))
        .args([
            "compute",
            "--model",
            "ba",
            "--t",
            "200",
            "--output",
            "runs/out.csv",
        ])
        .env("DEGFLOW_OUT_DIR", dir.path())
        .output()
        .expect("binary should launch");
    assert!(output.status.success(), "{}", stderr_of(&output));
    let written = dir.path().join("runs/out.csv");
    assert!(written.exists(), "expected {written:?}");
    let entries = parse_csv(&fs::read_to_string(written).unwrap());
    assert!(!entries.is_empty());
}

#[test]
fn loglog_emits_plot_ready_columns() {
    let output = degflow(&["compute", "--model", "ba", "--t", "500", "--loglog"]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let text = stdout_of(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("log10k,log10p"));
    let first = lines.next().unwrap();
    let (lk, lp) = first.split_once(',').unwrap();
    assert_eq!(lk.parse::<f64>().unwrap(), 0.0, "log10(k=1)");
    let p: f64 = lp.parse().unwrap();
    assert!((10f64.powf(p) - 2.0 / 3.0).abs() < 0.01);
}

#[test]
fn compare_reports_cross_validation_rows() {
    let output = degflow(&[
        "compare", "--model", "ba", "--m", "1", "--t", "2000", "--seed", "3", "--reps", "10",
        "--max-k", "5",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let report: serde_json::Value = serde_json::from_str(stdout_of(&output)).unwrap();
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        assert!(row["std_error"].as_f64().unwrap() > 0.0);
        assert!(
            row["analytic"].is_number(),
            "constant growth has a closed form"
        );
    }
    // Fixed seed: agreement within a few standard errors, deterministically.
    assert!(report["worst_sigma"].as_f64().unwrap() < 4.0);
}

#[test]
fn segment_table_matches_the_plan() {
    let output = degflow(&[
        "tables", "segments", "--model", "log", "--m", "2", "--t", "3000", "--format", "csv",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let text = stdout_of(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("start,end,initial_degree"));
    let rows: Vec<Vec<u64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows[0], vec![21, 54, 6]);
    assert_eq!(rows.last().unwrap()[1], 3000);
    // Contiguous: each segment starts right after its predecessor ends.
    assert!(rows.windows(2).all(|w| w[0][1] + 1 == w[1][0]));
}

#[test]
fn tables_fits_reports_rows_and_drift() {
    let output = degflow(&[
        "tables", "fits", "--model", "ba", "--m", "3", "--t", "5000", "--t", "10000",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let table: serde_json::Value = serde_json::from_str(stdout_of(&output)).unwrap();
    let rows = table["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["t"], 5000);
    assert!(table["z"].is_number());

    let csv = degflow(&[
        "tables", "fits", "--model", "ba", "--m", "3", "--t", "5000", "--t", "10000", "--format",
        "csv",
    ]);
    assert!(csv.status.success(), "{}", stderr_of(&csv));
    assert!(stdout_of(&csv).starts_with("m,t,gamma,c\n3,5000,"));
}

/// The gamma printed for a plain horizon run should not depend on whether
/// the caller went through CSV or JSON when the window is pinned by hand.
#[test]
fn format_choice_does_not_change_the_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("d.json");
    let csv = dir.path().join("d.csv");
    for (path, format) in [(&json, "json"), (&csv, "csv")] {
        let output = degflow(&[
            "compute",
            "--model",
            "power",
            "--theta",
            "0.2",
            "--m",
            "2",
            "--t",
            "5000",
            "--format",
            format,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(output.status.success(), "{}", stderr_of(&output));
    }
    let window = ["--k-min", "12", "--k-max", "40"];
    let mut gammas = Vec::new();
    for path in [&json, &csv] {
        let mut args = vec!["fit", "--input", path.to_str().unwrap()];
        args.extend_from_slice(&window);
        let output = degflow(&args);
        assert!(output.status.success(), "{}", stderr_of(&output));
        let fit: serde_json::Value = serde_json::from_str(stdout_of(&output)).unwrap();
        gammas.push(fit["gamma"].as_f64().unwrap());
    }
    assert!(
        (gammas[0] - gammas[1]).abs() < 1e-12,
        "JSON vs CSV gamma: {} vs {}",
        gammas[0],
        gammas[1]
    );
}
