//! End-to-end tests of the compiled `fnoise` binary: exit codes, CSV
//! layout, reproducibility, and the synthesize → spectrum → slope loop.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_fnoise");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn csv_lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .expect("csv exists")
        .lines()
        .map(str::to_owned)
        .collect()
}

#[test]
fn table1_reproduces_the_published_report() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.csv");
    let out = run(&["table1", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("FLAGGED"), "V80 flag missing from summary");

    let lines = csv_lines(&out_path);
    assert_eq!(lines.len(), 6, "header plus five sample rows");
    assert!(lines[0].starts_with("name,g_calc_per_cm,"));
    let v1: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(v1[0], "V1");
    let kappa_calc: f64 = v1[3].parse().unwrap();
    assert!(
        (kappa_calc - 3.5e-10).abs() / 3.5e-10 <= 0.03,
        "V1 kappa {kappa_calc:e} not within 3% of 3.5e-10"
    );
    assert!(lines[5].starts_with("V80,") && lines[5].ends_with(",true"));
    for line in &lines[1..5] {
        assert!(line.ends_with(",false"), "unexpected flag in {line}");
    }
}

#[test]
fn kernels_difference_approaches_its_limit() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("kernels.csv");
    let out = run(&["kernels", "--omega", "1", "--tm", "1e3", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let lines = csv_lines(&out_path);
    let header: Vec<&str> = lines[0].split(',').collect();
    let row: Vec<&str> = lines[1].split(',').collect();
    let col = header.iter().position(|h| *h == "difference").unwrap();
    let difference: f64 = row[col].parse().unwrap();
    assert!(
        (difference + PI).abs() <= 0.01 * PI,
        "A - B = {difference} not within 0.01*pi of -pi"
    );
}

#[test]
fn gfactor_rejects_negative_width_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let sample = dir.path().join("bad.txt");
    std::fs::write(
        &sample,
        "name = bad\nwidth_um = -1\nlength_um = 2\nthickness_nm = 10\n\
         electron_mass_ratio = 0.06\nhole_mass_ratio = 0.09\n",
    )
    .unwrap();
    let out = run(&["gfactor", "--sample", sample.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("width_um"), "stderr: {}", stderr(&out));
}

#[test]
fn identical_invocations_give_byte_identical_csv() {
    let dir = tempfile::tempdir().unwrap();
    let args = |path: &Path| {
        vec![
            "synthesize".into(),
            "--model".into(),
            "ou".into(),
            "--sigma2".into(),
            "1".into(),
            "--tauc".into(),
            "1".into(),
            "--n".into(),
            "128".into(),
            "--dt".into(),
            "0.05".into(),
            "--windows".into(),
            "4".into(),
            "--seed".into(),
            "9".into(),
            "--out".into(),
            path.to_str().unwrap().to_owned(),
        ]
    };
    let (a, b, c) = (
        dir.path().join("a.csv"),
        dir.path().join("b.csv"),
        dir.path().join("c.csv"),
    );
    for path in [&a, &b] {
        let argv = args(path);
        let out = run(&argv.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    }
    let mut argv = args(&c);
    argv[14] = "10".into(); // different seed
    let out = run(&argv.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(out.status.code(), Some(0));

    let bytes_a = std::fs::read(&a).unwrap();
    assert_eq!(bytes_a, std::fs::read(&b).unwrap(), "same seed must be byte-identical");
    assert_ne!(bytes_a, std::fs::read(&c).unwrap(), "seed must matter");
}

#[test]
fn pipeline_recovers_the_synthesized_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let windows = dir.path().join("windows.csv");
    let spectrum = dir.path().join("spectrum.csv");
    let slope = dir.path().join("slope.csv");

    let out = run(&[
        "synthesize", "--model", "powerlaw", "--gamma", "1", "--f-low", "1e-3",
        "--f-high", "0.5", "--n", "1024", "--dt", "1", "--windows", "300",
        "--seed", "11", "--out", windows.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let out = run(&[
        "spectrum", "--input", windows.to_str().unwrap(), "--f-min", "1e-2",
        "--f-max", "1e-1", "--points", "24", "--out", spectrum.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let out = run(&[
        "slope", "--input", spectrum.to_str().unwrap(), "--f-min", "9e-3",
        "--f-max", "1.1e-1", "--out", slope.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let lines = csv_lines(&slope);
    assert_eq!(lines[0], "f_min_hz,f_max_hz,points_used,gamma");
    let row: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(row[2], "24");
    let gamma: f64 = row[3].parse().unwrap();
    assert!((gamma - 1.0).abs() <= 0.15, "fitted gamma {gamma}");
}

#[test]
fn toy_verify_reports_that_bounds_hold() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sweep.csv");
    let out = run(&[
        "toy-verify", "--count", "25", "--seed", "3", "--max-dim", "4",
        "--max-nodes", "16", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("all bounds hold"));
    let lines = csv_lines(&out_path);
    assert_eq!(lines.len(), 26, "header plus one row per system");
    assert!(lines[0].starts_with("index,dim,nodes,omega_rad_s,"));
}

#[test]
fn help_texts_document_units() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    for sub in ["gfactor", "kappa", "table1", "sigma", "kernels", "toy-verify", "synthesize", "spectrum", "slope"] {
        assert!(stdout(&out).contains(sub), "top-level help misses {sub}");
        let help = run(&[sub, "--help"]);
        assert_eq!(help.status.code(), Some(0), "{sub} --help failed");
    }
    assert!(stdout(&run(&["kernels", "--help"])).contains("rad/s"));
    assert!(stdout(&run(&["sigma", "--help"])).contains("Hz"));
    assert!(stdout(&run(&["kappa", "--help"])).contains("volts"));
    assert!(stdout(&run(&["synthesize", "--help"])).contains("seconds"));
    assert!(stdout(&run(&["gfactor", "--help"])).contains("nm"));
}

#[test]
fn missing_input_fails_validation_with_field_name() {
    let out = run(&["spectrum", "--input", "/nonexistent/w.csv", "--f-min", "1e-2", "--f-max", "1e-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("input"), "stderr: {}", stderr(&out));

    // unknown flags are validation failures too, not numerical ones
    let out = run(&["kernels", "--omega", "1", "--tm", "1e3", "--frequency", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn closed_stdout_pipe_ends_the_run_quietly() {
    let out = Command::new("bash")
        .args([
            "-c",
            &format!("set -o pipefail; {BIN} table1 | head -2 > /dev/null"),
        ])
        .output()
        .expect("bash runs");
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(out.stderr.is_empty(), "stderr: {}", stderr(&out));
}

#[test]
fn sigma_log_model_tracks_the_hyperbola() {
    // At omega*tau0 = 1e-2 and omega*t_m = 1e4 the product sigma*|f|
    // sits within 2% of -1 (f = omega/2pi).
    let f = 1e-2 / (2.0 * PI);
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sigma.csv");
    let out = run(&[
        "sigma", "--model", "log", "--a", "1", "--tau0", "1", "--tm", "1e6",
        "--f-min", &format!("{f}"), "--f-max", &format!("{}", 2.0 * f),
        "--points", "2", "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let lines = csv_lines(&out_path);
    assert_eq!(lines[0], "f_hz,value");
    let row: Vec<&str> = lines[1].split(',').collect();
    let (f0, sigma): (f64, f64) = (row[0].parse().unwrap(), row[1].parse().unwrap());
    assert!((sigma * f0.abs() + 1.0).abs() <= 0.02, "sigma*|f| = {}", sigma * f0.abs());
}
