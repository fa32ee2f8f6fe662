//! End-to-end CLI tests: schema-stable golden outputs, determinism, config
//! handling, and the exit-code contract.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cyclequant"))
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn run(args: &[&str]) -> Run {
    run_with(args, |_| {})
}

fn run_with(args: &[&str], tweak: impl FnOnce(&mut Command)) -> Run {
    let mut cmd = bin();
    cmd.args(args).env_remove("CYCLEQUANT_CONFIG");
    tweak(&mut cmd);
    let out = cmd.output().expect("spawn cyclequant");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
        code: out.status.code().expect("exit code"),
    }
}

#[test]
fn quantize_harmonic_matches_golden_json() {
    let out = run(&[
        "quantize",
        "--potential",
        "harmonic",
        "--m",
        "1",
        "--omega",
        "1",
        "--levels",
        "3",
        "--morse",
        "0.5",
    ]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_eq!(out.stdout, include_str!("golden/quantize_harmonic.json"));
}

#[test]
fn windings_matches_golden_json() {
    let out = run(&["windings", "--L", "6.2832", "--t", "1"]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_eq!(out.stdout, include_str!("golden/windings.json"));
}

#[test]
fn boost_matches_golden_json() {
    let out = run(&["boost", "--mass", "electron", "--beta", "0.6"]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_eq!(out.stdout, include_str!("golden/boost_electron.json"));
    // The observed period contracts to T_tau / gamma.
    assert!(out.stdout.contains("6.4746398354305112e-21"));
}

#[test]
fn blackbody_matches_golden_csv() {
    let out = run(&["blackbody", "--x-grid", "1e-2:10:log:5", "--format", "csv"]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    assert_eq!(out.stdout, include_str!("golden/blackbody_small.csv"));
}

#[test]
fn blackbody_default_grid_has_monotone_ratio() {
    let out = run(&["blackbody", "--format", "csv"]);
    assert_eq!(out.code, 0);
    let rows: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(rows[0], "x,planck,rayleigh_jeans,ratio");
    assert_eq!(rows.len(), 61, "60 data rows plus header");
    let mut prev = f64::INFINITY;
    for row in &rows[1..] {
        let ratio: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
        assert!(ratio < prev, "ratio not decreasing: {row}");
        prev = ratio;
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "compare",
        "--potential",
        "harmonic",
        "--levels",
        "4",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn quantize_box_levels_are_quadratic() {
    let out = run(&[
        "quantize",
        "--potential",
        "box",
        "--L",
        "3.14159265358979",
        "--levels",
        "5",
        "--format",
        "csv",
    ]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    let rows: Vec<&str> = out.stdout.lines().skip(1).collect();
    assert_eq!(rows.len(), 5);
    for (i, row) in rows.iter().enumerate() {
        let n: u32 = row.split(',').next().unwrap().parse().unwrap();
        assert_eq!(n as usize, i + 1, "box levels start at n = 1");
        let e: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        let exact = 0.5 * (n as f64) * (n as f64);
        assert!(
            ((e - exact) / exact).abs() < 1e-9,
            "n = {n}: {e} vs {exact}"
        );
    }
}

#[test]
fn config_file_is_merged_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# engine setup").unwrap();
    writeln!(f, "potential = harmonic").unwrap();
    writeln!(f, "omega = 2.0").unwrap();
    writeln!(f, "levels = 2").unwrap();
    writeln!(f, "format = csv").unwrap();
    drop(f);

    // Config alone: omega = 2 doubles the ladder spacing.
    let from_config = run(&["quantize", "--config", path.to_str().unwrap()]);
    assert_eq!(from_config.code, 0, "stderr: {}", from_config.stderr);
    let first: f64 = from_config
        .stdout
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!(
        (first - 1.0).abs() < 1e-9,
        "E0 at omega=2 is 1.0, got {first}"
    );

    // A flag overrides the file.
    let overridden = run(&[
        "quantize",
        "--config",
        path.to_str().unwrap(),
        "--omega",
        "1.0",
    ]);
    let first: f64 = overridden
        .stdout
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((first - 0.5).abs() < 1e-9, "flag did not win: {first}");

    // The environment variable is the config fallback.
    let via_env = run_with(&["quantize"], |cmd| {
        cmd.env("CYCLEQUANT_CONFIG", &path);
    });
    assert_eq!(via_env.stdout, from_config.stdout);
}

#[test]
fn unknown_config_key_reports_location_and_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "potential = harmonic\n  frobnicate = 1\n").unwrap();
    let out = run(&["quantize", "--config", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(
        out.stderr.contains("2:3") && out.stderr.contains("frobnicate"),
        "stderr: {}",
        out.stderr
    );
}

#[test]
fn usage_errors_exit_1() {
    let out = run(&["quantize", "--no-such-flag"]);
    assert_eq!(out.code, 1);
    let out = run(&["quantize", "--potential", "escher"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("unknown potential"));
    let out = run(&["blackbody", "--x-grid", "10:1:lin:5"]);
    assert_eq!(out.code, 1);
}

#[test]
fn numerical_failures_exit_2() {
    // A double well cannot be quantized by the two-turning-point engine.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("well.dat");
    let mut f = std::fs::File::create(&path).unwrap();
    for i in 0..=400 {
        let x = -3.0 + 6.0 * i as f64 / 400.0;
        writeln!(f, "{x} {}", (x * x - 2.25f64).powi(2) / 4.0).unwrap();
    }
    drop(f);
    let out = run(&[
        "quantize",
        "--potential",
        "tabulated",
        "--table",
        path.to_str().unwrap(),
        "--levels",
        "1",
    ]);
    assert_eq!(out.code, 2, "stderr: {}", out.stderr);
    assert!(out.stderr.contains("multi-well"), "stderr: {}", out.stderr);
}

#[test]
fn compare_bound_violation_exits_2_but_still_reports() {
    // A deliberately cramped, non-extrapolated oracle grid pushes the
    // harmonic disagreement far beyond the documented 1e-6 bound.
    let out = run(&[
        "compare",
        "--potential",
        "harmonic",
        "--levels",
        "3",
        "--xmin",
        "-2.5",
        "--xmax",
        "2.5",
        "--grid-n",
        "64",
    ]);
    assert_eq!(out.code, 2, "stderr: {}", out.stderr);
    assert!(out.stderr.contains("exceeds the documented bound"));
    assert!(out.stdout.contains("\"rel_diff\""), "report still written");
}

#[test]
fn out_flag_writes_file_and_keeps_stdout_empty() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "windings",
        "--L",
        "6.2832",
        "--t",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, include_str!("golden/windings.json"));
}

#[test]
fn oracle_emits_shared_schema() {
    let out = run(&[
        "oracle",
        "--potential",
        "box",
        "--L",
        "3.141592653589793",
        "--xmin",
        "0",
        "--xmax",
        "3.141592653589793",
        "--grid-n",
        "500",
        "--levels",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    let mut lines = out.stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,e_semiclassical,e_oracle,e_closed_form,abs_diff,rel_diff,residual"
    );
    let first = lines.next().unwrap();
    let e: f64 = first.split(',').nth(2).unwrap().parse().unwrap();
    assert!(((e - 0.5) / 0.5).abs() < 1e-6, "box ground level: {e}");
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["--version"]).code, 0);
    assert_eq!(run(&["quantize", "--help"]).code, 0);
}
