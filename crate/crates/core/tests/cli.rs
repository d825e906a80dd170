//! End-to-end tests of the `su11` binary: exit codes, file outputs and
//! byte-level determinism of repeated invocations.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn su11() -> Command {
    Command::new(env!("CARGO_BIN_EXE_su11"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("su11-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

const BASE_ONLY: &str = "\
[base]
alpha = 100.0
gamma = 1e-6
r1 = 2.0
r2 = 2.0
theta1 = 0.0
theta2 = 3.141592653589793
phi = 6.15
mu = 1.0
eta = 1.0
";

#[test]
fn figure_fig2_writes_csv_and_is_deterministic() {
    let dir = tmp_dir("fig2");
    for run in ["a", "b"] {
        let out = dir.join(run);
        let status = su11()
            .args(["figure", "fig2", "--out"])
            .arg(&out)
            .args(["--threads", if run == "a" { "1" } else { "8" }])
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = fs::read(dir.join("a/fig2.csv")).unwrap();
    let b = fs::read(dir.join("b/fig2.csv")).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("gamma,n_kerr,n_cs\n"));
    assert_eq!(text.lines().count(), 202);
}

#[test]
fn figure_svg_output() {
    let dir = tmp_dir("svg");
    let status = su11()
        .args(["figure", "fig5", "--svg", "--out"])
        .arg(&dir)
        .status()
        .unwrap();
    assert!(status.success());
    let svg = fs::read_to_string(dir.join("fig5.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("polyline"));
}

#[test]
fn unknown_figure_exits_2() {
    let dir = tmp_dir("nofig");
    let status = su11()
        .args(["figure", "fig99", "--out"])
        .arg(&dir)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn sweep_from_config_file() {
    let dir = tmp_dir("sweep");
    let conf = dir.join("scan.conf");
    fs::write(
        &conf,
        format!(
            "{BASE_ONLY}\n[axis]\nparam = phi\nstart = 5.9\nstop = 6.19\ncount = 20\n\n\
             [sweep]\nquantity = delta_phi_hd\nengine = analytic\n"
        ),
    )
    .unwrap();
    let out = dir.join("scan.csv");
    let status = su11()
        .args(["sweep", "--config"])
        .arg(&conf)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("phi,delta_phi_hd,delta_phi_hd_undefined\n"));
    assert_eq!(text.lines().count(), 21);
}

#[test]
fn config_typo_exits_2() {
    let dir = tmp_dir("typo");
    let conf = dir.join("bad.conf");
    fs::write(
        &conf,
        format!("{BASE_ONLY}alpa = 3.0\n\n[axis]\nparam = phi\nstart = 0.0\nstop = 1.0\ncount = 5\n\n[sweep]\nquantity = delta_phi_hd\n"),
    )
    .unwrap();
    let out = dir.join("out.csv");
    let output = su11()
        .args(["sweep", "--config"])
        .arg(&conf)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("alpa"));
}

#[test]
fn oracle_sweep_beyond_alpha_limit_exits_3() {
    let dir = tmp_dir("alpha");
    let conf = dir.join("big.conf");
    fs::write(
        &conf,
        format!(
            "{BASE_ONLY}\n[axis]\nparam = phi\nstart = 5.9\nstop = 6.0\ncount = 2\n\n\
             [sweep]\nquantity = delta_phi_hd\nengine = oracle-linearized\n"
        ),
    )
    .unwrap();
    let status = su11()
        .args(["sweep", "--config"])
        .arg(&conf)
        .arg("--out")
        .arg(dir.join("never.csv"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn unwritable_output_exits_4() {
    let dir = tmp_dir("io");
    let conf = dir.join("ok.conf");
    fs::write(
        &conf,
        format!(
            "{BASE_ONLY}\n[axis]\nparam = phi\nstart = 5.9\nstop = 6.0\ncount = 2\n\n\
             [sweep]\nquantity = delta_phi_hd\n"
        ),
    )
    .unwrap();
    // Writing below a regular file fails with an I/O error.
    let blocker = dir.join("blocker");
    fs::write(&blocker, "x").unwrap();
    let status = su11()
        .args(["sweep", "--config"])
        .arg(&conf)
        .arg("--out")
        .arg(blocker.join("out.csv"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));
}

#[test]
fn optimum_reports_window() {
    let dir = tmp_dir("opt");
    let conf = dir.join("base.conf");
    fs::write(&conf, BASE_ONLY).unwrap();
    let output = su11()
        .args(["optimum", "--config"])
        .arg(&conf)
        .args(["--scheme", "hd"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let phi: f64 = text
        .split("phi_star = ")
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!((5.9..=6.19).contains(&phi), "phi_star = {phi}");
}

#[test]
fn moments_dump_matches_analytic_values() {
    let dir = tmp_dir("moments");
    let conf = dir.join("base.conf");
    fs::write(&conf, BASE_ONLY).unwrap();
    let output = su11()
        .args(["moments", "--config"])
        .arg(&conf)
        .args(["--engine", "analytic"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.starts_with("moment,re,im\n"));
    assert!(text.lines().count() >= 5);
}

#[test]
fn verify_small_passes_and_is_deterministic() {
    let dir = tmp_dir("verify");
    let out1 = dir.join("v1.csv");
    let out2 = dir.join("v2.csv");
    for (out, threads) in [(&out1, "1"), (&out2, "8")] {
        let output = su11()
            .args(["verify", "--preset", "small", "--out"])
            .arg(out)
            .args(["--threads", threads])
            .output()
            .unwrap();
        assert!(output.status.success());
        assert!(String::from_utf8_lossy(&output.stdout).contains("PASS"));
    }
    assert_eq!(fs::read(&out1).unwrap(), fs::read(&out2).unwrap());
}
