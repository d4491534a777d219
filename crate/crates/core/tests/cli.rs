use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_cone-bvp");

fn cli(args: &[&str], out: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("CONE_BVP_PANELS")
        .output()
        .unwrap()
}

fn files(dir: &Path, prefix: &str) -> Vec<std::path::PathBuf> {
    let mut v: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with(prefix))
        .collect();
    v.sort();
    v
}

fn report(dir: &Path) -> Value {
    let r = files(dir, "report_");
    assert_eq!(r.len(), 1, "{r:?}");
    serde_json::from_str(&std::fs::read_to_string(&r[0]).unwrap()).unwrap()
}

#[test]
fn list_names_every_example() {
    let out = Command::new(BIN).arg("list").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    for id in ["6.1a", "6.1b", "6.2", "6.3", "6.4", "6.5", "6.6", "6.7"] {
        assert!(text.contains(id));
    }
}

#[test]
fn example_6_5_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["example", "6.5"], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = report(dir.path());
    for key in [
        "problem",
        "constants",
        "limits",
        "hypotheses",
        "theorems",
        "solutions",
        "verification",
        "verdict",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    let gamma = r["constants"]["gamma"].as_f64().unwrap();
    let lambda2 = r["constants"]["lambda2"].as_f64().unwrap();
    assert!((gamma - 2.0 / 3.0).abs() < 1e-12);
    assert!((lambda2 - 3.0 / 17.0).abs() < 1e-10);
    assert_eq!(r["theorems"][0]["theorem"], "Thm4.2");
    assert_eq!(r["hypotheses"]["H6"], "true");
    assert_eq!(r["verdict"]["status"], "CONFIRMED");
    let norms: Vec<f64> = r["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["norm"].as_f64().unwrap())
        .collect();
    assert!(norms.iter().any(|&n| n < 3.0) && norms.iter().any(|&n| n > 3.0));

    let csv = files(dir.path(), "solution_");
    assert_eq!(csv.len(), norms.len());
    let text = std::fs::read_to_string(&csv[0]).unwrap();
    assert!(text.starts_with("t,u\n"));
    assert_eq!(text.lines().count(), 4096 + 2);
}

#[test]
fn config_reproduces_the_registry_entry() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let cfg = dir.path().join("e67.json");
    std::fs::write(
        &cfg,
        cone_bvp::cli::lookup("6.7").unwrap().config().to_json(),
    )
    .unwrap();
    assert!(cli(&["example", "6.7", "--format", "json"], &a)
        .status
        .success());
    assert!(cli(&["run", cfg.to_str().unwrap(), "--format", "json"], &b)
        .status
        .success());
    assert_eq!(report(&a), report(&b));
}

#[test]
fn config_for_example_6_4_reports_lambda1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("p.json");
    std::fs::write(
        &cfg,
        r#"{"alpha": "1/2", "eta": 1, "t_end": 2, "coeff": "5/32*(2-t)^3",
            "nonlin": "u^(1/2)/2 + u^2/32", "rho1": 4, "m1": "3/8", "f0": "infinite"}"#,
    )
    .unwrap();
    let out = cli(
        &[
            "run",
            cfg.to_str().unwrap(),
            "--format",
            "json",
            "--grid",
            "1024",
        ],
        dir.path(),
    );
    assert!(out.status.code().is_some());
    let r = report(dir.path());
    assert!((r["constants"]["lambda1"].as_f64().unwrap() - 0.5).abs() < 1e-10);
    assert_eq!(r["theorems"][0]["theorem"], "Thm4.1");
}

#[test]
fn bad_config_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(
        &cfg,
        r#"{"alpha": 1, "eta": 1.5, "t_end": 1, "coeff": "1", "nonlin": "u"}"#,
    )
    .unwrap();
    let out = cli(&["run", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`eta`"));
    assert!(files(dir.path(), "report_").is_empty());
}

#[test]
fn unknown_example_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli(&["example", "9.9"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn panels_from_environment_and_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(BIN)
        .args(["example", "6.7", "--format", "csv", "--plot-data", "--out"])
        .arg(dir.path())
        .env("CONE_BVP_PANELS", "64")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(files(dir.path(), "report_").is_empty());
    let plot = std::fs::read_to_string(&files(dir.path(), "plot_")[0]).unwrap();
    let mut lines = plot.lines();
    assert_eq!(lines.next(), Some("# t u1"));
    assert_eq!(lines.next().unwrap().split_whitespace().count(), 2);

    let dir2 = tempfile::tempdir().unwrap();
    Command::new(BIN)
        .args(["example", "6.7", "--format", "json", "--out"])
        .arg(dir2.path())
        .env("CONE_BVP_PANELS", "64")
        .output()
        .unwrap();
    assert_eq!(report(dir2.path())["problem"]["panels"], 64);
}

#[test]
fn repeated_runs_never_overwrite() {
    let dir = tempfile::tempdir().unwrap();
    for _ in 0..3 {
        assert!(cli(
            &["example", "6.1a", "--format", "json", "--grid", "1024"],
            dir.path()
        )
        .status
        .code()
        .is_some());
    }
    assert_eq!(files(dir.path(), "report_6.1a_").len(), 3);
}
