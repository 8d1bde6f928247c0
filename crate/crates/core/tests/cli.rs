mod common;

use std::process::{Command, Output};

use common::fixture;

fn tripart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tripart")).args(args).env_remove("TRIPART_DATA_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn predict_with_shipped_model() {
    let o = tripart(&["predict", "--model", &path("fp64.json"), "--size", "100000"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "32\n");
}

#[test]
fn predict_policy() {
    let o = tripart(&[
        "predict", "--model", &path("fp64.json"), "--size", "100000000",
        "--recursions", "auto", "--depth-model", &path("depth.json"),
    ]);
    assert_eq!(stdout(&o), "64\ndepth 3\nsizes 64,10,32,16\n");
    let o = tripart(&["predict", "--model", &path("fp64.json"), "--size", "5", "--recursions", "auto"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solve_check() {
    let o = tripart(&["solve", "--size", "16", "--m", "4", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let residual: f64 = out.lines().find_map(|l| l.strip_prefix("residual ")).unwrap().parse().unwrap();
    assert!(residual <= 1e-10);
    assert!(out.contains("check ok"));
    let o = tripart(&["solve", "--size", "5000", "--m", "20", "--recursions", "2", "--precision", "fp32", "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn fit_report_under_shipped_seed() {
    let o = tripart(&["fit", "--data", &path("sizes_fp64.csv"), "--use-corrected", "--report"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "k 1"));
    assert!(out.lines().any(|l| l == "accuracy 1.0"), "{out}");
}

#[test]
fn data_dir_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_tripart"))
        .args(["predict", "--model", "fp64.json", "--size", "30000"])
        .env("TRIPART_DATA_DIR", fixture(""))
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "16\n");
}

#[test]
fn exit_codes() {
    assert_eq!(tripart(&["solve", "--size", "10"]).status.code(), Some(1));
    assert_eq!(tripart(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(tripart(&["predict", "--model", "/nonexistent.json", "--size", "9"]).status.code(), Some(2));
    assert_eq!(tripart(&["fit", "--data", &path("devices_fp64.csv")]).status.code(), Some(2));
    assert_eq!(tripart(&["fit", "--data", &path("sizes_fp64.csv"), "--test-fraction", "2"]).status.code(), Some(1));
}

#[test]
fn every_subcommand_has_help() {
    for args in [
        vec!["--help"],
        vec!["solve", "--help"],
        vec!["bench", "sweep-m", "--help"],
        vec!["bench", "sweep-r", "--help"],
        vec!["correct", "--help"],
        vec!["fit", "--help"],
        vec!["predict", "--help"],
        vec!["report", "--help"],
    ] {
        let o = tripart(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).contains("Usage"), "{args:?}");
    }
    let help = stdout(&tripart(&["bench", "sweep-m", "--help"]));
    for flag in ["--size", "--m-list", "--runs", "--out", "--fake-clock", "--seed", "--precision"] {
        assert!(help.contains(flag), "{flag}");
    }
}

#[test]
fn report_with_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let plots = dir.path().join("plots");
    let o = tripart(&[
        "report", "--model", &path("fp64.json"), "--data", &path("sizes_fp64.csv"),
        "--use-corrected", "--plot-data", plots.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("accuracy 1.0\n"));
    assert!(out.contains("alignment 12 of 12"));
    let scatter = std::fs::read_to_string(plots.join("rtx2080ti_fp64_scatter.csv")).unwrap();
    assert_eq!(scatter.lines().count(), 38);
    assert!(scatter.starts_with("N,true,predicted\n100,4,4\n"));
}

#[test]
fn sweep_correct_fit_with_fake_clock() {
    let dir = tempfile::tempdir().unwrap();
    let d = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    std::fs::write(d("trace.txt"), "5\n3\n3.05\n").unwrap();
    let o = tripart(&[
        "bench", "sweep-m", "--size", "1000,2000", "--m-list", "8,16,32", "--runs", "1",
        "--fake-clock", &d("trace.txt"), "--out", &d("sweep.csv"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(d("sweep.csv")).unwrap();
    assert!(csv.contains("1000,fp64,local,,16,3,1,,\n"), "{csv}");
    let o = tripart(&["correct", "--data", &d("sweep.csv"), "--tolerance", "0.02", "--out", &d("c.csv")]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(d("c.csv")).unwrap();
    assert!(csv.contains("1000,fp64,local,,32,3.05,0,16,\n"), "{csv}");
}
