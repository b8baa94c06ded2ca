use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_complexon"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("complexon-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(out: Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn raise_filled_triangle() {
    let dir = scratch("raise");
    let path = dir.join("k.txt");
    fs::write(&path, "n 3\n1 2 3\n").unwrap();
    let out = stdout(
        bin()
            .args(["raise", "--dim", "2"])
            .arg(&path)
            .output()
            .unwrap(),
    );
    assert_eq!(
        out,
        "3 2\n0 0.33333333333333331 0.33333333333333331\n\
         0.33333333333333331 0 0.33333333333333331\n\
         0.33333333333333331 0.33333333333333331 0\n"
    );
}

#[test]
fn spectrum_of_filled_triangle() {
    let dir = scratch("spectrum");
    let path = dir.join("k.txt");
    fs::write(&path, "# filled\nn 3\n1 2 3\n").unwrap();
    let out = stdout(bin().arg("spectrum").arg(&path).output().unwrap());
    let values: Vec<(i64, f64)> = out
        .lines()
        .map(|l| {
            let (i, v) = l.split_once(' ').unwrap();
            (i.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    assert_eq!(
        values.iter().map(|p| p.0).collect::<Vec<_>>(),
        vec![1, -1, -2]
    );
    assert!((values[0].1 - 2.0 / 9.0).abs() < 1e-12);
    assert!((values[1].1 + 1.0 / 9.0).abs() < 1e-12);
}

#[test]
fn density_in_complex_and_complexon() {
    let dir = scratch("density");
    let f = dir.join("f.txt");
    let k = dir.join("k.txt");
    fs::write(&f, "n 3\n1 2 3\n").unwrap();
    fs::write(&k, "n 3\n1 2 3\n").unwrap();
    let out = stdout(bin().arg("density").arg(&f).arg(&k).output().unwrap());
    assert_eq!(out.trim().parse::<f64>().unwrap(), 2.0 / 9.0);

    let edge = dir.join("edge.txt");
    fs::write(&edge, "n 2\n1 2\n").unwrap();
    let out = stdout(
        bin()
            .arg("density")
            .arg(&edge)
            .args(["mean-triangle", "--samples", "1000"])
            .output()
            .unwrap(),
    );
    let fields: Vec<f64> = out.split_whitespace().map(|x| x.parse().unwrap()).collect();
    assert_eq!(fields, vec![1.0, 0.0]);

    let step = dir.join("w.json");
    fs::write(
        &step,
        r#"{"type": "step", "n": 2, "dim": 1, "components": [{"d": 1, "cells": [[[1, 2], 0.5]]}]}"#,
    )
    .unwrap();
    let out = stdout(bin().arg("density").arg(&edge).arg(&step).output().unwrap());
    assert_eq!(out.trim().parse::<f64>().unwrap(), 0.25);
}

#[test]
fn sample_writes_complex_and_latent_points() {
    let dir = scratch("sample");
    let out_path = dir.join("k.txt");
    let latent = dir.join("x.txt");
    let run = || {
        stdout(
            bin()
                .args(["sample", "-n", "9", "--seed", "4", "--out"])
                .arg(&out_path)
                .arg("--latent")
                .arg(&latent)
                .output()
                .unwrap(),
        );
        (fs::read(&out_path).unwrap(), fs::read(&latent).unwrap())
    };
    let a = run();
    assert_eq!(a, run());
    let text = String::from_utf8(a.0).unwrap();
    assert!(text.contains("n 9\n"));
    assert_eq!(String::from_utf8(a.1).unwrap().lines().count(), 9);
    // The sample must load back as a complex.
    let out = stdout(
        bin()
            .args(["raise", "--dim", "1"])
            .arg(&out_path)
            .output()
            .unwrap(),
    );
    assert!(out.starts_with("9 1\n"));
}

#[test]
fn converge_with_config_file_and_svg() {
    let dir = scratch("converge");
    let config = dir.join("run.json");
    let csv = dir.join("trials.csv");
    let summary = dir.join("summary.csv");
    let svg = dir.join("plot.svg");
    fs::write(
        &config,
        format!(
            r#"{{"n_min": 6, "n_max": 12, "trials": 2, "seed": 5, "indices": [1, -1],
                "out_csv": {csv:?}, "out_summary": {summary:?}}}"#
        ),
    )
    .unwrap();
    stdout(
        bin()
            .arg("converge")
            .arg("--config")
            .arg(&config)
            .arg("--out-svg")
            .arg(&svg)
            .output()
            .unwrap(),
    );
    let trials = fs::read_to_string(&csv).unwrap();
    assert!(trials.starts_with("n,trial,lambda_1,lambda_-1\n"));
    assert_eq!(trials.lines().count(), 1 + 7 * 2);
    let summary = fs::read_to_string(&summary).unwrap();
    assert_eq!(summary.lines().count(), 1 + 7);
    assert!(summary
        .lines()
        .next()
        .unwrap()
        .ends_with("ref_lambda_1,ref_lambda_-1"));
    let svg = fs::read_to_string(&svg).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 2);
}

#[test]
fn zero_complexon_converges_to_zero() {
    let dir = scratch("zero");
    let w = dir.join("zero.json");
    fs::write(
        &w,
        r#"{"type": "polynomial", "dim": 2, "components": [
            {"d": 1, "monomials": [[1, [0, 0]]]},
            {"d": 2, "monomials": []}]}"#,
    )
    .unwrap();
    let out = stdout(
        bin()
            .args(["converge", "--n-min", "4", "--n-max", "9", "--complexon"])
            .arg(&w)
            .output()
            .unwrap(),
    );
    for line in out.lines().skip(1) {
        assert!(line.split(',').skip(2).all(|x| x == "0"), "{line}");
    }
}

#[test]
fn errors_are_reported() {
    let out = bin()
        .args(["raise", "/nonexistent/k.txt"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("reading"));

    let out = bin().args(["converge", "--n-min", "2"]).output().unwrap();
    assert!(!out.status.success());

    let out = bin()
        .args([
            "converge",
            "--n-min",
            "6",
            "--n-max",
            "7",
            "--indices",
            "1,0",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
}
