use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn symdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symdiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn arg(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Parses `label value` lines into the value for `label`.
fn field(text: &str, label: &str) -> String {
    text.lines()
        .find_map(|line| {
            let mut parts = line.split_whitespace();
            (parts.next() == Some(label)).then(|| parts.collect::<Vec<_>>().join(" "))
        })
        .unwrap_or_else(|| panic!("no `{label}` in:\n{text}"))
}

fn number(text: &str, label: &str) -> f64 {
    let raw = field(text, label);
    if raw == "inf" {
        f64::INFINITY
    } else {
        raw.parse().unwrap()
    }
}

#[test]
fn divergence_of_two_element_pair() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "# two-element pair\n0.25\n0.75\n");
    let q = write(&dir, "q.txt", "7.5e-1\n\n2.5e-1\n");
    let out = symdiv(&["divergence", arg(&p), arg(&q)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "tv"), "0.5");
    assert!((number(&text, "chernoff") - 0.143_841_036_226).abs() < 1e-11);
    assert!((number(&text, "jeffreys") - 0.549_306_144_334).abs() < 1e-11);
    assert_eq!(field(&text, "bhattacharyya_coeff"), "0.866025403784");
}

#[test]
fn divergence_selected_measures_in_bits() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "1\n0\n");
    let q = write(&dir, "q.txt", "0.5\n0.5\n");
    let out = symdiv(&[
        "divergence",
        arg(&p),
        arg(&q),
        "--measures",
        "kl,tv,renyi@0.5",
        "--bits",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let labels: Vec<&str> = text
        .lines()
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(labels, ["kl", "tv", "renyi@0.5"]);
    assert_eq!(field(&text, "kl"), "1");
    assert_eq!(field(&text, "tv"), "0.5");
}

#[test]
fn divergence_of_identical_and_disjoint_pairs() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "0.2\n0.3\n0.5\n");
    let same = stdout(&symdiv(&["divergence", arg(&p), arg(&p)]));
    for line in same.lines() {
        let mut parts = line.split_whitespace();
        let (label, value) = (parts.next().unwrap(), parts.next().unwrap());
        let expected = if label == "bhattacharyya_coeff" {
            "1"
        } else {
            "0"
        };
        assert_eq!(value, expected, "{label}");
    }

    let a = write(&dir, "a.txt", "1\n0\n");
    let b = write(&dir, "b.txt", "0\n1\n");
    let disjoint = stdout(&symdiv(&["divergence", arg(&a), arg(&b)]));
    assert_eq!(field(&disjoint, "tv"), "1");
    assert_eq!(field(&disjoint, "chernoff"), "inf");
}

#[test]
fn divergence_needs_pad_for_unequal_lengths() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "0.5\n0.5\n");
    let q = write(&dir, "q.txt", "0.5\n0.25\n0.25\n");
    let out = symdiv(&["divergence", arg(&p), arg(&q)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("different support sizes"));

    let padded = symdiv(&["divergence", arg(&p), arg(&q), "--pad", "--measures", "tv"]);
    assert!(padded.status.success());
    assert_eq!(field(&stdout(&padded), "tv"), "0.25");
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "0.5\n# fine\nhalf\n");
    let out = symdiv(&["divergence", arg(&p), arg(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn figure1_curve() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("fig1.csv");
    let out = symdiv(&[
        "curves",
        "figure1",
        "--eps-min",
        "0.25",
        "--eps-max",
        "0.75",
        "--steps",
        "3",
        "--out",
        arg(&csv),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "epsilon,C,L");
    assert_eq!(lines.len(), 4);
    let middle: Vec<f64> = lines[2].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(middle[0], 0.5);
    assert!((middle[1] - 0.143_841_036_226).abs() < 1e-11);
    assert!((middle[2] - 0.532_297_908_892).abs() < 1e-11);
    assert!(middle[1] <= middle[2]);
    assert!(!text.contains('\r'));
}

#[test]
fn curve_steps_count_rows() {
    let out = symdiv(&["curves", "figure1", "--steps", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn figure1_ratio_approaches_four() {
    let out = symdiv(&[
        "curves",
        "figure1",
        "--eps-min",
        "0",
        "--eps-max",
        "0.001",
        "--steps",
        "2",
        "--ratio",
    ]);
    let text = stdout(&out);
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    let ratio: f64 = last[3].parse().unwrap();
    assert!((ratio - 4.0).abs() < 0.04);
}

#[test]
fn bounds_curve_header() {
    let out = symdiv(&[
        "curves",
        "bounds",
        "--eps-min",
        "0.5",
        "--eps-max",
        "0.9",
        "--steps",
        "2",
    ]);
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "epsilon,bhattacharyya_min,bhattacharyya_max,hellinger_sq,chernoff,capacitory,jeffreys,kl"
    );
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn curves_reject_bad_range() {
    let out = symdiv(&["curves", "figure1", "--eps-min", "0.5", "--eps-max", "0.4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = symdiv(&["curves", "figure1", "--eps-max", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    for path in [&first, &second] {
        let out = symdiv(&["coding", "--grid", "--out", arg(path)]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
    for path in [&first, &second] {
        symdiv(&["curves", "bounds", "--steps", "50", "--out", arg(path)]);
    }
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn redundancy_grid_defaults() {
    let text = stdout(&symdiv(&["coding", "--grid"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "delta,csiszar,kl_tight,jeffreys_tight");
    assert_eq!(lines.len(), 201);
    assert_eq!(lines[1], "0,0,0,0");
    assert!(lines[200].starts_with("0.1,"));
    // near zero redundancy the Jeffreys bound is csiszar / sqrt(2)
    let row: Vec<f64> = lines[2].split(',').map(|v| v.parse().unwrap()).collect();
    assert!((row[1] / row[3] - std::f64::consts::SQRT_2).abs() < 0.02);
}

#[test]
fn shannon_code_report() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "0.4\n0.3\n0.3\n");
    let out = symdiv(&["coding", "--shannon", arg(&p), "--d", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "lengths"), "2,2,2");
    assert!((number(&text, "redundancy") - 0.429_049_405_545).abs() < 1e-11);
    let l1 = number(&text, "l1_actual");
    assert!((l1 - 2.0 / 15.0).abs() < 1e-11);
    for bound in ["bound_csiszar", "bound_kl", "bound_jeffreys"] {
        assert!(number(&text, bound) >= l1, "{bound}");
    }
}

#[test]
fn dyadic_code_report_is_all_zero() {
    let dir = TempDir::new().unwrap();
    let code = write(&dir, "code.txt", "d=2\n1 0.5\n2 0.25\n2 0.25\n");
    let text = stdout(&symdiv(&["coding", arg(&code)]));
    for label in [
        "redundancy",
        "kl_pq_nats",
        "kl_qp_nats",
        "jeffreys_nats",
        "l1_actual",
        "bound_csiszar",
        "bound_kl",
        "bound_jeffreys",
    ] {
        assert_eq!(field(&text, label), "0", "{label}");
    }
}

#[test]
fn code_file_with_separate_source() {
    let dir = TempDir::new().unwrap();
    let code = write(&dir, "code.txt", "# lengths only\nd=2\n2\n2\n2\n");
    let source = write(&dir, "p.txt", "0.4\n0.3\n0.3\n");
    let missing = symdiv(&["coding", arg(&code)]);
    assert_eq!(missing.status.code(), Some(2));
    let out = symdiv(&["coding", arg(&code), "--source", arg(&source)]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "kraft_sum"), "0.75");
}

#[test]
fn kraft_violation_is_an_error() {
    let dir = TempDir::new().unwrap();
    let code = write(&dir, "code.txt", "d=2\n1 0.4\n1 0.3\n1 0.3\n");
    let out = symdiv(&["coding", arg(&code)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Kraft"));
}

#[test]
fn verify_jeffreys_passes() {
    let out = symdiv(&["verify", "jeffreys", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "closed_form"), "0.549306144334");
    assert!(number(&text, "gap") < 1e-2);
    assert_eq!(field(&text, "result"), "PASS");
}

#[test]
fn verify_chernoff_small_epsilon() {
    assert_eq!(
        symdiv(&["verify", "chernoff", "0.05"]).status.code(),
        Some(0)
    );
}

#[test]
fn verify_bhattacharyya_min_needs_three_elements() {
    let two = symdiv(&["verify", "bhattacharyya_min", "0.5", "--support", "2"]);
    assert_eq!(two.status.code(), Some(1));
    let text = stdout(&two);
    assert_eq!(field(&text, "valid"), "yes");
    assert_eq!(field(&text, "tight"), "no");

    let three = symdiv(&["verify", "bhattacharyya_min", "0.5", "--support", "3"]);
    assert_eq!(three.status.code(), Some(0));
    assert!((number(&stdout(&three), "oracle_min") - 0.5).abs() < 0.05);
}

#[test]
fn verify_rejects_unknown_measure() {
    let out = symdiv(&["verify", "wasserstein", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}
