use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hcr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcr")).args(args).output().expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn group_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = hcr(&["verify", "--suite", "group", "--dim", "1", "--seed", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["verdict"], "pass");
    let ids: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"group.associativity"));
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn all_suites_in_two_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = hcr(&["verify", "--suite", "all", "--dim", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&out);
    for g in ["translate", "rotate", "dilate", "iota", "check_invert"] {
        let id = format!("schouten.spectrum_invariance.{g}");
        assert!(r["checks"].as_array().unwrap().iter().any(|c| c["id"] == id.as_str()), "{id}");
    }
}

#[test]
fn reports_are_byte_identical() {
    let a = hcr(&["verify", "--suite", "schouten", "--seed", "3"]);
    let b = hcr(&["verify", "--suite", "schouten", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tolerance_scale_marks_report() {
    let o = hcr(&["verify", "--suite", "group", "--tol-scale", "10"]);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["config"]["canonical"], false);
    assert_eq!(r["checks"][0]["tolerance"], 1e-9);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = hcr(&["verify", "--suite", "foo"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("grid-lite"));
}

#[test]
fn tensor_of_constant_is_zero() {
    let o = hcr(&["tensor", "--field", "1", "--point", "0.3;-0.2;1.5"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in r["matrix"].as_array().unwrap() {
        assert!(row.as_array().unwrap().iter().all(|v| v.as_f64() == Some(0.0)));
    }
    assert!(r["sigma"].as_array().unwrap().iter().all(|v| v.as_f64() == Some(0.0)));
}

#[test]
fn tensor_trace_at_origin() {
    // Delta_H exp(0.1 |z|^2) at 0 is 0.4 n, and sigma_1 = -2/(Q-2) of it.
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    for n in [1usize, 2] {
        let pt = format!("{0};{0};0", vec!["0"; n].join(","));
        let o = hcr(&["tensor", "--dim", &n.to_string(), "--field", "exp(0.1*znorm2)", "--point", &pt, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let r = json(&out);
        let q = (2 * n + 2) as f64;
        let want = -2.0 / (q - 2.0) * 0.4 * n as f64;
        assert!((r["sigma"][0].as_f64().unwrap() - want).abs() < 1e-14);
    }
}

#[test]
fn tensor_errors() {
    let o = hcr(&["tensor", "--field", "exp(0.1*znorm2", "--point", "0;0;0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte"));
    assert_eq!(hcr(&["tensor", "--field", "x1 - 1", "--point", "0;0;0"]).status.code(), Some(3));
    assert_eq!(hcr(&["tensor", "--field", "1", "--point", "0;0"]).status.code(), Some(2));
}

#[test]
fn solve_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let mut sup = Vec::new();
    let read = |p: &Path| -> Vec<(f64, u8)> {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                (f[3].parse().unwrap(), f[4].parse().unwrap())
            })
            .collect()
    };
    let base = dir.path().join("e0.csv");
    assert_eq!(hcr(&["solve", "--grid", "33", "--eps", "0", "--out", base.to_str().unwrap()]).status.code(), Some(0));
    let side = json(&dir.path().join("e0.json"));
    assert!(side["sigma_origin"].as_f64().unwrap() > 0.0);
    assert!(side["residual"].as_f64().unwrap() <= 1e-8);
    let b = read(&base);
    assert_eq!(b.len(), 33 * 33 * 33);
    for eps in ["0.01", "0.005"] {
        let p = dir.path().join(format!("e{eps}.csv"));
        assert_eq!(hcr(&["solve", "--grid", "33", "--eps", eps, "--out", p.to_str().unwrap()]).status.code(), Some(0));
        let v = read(&p);
        sup.push(v.iter().zip(&b).filter(|(x, _)| x.1 == 0).map(|(x, y)| (x.0 - y.0).abs()).fold(0.0, f64::max));
    }
    assert!(sup[1] < sup[0], "{sup:?}");
}

#[test]
fn solve_rejects_even_grid() {
    assert_eq!(hcr(&["solve", "--grid", "4", "--out", "/nonexistent/x.csv"]).status.code(), Some(2));
    assert_eq!(hcr(&["solve", "--grid", "9", "--eps", "-1", "--out", "/nonexistent/x.csv"]).status.code(), Some(2));
}
