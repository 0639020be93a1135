use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const OBTUSE: &str = r#"{"kind":"generators","ambient_dim":2,"generators":[[1,0],[-1,1]]}"#;
const ORTHANT: &str = r#"{"kind":"generators","ambient_dim":2,"generators":[[1,0],[0,1]]}"#;

struct Workdir {
    dir: TempDir,
}

impl Workdir {
    fn new() -> Self {
        Self {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

/// Runs the binary with a JSON report and returns (exit code, report).
fn run(args: &[&str], report: &Path) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_isowedge"))
        .args(args)
        .arg("--output")
        .arg(report)
        .output()
        .unwrap();
    let code = out.status.code().unwrap();
    let text = fs::read_to_string(report)
        .unwrap_or_else(|_| panic!("no report; stderr: {}", String::from_utf8_lossy(&out.stderr)));
    (code, serde_json::from_str(&text).unwrap())
}

fn exit_code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_isowedge"))
        .args(args)
        .output()
        .unwrap()
        .status
        .code()
        .unwrap()
}

fn coords(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|c| c.as_f64().unwrap()).collect()
}

fn assert_close(a: &[f64], b: &[f64], tol: f64) {
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn project_monotone_points() {
    let w = Workdir::new();
    let wedge = w.file("w.json", r#"{"kind":"monotone","m":3}"#);
    let points = w.file("p.txt", "1 2 3\n3 2 1\n");
    let (code, report) = run(
        &["project", "--wedge", s(&wedge), "--points", s(&points)],
        &w.path("r.json"),
    );
    assert_eq!(code, 0);
    assert_eq!(report["results"]["method"], "pava");
    let pts = report["results"]["points"].as_array().unwrap();
    assert_close(&coords(&pts[0]["projection"]["point"]), &[2.0, 2.0, 2.0], 1e-12);
    assert_close(&coords(&pts[1]["projection"]["point"]), &[3.0, 2.0, 1.0], 1e-12);
    for p in pts {
        assert_eq!(p["projection"]["certificate"]["passed"], true);
    }
}

#[test]
fn project_orthant() {
    let w = Workdir::new();
    let wedge = w.file("w.json", ORTHANT);
    let points = w.file("p.txt", "3 -2\n");
    let (code, report) = run(
        &["project", "--wedge", s(&wedge), "--points", s(&points)],
        &w.path("r.json"),
    );
    assert_eq!(code, 0);
    let p = &report["results"]["points"][0]["projection"];
    assert_close(&coords(&p["point"]), &[3.0, 0.0], 1e-12);
    assert_close(&coords(&p["residual"]), &[0.0, -2.0], 1e-12);
}

#[test]
fn input_errors_exit_2() {
    let w = Workdir::new();
    let wedge = w.file("w.json", ORTHANT);
    let bad_dim = w.file("p.txt", "1 2 3\n");
    let garbage = w.file("g.json", "{ not json");
    assert_eq!(
        exit_code(&["project", "--wedge", s(&wedge), "--points", s(&bad_dim)]),
        2
    );
    assert_eq!(exit_code(&["decompose", "--wedge", s(&garbage)]), 2);
    assert_eq!(exit_code(&["decompose", "--wedge", s(&w.path("missing.json"))]), 2);
    assert_eq!(
        exit_code(&[
            "project",
            "--wedge",
            s(&wedge),
            "--points",
            s(&bad_dim),
            "--method",
            "nope"
        ]),
        2
    );
    assert_eq!(exit_code(&["decompose", "--wedge", s(&wedge), "--eps-feas", "-1"]), 2);
}

#[test]
fn decompose_examples() {
    let w = Workdir::new();
    let mono = w.file("m.json", r#"{"kind":"monotone","m":3}"#);
    let (code, report) = run(&["decompose", "--wedge", s(&mono)], &w.path("r.json"));
    assert_eq!(code, 0);
    let r = &report["results"];
    let lin = r["lineality"].as_array().unwrap();
    assert_eq!(lin.len(), 1);
    let l = coords(&lin[0]);
    let sign = l[0].signum();
    let c = 1.0 / 3f64.sqrt();
    assert_close(&l.iter().map(|v| v * sign).collect::<Vec<_>>(), &[c, c, c], 1e-9);
    let cone: Vec<Vec<f64>> = r["cone_part"].as_array().unwrap().iter().map(coords).collect();
    assert_eq!(cone.len(), 2);
    assert_close(&cone[0], &[2.0, -1.0, -1.0], 1e-9);
    assert_close(&cone[1], &[1.0, 1.0, -2.0], 1e-9);
    assert_eq!(r["generating"], true);
    assert!(r["max_cone_lineality_inner"].as_f64().unwrap() <= 1e-9);

    let orthant = w.file("o.json", ORTHANT);
    let (_, report) = run(&["decompose", "--wedge", s(&orthant)], &w.path("r.json"));
    assert!(report["results"]["lineality"].as_array().unwrap().is_empty());
    assert_eq!(report["results"]["pointed"], true);

    let full = w.file(
        "f.json",
        r#"{"kind":"generators","ambient_dim":2,"generators":[[1,0],[-1,0],[0,1],[0,-1]]}"#,
    );
    let (_, report) = run(&["decompose", "--wedge", s(&full)], &w.path("r.json"));
    assert_eq!(report["results"]["lineality"].as_array().unwrap().len(), 2);
    assert!(report["results"]["cone_part"].as_array().unwrap().is_empty());
}

#[test]
fn decompose_round_trip_preserves_projections() {
    let w = Workdir::new();
    let wedge = w.file(
        "w.json",
        r#"{"kind":"generators","ambient_dim":3,"generators":[[1,0,0],[-1,0,0],[0,1,1],[1,-1,0],[0,0,-1],[2,1,0]]}"#,
    );
    let (_, report) = run(&["decompose", "--wedge", s(&wedge)], &w.path("d.json"));
    let equivalent = w.file("e.json", &report["results"]["equivalent_wedge"].to_string());

    let points: String = (0..100)
        .map(|i| {
            let t = i as f64;
            format!(
                "{} {} {}\n",
                3.0 * (1.3 * t).sin(),
                3.0 * (0.7 * t + 1.0).cos(),
                3.0 * (2.1 * t).sin()
            )
        })
        .collect();
    let points = w.file("p.txt", &points);
    let (c1, a) = run(
        &["project", "--wedge", s(&wedge), "--points", s(&points)],
        &w.path("a.json"),
    );
    let (c2, b) = run(
        &["project", "--wedge", s(&equivalent), "--points", s(&points)],
        &w.path("b.json"),
    );
    assert_eq!((c1, c2), (0, 0));
    let a = a["results"]["points"].as_array().unwrap();
    let b = b["results"]["points"].as_array().unwrap();
    assert_eq!(a.len(), 100);
    for (pa, pb) in a.iter().zip(b) {
        assert_close(
            &coords(&pa["projection"]["point"]),
            &coords(&pb["projection"]["point"]),
            1e-9,
        );
    }
}

#[test]
fn polar_rays_and_inapplicable() {
    let w = Workdir::new();
    let mono = w.file("m.json", r#"{"kind":"monotone","m":3}"#);
    let (code, report) = run(&["polar", "--wedge", s(&mono)], &w.path("r.json"));
    assert_eq!(code, 0);
    assert_eq!(report["results"]["polar_rays"].as_array().unwrap().len(), 2);
    assert!(report["results"]["max_inner_with_generators"].as_f64().unwrap() <= 1e-8);

    let ray = w.file(
        "ray.json",
        r#"{"kind":"generators","ambient_dim":2,"generators":[[1,0]]}"#,
    );
    assert_eq!(exit_code(&["polar", "--wedge", s(&ray)]), 3);
}

#[test]
fn check_isotone_exit_codes() {
    let w = Workdir::new();
    let mono = w.file("m.json", r#"{"kind":"monotone","m":6}"#);
    let (code, report) = run(&["check-isotone", "--wedge", s(&mono)], &w.path("r.json"));
    assert_eq!(code, 0);
    assert_eq!(report["results"]["report"]["verdict"], "isotone");

    let obtuse = w.file("o.json", OBTUSE);
    let (code, report) = run(&["check-isotone", "--wedge", s(&obtuse)], &w.path("r.json"));
    assert_eq!(code, 1);
    assert_eq!(report["results"]["report"]["verdict"], "not_isotone");
    let inner = report["results"]["report"]["worst_pair"]["inner"].as_f64().unwrap();
    assert!((inner - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-9);

    let ray = w.file(
        "ray.json",
        r#"{"kind":"generators","ambient_dim":2,"generators":[[1,0]]}"#,
    );
    let (code, report) = run(&["check-isotone", "--wedge", s(&ray)], &w.path("r.json"));
    assert_eq!(code, 3);
    assert_eq!(report["results"]["report"]["verdict"], "inapplicable");

    // the ray is isotone inside its own span
    assert_eq!(exit_code(&["check-isotone", "--wedge", s(&ray), "--intrinsic"]), 0);
}

#[test]
fn sample_examples() {
    let w = Workdir::new();
    let mono = w.file("m.json", r#"{"kind":"monotone","m":5}"#);
    let (code, report) = run(
        &["sample", "--wedge", s(&mono), "--pairs", "10000", "--seed", "42"],
        &w.path("r.json"),
    );
    assert_eq!(code, 0);
    assert_eq!(report["results"]["violation_count"], 0);
    assert_eq!(report["seed"], 42);

    let orthant = w.file("o.json", ORTHANT);
    assert_eq!(exit_code(&["sample", "--wedge", s(&orthant), "--pairs", "1000"]), 0);

    let obtuse = w.file("b.json", OBTUSE);
    let (code, report) = run(
        &["sample", "--wedge", s(&obtuse), "--pairs", "100000", "--seed", "7"],
        &w.path("r.json"),
    );
    assert_eq!(code, 1);
    let violations = report["results"]["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    assert_eq!(
        violations.len() as u64,
        report["results"]["violation_count"].as_u64().unwrap()
    );
    assert!(violations[0]["pair"]["u"].is_array());
}

#[test]
fn pava_command() {
    let w = Workdir::new();
    let points = w.file("p.txt", "1 2 3\n5\n4 1 3 2\n");
    let (code, report) = run(&["pava", "--points", s(&points)], &w.path("r.json"));
    assert_eq!(code, 0);
    let pts = report["results"]["points"].as_array().unwrap();
    assert_close(&coords(&pts[0]["point"]), &[2.0, 2.0, 2.0], 1e-12);
    assert_close(&coords(&pts[1]["point"]), &[5.0], 1e-12);
    assert_close(&coords(&pts[2]["point"]), &[4.0, 2.0, 2.0, 2.0], 1e-12);
}

#[test]
fn reports_are_deterministic() {
    let w = Workdir::new();
    let obtuse = w.file("o.json", OBTUSE);
    let args = ["sample", "--wedge", s(&obtuse), "--pairs", "5000", "--seed", "3"];
    let (_, mut a) = run(&args, &w.path("a.json"));
    let (_, mut b) = run(&args, &w.path("b.json"));
    for r in [&mut a, &mut b] {
        r.as_object_mut().unwrap().remove("wall_time_ms");
    }
    assert_eq!(a, b);
    assert_eq!(a["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn methods_lists_registry() {
    let w = Workdir::new();
    let (code, report) = run(&["methods"], &w.path("r.json"));
    assert_eq!(code, 0);
    let names: Vec<&str> = report["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for n in ["decompose", "direct", "nnls", "pava"] {
        assert!(names.contains(&n));
    }
}
