//! The binary end to end.

use std::process::{Command, Output};

use trimetric::metrics::s_value;
use trimetric::{PointB, SolveOpts};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimetric")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .parse()
        .unwrap()
}

#[test]
fn distances() {
    let s = stdout(&["dist", "--metric", "s", "--x", "0.6,0", "--y", "-0.2,0"]);
    assert_eq!(s.lines().next(), Some("0.500000000000"));
    assert!(s.contains("argmin_z=1.000000000000,0.000000000000"));
    assert!(field(&s, "residual") < 1e-12);
    assert_eq!(stdout(&["dist", "--metric", "rho", "--x", "0,0", "--y", "0.5,0"]), "1.098612288668\n");
    assert_eq!(stdout(&["dist", "--metric", "jstar", "--x", "0,0", "--y", "0.5,0"]), "0.333333333333\n");
    assert_eq!(stdout(&["dist", "--metric", "j", "--x", "0,0,0", "--y", "0,0.5,0"]), "0.693147180560\n");
}

#[test]
fn json_distance() {
    let s = stdout(&["dist", "--metric", "s", "--x", "0.3,0.4", "--y", "0.3,-0.4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert!((v["value"].as_f64().unwrap() - 0.4 / 0.65f64.sqrt()).abs() < 1e-12);
    assert_eq!(v["converged"], true);
}

#[test]
fn exit_codes() {
    let domain = run(&["dist", "--metric", "s", "--x", "0.9,0.9", "--y", "0,0"]);
    assert_eq!(domain.status.code(), Some(2));
    let msg = String::from_utf8(domain.stderr).unwrap();
    assert_eq!(msg.lines().count(), 1, "{msg}");
    assert_eq!(run(&["dist", "--metric", "q", "--x", "0,0", "--y", "0,0"]).status.code(), Some(2));
    assert_eq!(run(&["dist", "--metric", "s", "--x", "0,a", "--y", "0,0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["revolve", "--x", "0,0,0", "--t", "0.5", "--m", "2"]).status.code(), Some(2));
    assert_eq!(run(&["trace", "--metric", "s", "--x", "0.6,0", "--t", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["trace", "--preset", "fig9"]).status.code(), Some(2));
    assert_eq!(run(&["trace", "--preset", "fig3", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--pair", "s-euclid", "--x", "0.6,0", "--t", "0.5", "--format", "obj"]).status.code(), Some(2));
    let empty = run(&["trace", "--metric", "s", "--x", "0.35,-0.2", "--t", "0.4", "--n", "6", "--eps", "1e-300"]);
    assert_eq!(empty.status.code(), Some(3));
}

#[test]
fn hyperbolic_trace_as_csv() {
    let s = stdout(&["trace", "--metric", "rho", "--x", "0.5,0", "--t", "1.0986", "--format", "csv", "--n", "50"]);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("re,im,residual"));
    let mut count = 0;
    for l in lines {
        let v: Vec<f64> = l.split(',').map(|c| c.parse().unwrap()).collect();
        let r = ((v[0] - 0.4).powi(2) + v[1].powi(2)).sqrt();
        assert!((r - 0.4).abs() < 1e-4, "{l}");
        count += 1;
    }
    assert_eq!(count, 50);
    assert!(!s.contains('\r'));
}

#[test]
fn jstar_trace_svg() {
    let s = stdout(&["trace", "--metric", "jstar", "--x", "0.3,0.3", "--t", "0.3", "--n", "200"]);
    assert!(s.starts_with("<svg"));
    assert!(s.contains("viewBox=\"-1.05 -1.05 2.1 2.1\""));
    assert!(s.contains("<polygon"));
    assert!(s.contains("r=\"1.000000\""));
}

#[test]
fn nested_s_circles_and_presets() {
    let s = stdout(&["trace", "--metric", "s", "--x", "0.6,0", "--radii", "0.1,0.3,0.5,0.7", "--n", "400"]);
    assert_eq!(s.matches("<polygon").count(), 4);
    for preset in ["fig1", "fig2", "fig3", "fig4", "fig5"] {
        let s = stdout(&["trace", "--preset", preset, "--n", "400"]);
        assert!(s.contains("<polygon"), "{preset}");
    }
    let fig2 = stdout(&["trace", "--preset", "fig2", "--n", "400"]);
    assert!(fig2.matches("<line").count() >= 4);
}

#[test]
fn outputs_are_reproducible() {
    for args in [
        &["trace", "--metric", "s", "--x", "0.6,0", "--t", "0.5", "--n", "300", "--format", "csv"][..],
        &["trace", "--preset", "fig1", "--n", "300"][..],
        &["revolve", "--x", "0.6,0,0", "--t", "0.5", "--m", "8", "--n", "100"][..],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn revolved_meshes() {
    let obj = stdout(&["revolve", "--x", "0,0,0", "--t", "0.5", "--m", "16", "--n", "64"]);
    for l in obj.lines().filter(|l| l.starts_with("v ")) {
        let v: Vec<f64> = l[2..].split(' ').map(|c| c.parse().unwrap()).collect();
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        assert!((n - 2.0 / 3.0).abs() < 1e-12);
    }

    let o = SolveOpts::default();
    for xs in ["0.6,0,0", "0.2,-0.3,0.4"] {
        let obj = stdout(&["revolve", "--x", xs, "--t", "0.5", "--m", "32", "--n", "200"]);
        let x = PointB::new(xs.split(',').map(|c| c.parse().unwrap()).collect()).unwrap();
        let verts: Vec<PointB> = obj
            .lines()
            .filter(|l| l.starts_with("v "))
            .map(|l| PointB::new(l[2..].split(' ').map(|c| c.parse().unwrap()).collect()).unwrap())
            .collect();
        assert!(verts.len() > 32);
        for y in &verts {
            assert!((s_value(&x, y, &o).unwrap() - 0.5).abs() <= 1e-4);
        }
        let n = verts.len();
        for l in obj.lines().filter(|l| l.starts_with("f ")) {
            for i in l[2..].split(' ').map(|c| c.parse::<usize>().unwrap()) {
                assert!(i >= 1 && i <= n);
            }
        }
    }
}

#[test]
fn bound_records() {
    let s = stdout(&["bounds", "--pair", "s-euclid", "--x", "0.6,0", "--t", "0.5"]);
    assert!((field(&s, "inner") - 0.266667).abs() < 1e-6);
    assert!((field(&s, "outer") - 0.8).abs() < 1e-12);
    assert!(s.contains("kind=iff"));
    assert_eq!(s.matches("witness=").count(), 2);

    let s = stdout(&["bounds", "--pair", "s-rho-conjecture", "--x", "0,0", "--t", "0.5"]);
    assert!((field(&s, "inner") - 1.609438).abs() < 1e-6);
    assert!((field(&s, "outer") - 1.609438).abs() < 1e-6);
    assert!(s.contains("kind=conjectured"));

    let s = stdout(&["bounds", "--pair", "s-jstar", "--t", "0.5", "--convex"]);
    assert!((field(&s, "inner") - 0.353553).abs() < 1e-6);
    assert!((field(&s, "outer") - 0.5).abs() < 1e-12);

    let s = stdout(&["bounds", "--pair", "j-rho", "--x", "0,0", "--rho", &3f64.ln().to_string(), "--given", "second"]);
    assert!((field(&s, "outer") - 2f64.ln()).abs() < 1e-12);

    for pair in ["jstar-euclid", "s-j", "jstar-rho", "s-rho-necessary", "s-rho-sufficient"] {
        stdout(&["bounds", "--pair", pair, "--x", "0.3,0.1", "--t", "0.4"]);
    }
    assert_eq!(run(&["bounds", "--pair", "s-euclid", "--t", "0.5", "--given", "second"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--pair", "nope", "--t", "0.5"]).status.code(), Some(2));
}

#[test]
fn verification_runs() {
    let args = ["verify", "suite", "--grid", "3", "--samples", "150", "--pairs", "20"];
    let ok = run(&args);
    assert_eq!(ok.status.code(), Some(0));
    let text = String::from_utf8(ok.stdout).unwrap();
    assert!(text.starts_with("# inclusion suite seed=42"));
    assert!(text.lines().nth(1).unwrap().contains("tol=1.00000000000e-7"));
    assert!(text.contains("# 31 claims, 0 failed"));

    let mut inflated = args.to_vec();
    inflated.extend(["--inflate", "0.01"]);
    let bad = run(&inflated);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8(bad.stdout).unwrap().contains("verdict=FAIL"));

    let conj = run(&["verify", "conjecture", "--grid", "5", "--trace-n", "200"]);
    assert_eq!(conj.status.code(), Some(0));
    assert!(String::from_utf8(conj.stdout).unwrap().contains("verdict=pass"));
    assert_eq!(run(&["verify", "conjecture", "--grid", "3"]).status.code(), Some(2));
}

#[test]
fn writes_to_a_file() {
    let dir = std::env::temp_dir().join(format!("trimetric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("circle.csv");
    let o = run(&[
        "trace", "--metric", "s", "--x", "0.6,0", "--t", "0.5", "--n", "100", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("re,im,residual\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
