use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use garc_core::io::load_module;
use garc_core::{iso_test, minimal_resolution};
use serde_json::Value;
use tempfile::TempDir;

fn garc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garc")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Fixture {
        Fixture { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self) -> &Path {
        self.dir.path()
    }

    fn run(&self, args: &[&str]) -> Output {
        garc(self.path(), args)
    }

    fn algebra(&self, name: &str, builtin: &str, param: &str) -> String {
        let file = format!("{name}.json");
        let o = self.run(&["make", "algebra", builtin, "--param", param, "--out", &file]);
        assert_eq!(code(&o), 0, "{o:?}");
        file
    }

    fn module(&self, name: &str, algebra: &str, kind: &str) -> String {
        let file = format!("{name}.json");
        let o = self.run(&["make", "module", "--algebra", algebra, kind, "--out", &file]);
        assert_eq!(code(&o), 0, "{o:?}");
        file
    }

    fn stalk(&self, name: &str, module: &str, degree: i64) -> String {
        let file = format!("{name}.json");
        let deg = degree.to_string();
        let o = self.run(&["make", "stalk", module, "--degree", &deg, "--out", &file]);
        assert_eq!(code(&o), 0, "{o:?}");
        file
    }
}

fn ext_rows(v: &Value) -> Vec<(u64, u64)> {
    v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["module_path"].as_u64().unwrap(), r["derived_path"].as_u64().unwrap()))
        .collect()
}

#[test]
fn ext_table_residue_field_of_dual_numbers() {
    let f = Fixture::new();
    let t = f.algebra("t", "truncated_poly", "2");
    let k = f.module("k", &t, "simple:0");
    let o = f.run(&["--out", "ext.json", "ext-table", &k, &k, "-W", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(ext_rows(&report(f.path(), "ext.json")), vec![(1, 1); 5]);
}

#[test]
fn ext_table_projective_source() {
    let f = Fixture::new();
    let a = f.algebra("p", "path_An", "3");
    let p = f.module("p1", &a, "projective:1");
    let s = f.module("s0", &a, "simple:0");
    let o = f.run(&["--out", "ext.json", "ext-table", &p, &s, "-W", "4"]);
    assert_eq!(code(&o), 0);
    let rows = ext_rows(&report(f.path(), "ext.json"));
    assert!(rows[1..].iter().all(|&(a, b)| a == 0 && b == 0), "{rows:?}");
}

#[test]
fn ext_table_schulz_module() {
    let f = Fixture::new();
    let a = f.algebra("s", "schulz", "2");
    let m = f.module("m", &a, "schulz:1");
    let o = f.run(&["--out", "ext.json", "ext-table", &m, &m, "-W", "10"]);
    assert_eq!(code(&o), 0);
    let rows = ext_rows(&report(f.path(), "ext.json"));
    assert_eq!(rows[0], (2, 2));
    assert_eq!(rows[1], (1, 1));
    assert!(rows[2..].iter().all(|&r| r == (0, 0)), "{rows:?}");
}

fn classification(v: &Value) -> String {
    v["result"]["classification"].as_str().unwrap().to_string()
}

#[test]
fn garc_check_exit_codes() {
    let f = Fixture::new();
    let path = f.algebra("p", "path_An", "3");
    let proj = f.module("proj", &path, "projective:0");
    let c = f.stalk("proj_c", &proj, 0);
    let o = f.run(&["--out", "a.json", "garc-check", &c, "-W", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(classification(&report(f.path(), "a.json")), "consistent");

    let t = f.algebra("t", "truncated_poly", "2");
    let k = f.module("k", &t, "simple:0");
    let kc = f.stalk("k_c", &k, 0);
    let o = f.run(&["--out", "b.json", "garc-check", &kc, "-W", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(classification(&report(f.path(), "b.json")), "hypotheses_fail");

    let s = f.algebra("s", "schulz", "2");
    let m = f.module("m", &s, "schulz:1");
    let mc = f.stalk("m_c", &m, 0);
    let o = f.run(&["--out", "c.json", "garc-check", &mc, "-W", "12", "-t", "2"]);
    assert_eq!(code(&o), 2);
    let rep = report(f.path(), "c.json");
    assert_eq!(classification(&rep), "candidate_counterexample");
    assert_eq!(rep["exit_code"], 2);
    assert_eq!(rep["result"]["window"], 12);
    assert_eq!(rep["result"]["threshold"], 2);
}

#[test]
fn schulz_demo_reports() {
    let f = Fixture::new();
    let o = f.run(&["--out", "q2.json", "schulz-demo", "-c", "2", "--start-degree", "2"]);
    assert_eq!(code(&o), 2);
    let rep = report(f.path(), "q2.json");
    assert!(!rep["result"]["scan"]["hits"].as_array().unwrap().is_empty());
    assert!(rep["result"]["scan"]["frobenius"].is_object());

    let o = f.run(&["--out", "q1.json", "schulz-demo", "-c", "1"]);
    assert_eq!(code(&o), 0);
    let rep = report(f.path(), "q1.json");
    assert!(rep["result"]["scan"]["hits"].as_array().unwrap().is_empty());
    assert!(stdout(&o).contains("no parameter in the sweep"));

    let o = f.run(&["schulz-demo", "--field", "F5", "-c", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("root of unity of order 4"));
}

#[test]
fn resolve_omega_artifacts() {
    let f = Fixture::new();
    let s = f.algebra("s", "schulz", "2");
    let m = f.module("m", &s, "schulz:1");
    let c0 = f.stalk("c0", &m, 0);
    let c3 = f.stalk("c3", &m, 3);
    let o = f.run(&["--out", "r0.json", "resolve-omega", &c0, "-B", "4", "--dir", "art0"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = f.run(&["--out", "r3.json", "resolve-omega", &c3, "-B", "4", "--dir", "art3"]);
    assert_eq!(code(&o), 0);
    for name in ["resolution.json", "omega.json", "q_complex.json"] {
        assert!(f.path().join("art0").join(name).exists());
    }

    let omega0 = load_module(&f.path().join("art0/omega.json"), None).unwrap();
    let omega3 = load_module(&f.path().join("art3/omega.json"), None).unwrap();
    let input = load_module(&f.path().join(&m), None).unwrap();
    let syz = minimal_resolution(&input, 2).unwrap().syzygies[1].clone();
    let syz = syz.over(omega0.algebra()).unwrap();
    assert!(iso_test(&omega0, &syz, 0, 16).unwrap().is_yes());
    assert_eq!(std::fs::read(f.path().join("art0/omega.json")).unwrap(), std::fs::read(f.path().join("art3/omega.json")).unwrap());
    assert_eq!(omega3.dim(), omega0.dim());
    assert_eq!(report(f.path(), "r0.json")["result"]["omega"]["placement"], 0);
    assert_eq!(report(f.path(), "r3.json")["result"]["omega"]["placement"], 3);

    let path = f.algebra("p", "path_An", "3");
    let proj = f.module("proj", &path, "projective:2");
    let pc = f.stalk("pc", &proj, 0);
    let o = f.run(&["--out", "rp.json", "resolve-omega", &pc, "-B", "3", "--dir", "artp"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(f.path(), "rp.json")["result"]["omega"]["omega_dim"], 0);
}

#[test]
fn usage_and_input_errors() {
    let f = Fixture::new();
    assert_eq!(code(&f.run(&["no-such-command"])), 64);
    assert_eq!(code(&f.run(&["--help"])), 0);
    assert_eq!(code(&f.run(&["garc-check"])), 64);

    std::fs::write(f.path().join("bad.json"), r#"{"dim": 1}"#).unwrap();
    assert_eq!(code(&f.run(&["ext-table", "bad.json", "bad.json"])), 65);
    assert_eq!(code(&f.run(&["ext-table", "missing.json", "missing.json"])), 65);

    let s = f.algebra("s", "schulz", "2");
    let m = f.module("m", &s, "schulz:1");
    let c = f.stalk("c", &m, 0);
    let o = f.run(&["resolve-omega", &c, "-B", "1", "--dir", "art"]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--bound 2"));
    assert_eq!(code(&f.run(&["perp-check", &c, "-W", "1", "-t", "3"])), 64);

    let exact = r#"{"algebra": {"builtin": "truncated_poly", "field": {"kind": "Q"}, "param": "2"},
        "low": 0, "high": 0, "terms": [{"dim": 0, "action": [[], []]}], "differentials": []}"#;
    std::fs::write(f.path().join("exact.json"), exact).unwrap();
    let o = f.run(&["resolve-omega", "exact.json", "-B", "3"]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exact, hence perfect"));
}

#[test]
fn alg_validate_flags_a_broken_product() {
    let f = Fixture::new();
    let o = f.run(&["make", "algebra", "schulz", "--param", "2", "--explicit", "--out", "s.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&f.run(&["alg-validate", "s.json"])), 0);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(f.path().join("s.json")).unwrap()).unwrap();
    v["structure_constants"].as_array_mut().unwrap().push(serde_json::json!([1, 1, 2, "1"]));
    std::fs::write(f.path().join("broken.json"), v.to_string()).unwrap();
    let o = f.run(&["--out", "diag.json", "alg-validate", "broken.json"]);
    assert_eq!(code(&o), 65);
    let rep = report(f.path(), "diag.json");
    assert_eq!(rep["result"]["valid"], false);
    let diags = rep["result"]["diagnostics"].as_array().unwrap();
    assert!(diags.iter().any(|d| d.as_str().unwrap().contains("associativity")), "{diags:?}");
}

fn without_timestamp(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn reports_are_reproducible() {
    let f = Fixture::new();
    let s = f.algebra("s", "schulz", "2");
    let m = f.module("m", &s, "schulz:-1/2");
    let c = f.stalk("c", &m, 1);
    let mut seen: Vec<Value> = Vec::new();
    for _ in 0..2 {
        let o = f.run(&["--seed", "7", "--out", "g.json", "garc-check", &c, "-W", "8", "-t", "2"]);
        assert_eq!(code(&o), 2);
        seen.push(without_timestamp(report(f.path(), "g.json")));
    }
    assert_eq!(seen[0], seen[1]);
    assert_eq!(seen[0]["invocation"]["seed"], 7);
    let args: Vec<PathBuf> = seen[0]["invocation"]["args"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| PathBuf::from(a.as_str().unwrap()))
        .collect();
    assert!(args.contains(&PathBuf::from("garc-check")));
}
