use std::path::Path;
use std::process::{Command, Output};

fn hodgekp(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hodgekp"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("HODGEKP_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn list_checks_names_every_check() {
    let o = hodgekp(&["list-checks", "--format", "json"], None);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for n in [
        "lemma-grunsky",
        "lemma-laplace",
        "identification",
        "lemma-factorization",
        "lemma-changevars",
        "theorem-rl",
        "theorem-hodge",
        "theorem-theta",
        "kp-kw",
        "kp-bgw",
        "kp-hodge",
        "kdv-reduction",
        "conjugation",
    ] {
        assert!(names.contains(&n), "{n}");
    }
}

#[test]
fn grunsky_passes_at_one_point() {
    let o = hodgekp(&["verify", "lemma-grunsky", "--q", "1", "--p", "3", "--s", "2", "--weight", "8"], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn theorem_rl_both_signs_of_s() {
    for s in ["1", "-1"] {
        let o = hodgekp(&["verify", "theorem-rl", "--q", "-1", "--p", "2", "--s", s, "--weight", "9"], None);
        assert_eq!(code(&o), 0, "s={s}: {}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn perturbed_control_reports_pass() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = hodgekp(&["verify", "identification", "--perturbed", "--weight", "6", "--out", out], None);
    assert_eq!(code(&o), 0);
    let r = read_json(&dir.path().join("identification.json"));
    assert_eq!(r["status"], "pass");
    assert_eq!(r["details"]["negativeControl"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&hodgekp(&["verify", "no-such-check"], None)), 2);
    assert_eq!(code(&hodgekp(&["verify", "theorem-rl", "--q", "1", "--p", "3"], None)), 2);
    assert_eq!(code(&hodgekp(&["verify", "theorem-rl", "--q", "1", "--p", "3", "--s", "3"], None)), 2);
    assert_eq!(code(&hodgekp(&["verify", "theorem-rl", "--q", "1", "--p", "-1", "--s", "0"], None)), 2);
    let short = ["verify", "lemma-laplace", "--q", "1", "--p", "3", "--s", "2", "--order", "3"];
    assert_eq!(code(&hodgekp(&short, None)), 2);
    assert_eq!(code(&hodgekp(&["verify", "kp-kw"], Some("zero"))), 2);
    assert_eq!(code(&hodgekp(&["verify", "kp-kw", "--hbar", "x/y"], None)), 2);
    assert_eq!(code(&hodgekp(&["tau", "nonsense", "--weight", "3", "--out", "/dev/null"], None)), 2);
    assert_eq!(code(&hodgekp(&["verify"], None)), 2);
}

#[test]
fn failing_check_exits_one() {
    // at weight 5 the Hirota residual range is too small to expose any mutant
    let o = hodgekp(&["verify", "kp-kw", "--weight", "5"], None);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn reports_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = |d: &tempfile::TempDir| {
        vec![
            "verify".to_string(),
            "conjugation".into(),
            "--weight".into(),
            "5".into(),
            "--format".into(),
            "json".into(),
            "--out".into(),
            d.path().to_str().unwrap().to_string(),
        ]
    };
    let run = |d: &tempfile::TempDir, t: &str| {
        let v = args(d);
        let refs: Vec<&str> = v.iter().map(String::as_str).collect();
        hodgekp(&refs, Some(t))
    };
    assert_eq!(code(&run(&a, "1")), 0);
    assert_eq!(code(&run(&b, "3")), 0);
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 5 + 2);
    for n in names {
        if n == "timings.json" {
            let t = read_json(&a.path().join(&n));
            assert!(t["perCheckMs"]["conjugation"].is_u64());
            continue;
        }
        let x = std::fs::read(a.path().join(&n)).unwrap();
        let y = std::fs::read(b.path().join(&n)).unwrap();
        assert_eq!(x, y, "{n:?}");
    }
    let summary = read_json(&a.path().join("summary.json"));
    assert_eq!(summary["passed"], 5);
}

#[test]
fn tau_dump_has_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kw.json");
    let o = hodgekp(&["tau", "kw", "--weight", "6", "--out", path.to_str().unwrap()], None);
    assert_eq!(code(&o), 0);
    let v = read_json(&path);
    assert_eq!(v["provenance"]["kind"], "KW");
    assert_eq!(v["provenance"]["W"], 6);
    let body = v["body"].as_array().unwrap();
    let t13 = body.iter().find(|t| t["monomial"] == serde_json::json!({ "t1": 3 })).unwrap();
    assert_eq!(t13["coeff"]["h^1"], "1/6");

    let path = dir.path().join("theta.json");
    let args = ["tau", "tau-theta-qp", "--q", "-1", "--p", "2", "--s", "1", "--weight", "6", "--out", path.to_str().unwrap()];
    assert_eq!(code(&hodgekp(&args, None)), 0);
    let v = read_json(&path);
    assert_eq!(v["provenance"]["q"], "-1");
    assert_eq!(code(&hodgekp(&["tau", "hodge-z", "--weight", "6", "--out", path.to_str().unwrap()], None)), 2);
}
