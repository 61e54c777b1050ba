use std::fs;
use std::time::Instant;

use serde_json::{json, Map, Value};
use thetadelta::coeffring::{Mode, QtRat};
use thetadelta::symfunc::Partition;
use thetadelta::verify::{CheckId, CheckReport, Profile, Status, Verifier, VerifyConfig};

fn params(v: Value) -> Map<String, Value> {
    v.as_object().unwrap().clone()
}

fn verifier(mode: Mode) -> Verifier {
    Verifier::new(VerifyConfig { max_degree: 7, mode, seed: 11, points: 3, cache_dir: None })
}

fn show_failures(reports: &[CheckReport]) -> Vec<String> {
    reports.iter().filter(|r| !r.passed()).map(|r| r.to_json_line()).collect()
}

#[test]
fn registry_has_fourteen_checks() {
    assert_eq!(CheckId::ALL.len(), 14);
    for id in CheckId::ALL {
        assert_eq!(id.as_str().parse::<CheckId>().unwrap(), id);
    }
    assert!(verifier(Mode::Exact).run_check("no_such_check", &Map::new()).is_err());
}

#[test]
fn documented_examples_pass_exactly() {
    let v = verifier(Mode::Exact);
    for (id, p) in [
        ("comp_delta", json!({"n": 3, "k": 1, "alpha": [2]})),
        ("delta_rise", json!({"n": 3, "k": 0})),
        ("theta_nabla", json!({"k": 1, "d": 2})),
    ] {
        let r = v.run_check(id, &params(p)).unwrap();
        assert_eq!(r.status, Status::Pass, "{}", r.to_json_line());
        assert_eq!(r.mode, Mode::Exact);
        assert!(r.seeds.len() >= 3, "exact runs are preceded by evaluated points");
        assert!(r.lhs.as_str().unwrap().starts_with("sha256:"));
    }
}

#[test]
fn evaluated_mode_uses_three_points() {
    let r = verifier(Mode::Evaluated).run_check("thm_2_1", &params(json!({"n": 4, "k": 1}))).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.mode, Mode::Evaluated);
    assert_eq!(r.seeds.len(), 3);
    assert_eq!(r.seeds, vec![11, 12, 13]);
}

#[test]
fn bad_parameters_are_rejected() {
    let v = verifier(Mode::Evaluated);
    assert!(v.run_check("comp_delta", &params(json!({"n": 3, "k": 1, "alpha": [1]}))).is_err());
    assert!(v.run_check("y_recursion", &params(json!({"a": 1}))).is_err());
    assert!(v.run_check("thm_2_1", &params(json!({"n": 2}))).is_err());
}

#[test]
fn reports_are_deterministic() {
    let p = params(json!({"k": 3, "degree": 3}));
    let mut a = verifier(Mode::Exact).run_check("tau_commutations", &p).unwrap();
    let mut b = verifier(Mode::Exact).run_check("tau_commutations", &p).unwrap();
    a.elapsed = 0.0;
    b.elapsed = 0.0;
    assert_eq!(a.to_json_line(), b.to_json_line());
    assert_eq!(a.params["seed"], json!(11));
}

#[test]
fn corrupted_cache_fails_axioms_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = VerifyConfig { max_degree: 6, mode: Mode::Exact, seed: 0, points: 3, cache_dir: Some(dir.path().into()) };
    let mu = Partition::new(vec![2, 1]).unwrap();
    let p = params(json!({"mu": [2, 1]}));
    {
        let v = Verifier::new(cfg.clone());
        assert_eq!(v.run_check("macdonald_axioms", &p).unwrap().status, Status::Pass);
    }
    let path = Verifier::new(cfg.clone()).store().path_for(&mu).unwrap();
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    // replace the coefficient of s_(1,1,1) in H~_(2,1)[X]; under X(1-q) this
    // breaks triangularity
    for term in doc["schur"].as_array_mut().unwrap() {
        if term["lambda"] == json!([1, 1, 1]) {
            term["coeff"] = serde_json::to_value(QtRat::from_int(5)).unwrap();
        }
    }
    fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let r = Verifier::new(cfg).run_check("macdonald_axioms", &p).unwrap();
    assert_eq!(r.status, Status::Fail, "{}", r.to_json_line());
    let w = r.witness.expect("a failing report carries a witness");
    assert_ne!(w.lhs, w.rhs);
    assert!(r.lhs.is_object());
}

#[test]
fn quick_suite_passes() {
    let v = verifier(Mode::Evaluated);
    let start = Instant::now();
    let reports = v.run_suite(Profile::Quick);
    let secs = start.elapsed().as_secs_f64();
    println!("quick suite: {} reports in {secs:.1}s", reports.len());
    let failures = show_failures(&reports);
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    let ids: Vec<&str> = reports.iter().map(|r| r.check_id.as_str()).collect();
    for id in CheckId::ALL {
        assert!(ids.contains(&id.as_str()), "{id} missing from the quick suite");
    }
    assert!(reports.iter().all(|r| r.mode == Mode::Evaluated && r.seeds.len() >= 3));
}
