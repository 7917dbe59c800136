use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasinv")).args(args).output().expect("binary runs")
}

fn json_of(args: &[&str]) -> (Value, String) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    (serde_json::from_str(&text).unwrap(), text)
}

#[test]
fn a2_poincare_report() {
    let (v, _) = json_of(&["poincare", "--system", "a2", "--m", "2", "--max-degree", "18"]);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["schema"], 1);
    let p = &v["payload"];
    assert_eq!(p["numerator"], json!({"0": "1", "4": "1", "5": "1", "6": "1", "7": "1", "11": "1"}));
    assert_eq!(p["palindromic"], true);
    assert_eq!(p["matches_closed_form"], true);
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["poincare", "--system", "c2", "--m", "1", "--l", "1"][..],
        &["gram", "--system", "a2", "--m", "1", "--max-degree", "3"],
        &["quasi-dim", "--system", "a2", "--m", "1", "--degree", "3"],
    ] {
        let (v, text) = json_of(args);
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    }
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    let args = ["hilbert", "--system", "c2", "--m", "2", "--l", "1"];
    let (v, _) = json_of(&args);
    let text = String::from_utf8(run(&args).stdout).unwrap();
    let dims = v["payload"]["dims"].as_array().unwrap();
    for (i, d) in dims.iter().enumerate() {
        assert!(text.contains(&format!("payload.dims.{i} = {}\n", d.as_str().unwrap())));
    }
    assert!(text.contains("payload.total = 8\n"));
    assert!(text.contains("status = ok\n"));
}

#[test]
fn invalid_parameters_exit_with_two() {
    for args in [
        &["poincare", "--system", "cn", "--n", "2", "--m", "0", "--l", "1"][..],
        &["poincare", "--system", "a2", "--m", "0"],
        &["quasi-dim", "--system", "b7"],
        &["hilbert", "--max-degree", "0"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(!err.trim().is_empty(), "{args:?}");
    }
}

#[test]
fn short_bounds_fail_the_stabilization_check() {
    for args in [
        &["poincare", "--system", "c2", "--m", "2", "--l", "1", "--max-degree", "6"][..],
        &["hilbert", "--system", "a2", "--m", "1", "--max-degree", "2"],
    ] {
        let mut all = args.to_vec();
        all.extend(["--format", "json"]);
        let out = run(&all);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["status"], "check-failed");
        assert_eq!(v["payload"]["stabilized"], false);
    }
}

#[test]
fn bad_thread_count_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_quasinv"))
        .args(["check-config"])
        .env("QUASINV_THREADS", "none")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn truncated_profiles_still_match() {
    let (v, _) = json_of(&["harmonics", "--system", "a2", "--m", "1", "--max-degree", "3"]);
    assert_eq!(v["payload"]["matches_closed_form"], true);
    assert_eq!(v["payload"]["total"], "1");
}

#[test]
fn check_config_reports_identities() {
    let (v, _) = json_of(&["check-config", "--system", "cn", "--n", "2", "--m", "4", "--l", "1"]);
    assert_eq!(v["status"], "ok");
    let roots = v["payload"]["roots"].as_array().unwrap();
    assert!(roots.iter().all(|r| r["identity"] == true));
}

#[test]
fn harmonic_basis_at_a_degree() {
    let (v, _) = json_of(&["harmonics", "--system", "a2", "--m", "2", "--degree", "4"]);
    assert_eq!(v["payload"]["dim"], "1");
    assert_eq!(v["payload"]["quasi_invariant"], true);
}

#[test]
fn explore_stable_has_no_verdict() {
    let (v, _) = json_of(&["explore-stable", "--m", "1", "--max-degree", "6"]);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["a3"]["dims"].as_array().unwrap().len(), 7);
    assert_eq!(run(&["explore-stable", "--max-degree", "13"]).status.code(), Some(2));
}
