use std::process::{Command, Output};

fn sphpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = sphpoly(&full);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn spectrum_n5_summary() {
    let v = json(&["spectrum", "--n", "5"]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "spectrum");
    let p = &v["payload"];
    assert_eq!(p["phi"], 3);
    assert_eq!(p["critical_points"], "7");
    assert_eq!(p["psi"], 2);
    assert_eq!(p["levels"].as_array().unwrap().len(), 3);
}

#[test]
fn spectrum_n9_shared_level() {
    let v = json(&["spectrum", "--n", "9"]);
    let levels = v["payload"]["levels"].as_array().unwrap();
    let shared = levels
        .iter()
        .find(|l| l["value"]["num"] == 2 && l["value"]["den"] == 3)
        .expect("level at 2/3");
    let strata = shared["strata"].as_array().unwrap();
    let pairs: Vec<(u64, u64, u64)> = strata
        .iter()
        .map(|s| {
            (
                s["alpha"].as_u64().unwrap(),
                s["beta"].as_u64().unwrap(),
                s["index"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(pairs, vec![(3, 2, 4), (9, 6, 5)]);
}

#[test]
fn even_order_is_rejected() {
    let out = sphpoly(&["spectrum", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(sphpoly(&["spectrum"]).status.code(), Some(2));
    assert_eq!(sphpoly(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn chi_inside_interval() {
    let v = json(&["chi", "--n", "5", "--a", "1/2"]);
    let p = &v["payload"];
    assert_eq!(p["chi"], "-8");
    assert_eq!(p["position"]["kind"], "interval");
    assert_eq!(p["position"]["i"], 1);
    assert_eq!(p["seed"], 0);
}

#[test]
fn chi_at_critical_value() {
    let v = json(&["chi", "--n", "5", "--a", "2/3"]);
    let p = &v["payload"];
    assert_eq!(p["position"]["kind"], "at-critical");
    // Halfway between Ω_1 = −8 and Ω_2 = 2.
    assert_eq!(p["chi"], "-3");
}

#[test]
fn chi_with_snapped_decimal() {
    let v = json(&["chi", "--n", "7", "--a", "0.5", "--snap-den", "1000"]);
    assert_eq!(v["payload"]["chi"], "32");
    assert_eq!(v["payload"]["a"]["den"], 2);
}

#[test]
fn snapping_failure_exits_3() {
    let out = sphpoly(&[
        "chi",
        "--n",
        "7",
        "--a",
        "0.123456789123",
        "--snap-den",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn angle_out_of_range_exits_2() {
    for a in ["0", "1", "3/2", "-1/3", "0.5"] {
        let out = sphpoly(&["chi", "--n", "5", "--a", a]);
        assert_eq!(out.status.code(), Some(2), "angle {a}");
    }
}

fn omega_values(n: &str) -> Vec<i64> {
    let v = json(&["omega", "--n", n]);
    let p = &v["payload"];
    assert_eq!(p["recurrences_passed"], true);
    assert_eq!(p["closed_forms_passed"], true);
    p["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["omega"].as_str().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn omega_tables() {
    assert_eq!(omega_values("3"), vec![2]);
    assert_eq!(omega_values("5"), vec![-6, -8, 2]);
    assert_eq!(omega_values("7"), vec![20, 18, 32, 30, -12, 2]);
}

#[test]
fn oracle_agrees_at_n9() {
    let v = json(&["oracle", "--n", "9"]);
    let p = &v["payload"];
    assert_eq!(p["all_matched"], true);
    assert_eq!(p["configs"], 187);
    assert_eq!(p["critical_points"], "187");
}

#[test]
fn oracle_rejects_large_order() {
    assert_eq!(sphpoly(&["oracle", "--n", "27"]).status.code(), Some(2));
}

#[test]
fn verify_small_run_passes() {
    let out = sphpoly(&["verify", "--n-max", "9", "--oracle-max", "9"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn verify_reports_injected_fault() {
    let out = sphpoly(&[
        "--format",
        "json",
        "verify",
        "--n-max",
        "9",
        "--oracle-max",
        "9",
        "--inject-fault",
        "planted",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&str> = v["payload"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["planted"]);
}

#[test]
fn asymptotics_ends_at_n_max() {
    let v = json(&["asymptotics", "--n-max", "101"]);
    let samples = v["payload"]["samples"].as_array().unwrap();
    assert_eq!(samples.last().unwrap()["n"], 101);
    assert_eq!(samples.first().unwrap()["n"], 3);
}

#[test]
fn csv_output_has_header() {
    let out = sphpoly(&["--format", "csv", "omega", "--n", "5"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("i,"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "--jobs", "3", "oracle", "--n", "11"];
    let a = stdout(&sphpoly(&args));
    let b = stdout(&sphpoly(&[
        "--format", "json", "--jobs", "1", "oracle", "--n", "11",
    ]));
    assert_eq!(a, b);
    for cmd in [
        &["spectrum", "--n", "15"][..],
        &["chi", "--n", "15", "--a", "3/7"][..],
    ] {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(cmd);
        assert_eq!(stdout(&sphpoly(&full)), stdout(&sphpoly(&full)));
    }
}

#[test]
fn json_round_trips() {
    let v = json(&["chi", "--n", "9", "--a", "1/2"]);
    let text = serde_json::to_string(&v).unwrap();
    let back: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v, back);
    assert_eq!(v["payload"]["chi"], "-128");
}
