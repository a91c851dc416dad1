use std::f64::consts::FRAC_PI_4;
use std::fs;
use std::process::{Command, Output};

fn qwlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qwlab(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn simulate_profile_has_full_window_and_unit_mass() {
    let csv = stdout(&["simulate", "--model", "one-defect", "--xi", "0.5235987755982988", "--steps", "200"]);
    assert!(csv.starts_with("n,x,mu\n"));
    let rows = rows(&csv);
    assert_eq!(rows.len(), 401);
    assert_eq!(rows[0][1], "-200");
    assert!(rows.iter().all(|r| r[0] == "200"));
    let mass: f64 = rows.iter().map(|r| num(&r[2])).sum();
    assert!((mass - 1.0).abs() < 1e-12, "{mass}");
}

#[test]
fn hadamard_model_equals_defect_at_quarter_pi() {
    let xi = FRAC_PI_4.to_string();
    let h = stdout(&["simulate", "--model", "hadamard", "--steps", "100", "--alpha", "0.6,0", "--beta", "0,0.8"]);
    let d = stdout(&["simulate", "--xi", &xi, "--steps", "100", "--alpha", "0.6,0", "--beta", "0,0.8"]);
    assert_eq!(h, d);
}

#[test]
fn odd_time_leaves_origin_empty() {
    let rows = rows(&stdout(&["simulate", "--steps", "7"]));
    let origin = rows.iter().find(|r| r[1] == "0").unwrap();
    assert_eq!(num(&origin[2]), 0.0);
}

#[test]
fn simulate_every_emits_intermediate_times() {
    let rows = rows(&stdout(&["simulate", "--steps", "4", "--every", "2"]));
    let times: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(times.len(), 3 * 9);
    assert_eq!(times[0], "0");
    assert_eq!(times[9], "2");
    assert_eq!(times[26], "4");
}

#[test]
fn limit_columns_agree_and_footer_is_total_mass() {
    let csv = stdout(&["limit", "--xi", "0.5235987755982988", "--xmax", "10", "--steps", "400"]);
    assert!(csv.starts_with("x,mu_bar_closed,mu_bar_residue,cesaro_N\n"));
    let rows = rows(&csv);
    assert_eq!(rows.len(), 22);
    for r in &rows[..21] {
        assert!((num(&r[1]) - num(&r[2])).abs() < 1e-10, "{r:?}");
    }
    let footer = rows.last().unwrap();
    assert_eq!(footer[0], "total");
    let s = (0.5235987755982988f64).sin();
    let want = 2.0 * (1.0 - 2f64.sqrt() * s) / (3.0 - 2.0 * 2f64.sqrt() * s);
    assert!((num(&footer[1]) - want).abs() < 1e-15);
}

#[test]
fn limit_vanishes_without_localization() {
    let xi = FRAC_PI_4.to_string();
    let rows = rows(&stdout(&["limit", "--xi", &xi, "--xmax", "3", "--steps", "50"]));
    assert!(rows.iter().all(|r| num(&r[1]) == 0.0 && num(&r[2]) == 0.0));
}

#[test]
fn xi_out_of_range_names_the_interval() {
    for xi in ["0", "1.6", "-0.2"] {
        let out = qwlab(&["--xi", xi, "limit"]);
        assert_eq!(out.status.code(), Some(2), "xi = {xi}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("(0, pi/2)"));
    }
}

#[test]
fn config_errors_exit_with_two() {
    for args in [
        vec!["simulate", "--alpha", "1,2,3"],
        vec!["simulate", "--alpha", "0", "--beta", "0"],
        vec!["simulate", "--steps", "0"],
        vec!["simulate", "--steps", "10", "--window", "5"],
        vec!["simulate", "--model", "custom"],
        vec!["limit", "--model", "wojcik"],
        vec!["series", "--kind", "paths-plus", "--order", "40"],
        vec!["no-such-command"],
    ] {
        assert_eq!(qwlab(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["sweep", "--count", "6", "--steps", "100"];
    let a = stdout(&args);
    let b = stdout(&args);
    let one = Command::new(env!("CARGO_BIN_EXE_qwlab"))
        .args(args)
        .env("QWLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a, b);
    assert_eq!(a.as_bytes(), one.stdout.as_slice());
    assert_eq!(rows(&a).len(), 6);
}

#[test]
fn bad_thread_count_is_a_config_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_qwlab"))
        .args(["series", "--order", "3"])
        .env("QWLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_mirrors_csv_rows_with_metadata() {
    let csv = stdout(&["cesaro", "--steps", "30", "--xmax", "2"]);
    let json = stdout(&["cesaro", "--steps", "30", "--xmax", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let meta = &doc["metadata"];
    assert_eq!(meta["N"], 30);
    assert_eq!(meta["qubit"], serde_json::json!([1.0, 0.0, 0.0, 0.0]));
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert!((meta["xi"].as_f64().unwrap() - std::f64::consts::FRAC_PI_6).abs() < 1e-15);
    let json_rows = doc["rows"].as_array().unwrap();
    for (row, obj) in rows(&csv).iter().zip(json_rows) {
        assert_eq!(obj["x"].as_i64().unwrap(), row[0].parse::<i64>().unwrap());
        assert_eq!(obj["cesaro_N"].as_f64().unwrap(), num(&row[1]));
    }
}

#[test]
fn series_prints_exact_rstar_coefficients() {
    let rows = rows(&stdout(&["series", "--order", "7"]));
    let q: Vec<String> = rows.iter().map(|r| format!("{}/{}", r[1], r[2])).collect();
    assert_eq!(q[1], "-1/1");
    assert_eq!(q[3], "1/2");
    assert_eq!(q[7], "-1/8");
}

#[test]
fn enumerated_paths_match_the_closed_series() {
    let a = stdout(&["series", "--kind", "paths-minus", "--order", "12"]);
    let b = stdout(&["series", "--kind", "first-return-minus", "--order", "12"]);
    assert_eq!(rows(&a), rows(&b));
}

#[test]
fn return_probability_tends_to_its_limit() {
    let rows = rows(&stdout(&["return-prob", "--steps", "400"]));
    assert_eq!(rows.len(), 401);
    assert!((num(&rows[0][3]) - 1.0).abs() < 1e-12);
    let last = rows.last().unwrap();
    assert!((num(&last[1]) + num(&last[2]) - num(&last[3])).abs() < 1e-15);
    assert!((num(&last[3]) / num(&last[4]) - 1.0).abs() < 0.05);
}

#[test]
fn stationary_probability_sums_to_one() {
    let rows = rows(&stdout(&["stationary", "--xmax", "200"]));
    let total: f64 = rows.iter().map(|r| num(&r[2])).sum();
    assert!((total - 1.0).abs() < 1e-12, "{total}");
}

#[test]
fn out_flag_writes_file_and_custom_coins_load() {
    let dir = tempfile::tempdir().unwrap();
    let coins = dir.path().join("coins.json");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (c, s) = (0.3f64.cos(), 0.3f64.sin());
    fs::write(
        &coins,
        format!(r#"{{"sites": [{{"x": 0, "a": [{c}, 0], "b": [{s}, 0], "c": [{s}, 0], "d": [{}, 0]}}],
              "fallback": {{"a": [{h}, 0], "b": [{h}, 0], "c": [{h}, 0], "d": [{}, 0]}}}}"#, -c, -h),
    )
    .unwrap();
    let path = dir.path().join("profile.csv");
    let coins_arg = coins.to_str().unwrap();
    let out = qwlab(&["simulate", "--model", "custom", "--coins", coins_arg, "--steps", "40", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let custom = fs::read_to_string(&path).unwrap();
    // Same defect coin as the built-in model; the entries agree only to rounding.
    let builtin = stdout(&["simulate", "--xi", "0.3", "--steps", "40"]);
    for (a, b) in rows(&custom).iter().zip(rows(&builtin)) {
        assert!((num(&a[2]) - num(&b[2])).abs() < 1e-14);
    }
}

#[test]
fn verify_passes_and_fault_injection_fails() {
    let ok = qwlab(&["verify", "--horizon", "400"]);
    let text = String::from_utf8_lossy(&ok.stdout);
    assert!(text.contains("continued fraction equals closed-form f0"), "{text}");
    // A short horizon is too coarse for the two long-time checks; all others pass.
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert!(failing.iter().all(|l| l.contains("Cesaro") || l.contains("return probability")), "{failing:?}");

    let bad = qwlab(&["verify", "--horizon", "400", "--inject-fault"]);
    assert!(!bad.status.success());
    let text = String::from_utf8_lossy(&bad.stdout);
    assert!(text.lines().next().unwrap().starts_with("FAIL  stationary eigenvectors"));
}

#[test]
fn verify_full_horizon_passes() {
    let out = qwlab(&["verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("16 of 16 checks passed\n"));
}

#[test]
fn verify_json_report() {
    let doc: serde_json::Value = serde_json::from_str(&stdout(&["verify", "--horizon", "2000", "--format", "json"])).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r["status"] == "PASS"));
}
