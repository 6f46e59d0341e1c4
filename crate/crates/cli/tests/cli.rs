use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zetalab(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetalab"))
        .args(args)
        .env("ZETALAB_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV document, header comments stripped.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn error_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr is one JSON object")
}

#[test]
fn tube_matches_direct_volumes() {
    let cache = tempfile::tempdir().unwrap();
    let out = stdout(&zetalab(cache.path(), &["tube", "--string", "cantor", "--eps-decades", "6"]));
    assert!(out.starts_with("# zetalab "));
    assert!(out.contains("# config-sha256: "));
    assert!(out.contains("# abs_tol: 1e-12"));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 60);
    for r in rows {
        let rel: f64 = r[3].parse().unwrap();
        assert!(rel < 1e-3, "{r:?}");
    }
}

#[test]
fn rh_scan_reports_quasi_invertibility() {
    let cache = tempfile::tempdir().unwrap();
    let out = stdout(&zetalab(cache.path(), &["rh-scan", "--c", "0.3,0.4,0.6,0.7", "--tmax", "100"]));
    let doc: Value = serde_json::from_str(&out).unwrap();
    let rows = doc["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        assert_eq!(r["verdict"]["QuasiInvertibleUpTo"], 100.0, "{r}");
    }
    assert!(doc["result"]["critical"]["verdict"]["NotQuasiInvertible"].is_object());
    assert!(doc["result"]["symmetry"].as_array().unwrap().iter().all(|s| s["holds"] == true));
}

#[test]
fn explicit_row_is_close_to_exact_count() {
    let cache = tempfile::tempdir().unwrap();
    let out = stdout(&zetalab(cache.path(), &["explicit", "--x", "100.5", "--zeros", "100"]));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    // 25 primes, 4 squares, 2 cubes, 2 fourth powers, 2⁵ and 2⁶ below 100.5
    let exact: f64 = rows[0][1].parse().unwrap();
    assert!((exact - (25.0 + 4.0 / 2.0 + 2.0 / 3.0 + 2.0 / 4.0 + 0.2 + 1.0 / 6.0)).abs() < 1e-11);
    let err: f64 = rows[0][3].parse().unwrap();
    assert!(err < 0.3);
    assert_eq!(rows[0][4], "100");
}

#[test]
fn outputs_are_byte_identical_with_cold_and_warm_cache() {
    let cache = tempfile::tempdir().unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [a.path(), b.path()] {
        let o = zetalab(cache.path(), &["explicit", "--x", "50.5,500.5", "--zeros", "40", "--out-dir", dir.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
    let first = std::fs::read(a.path().join("explicit.csv")).unwrap();
    let second = std::fs::read(b.path().join("explicit.csv")).unwrap();
    assert_eq!(first, second);

    let cached = std::fs::read_to_string(cache.path().join("zeros.tsv")).unwrap();
    assert!(cached.starts_with("# zetalab-zeros v1 t_max="));
}

#[test]
fn config_hash_tracks_parameters() {
    let cache = tempfile::tempdir().unwrap();
    let hash = |args: &[&str]| {
        let out = stdout(&zetalab(cache.path(), args));
        out.lines().find(|l| l.starts_with("# config-sha256: ")).unwrap().to_string()
    };
    let a = hash(&["momentum-witness", "--tau", "3"]);
    assert_eq!(a, hash(&["momentum-witness", "--tau", "3"]));
    assert_ne!(a, hash(&["momentum-witness", "--tau", "4"]));
}

#[test]
fn csv_commands_convert_to_json() {
    let cache = tempfile::tempdir().unwrap();
    let out = stdout(&zetalab(cache.path(), &["spectral-count", "--x", "30", "--format", "json"]));
    let doc: Value = serde_json::from_str(&out).unwrap();
    let row = &doc["result"][0];
    // Cantor frequencies k·3^{j+1} below 30, with half weight at 30 = 10·3
    assert_eq!(row["direct"], 19.5);
    assert_eq!(row["direct"], row["floor_sum"]);
    assert_eq!(row["direct"], row["convolution"]);
    assert_eq!(doc["meta"]["command"], "spectral-count");
}

#[test]
fn string_from_json_file() {
    let cache = tempfile::tempdir().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, r#"{"lengths": [[0.5, 1], [0.25, 2]]}"#).unwrap();
    let out = stdout(&zetalab(cache.path(), &["string-info", "--string", path.to_str().unwrap()]));
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["result"]["total_length"], 1.0);
    assert_eq!(doc["result"]["level_count"], 2);
}

#[test]
fn validation_failures_exit_with_two() {
    let cache = tempfile::tempdir().unwrap();
    for args in [
        vec!["tube", "--eps-decades", "0"],
        vec!["zeta-eval", "--re", "1"],
        vec!["dims", "--string", r#"{"lengths": [[0.5, 1]]}"#],
        vec!["explicit", "--x", "1.5"],
        vec!["rh-scan", "--c", "0.5"],
        vec!["no-such-command"],
        vec!["zeros", "--tmax", "abc"],
    ] {
        let o = zetalab(cache.path(), &args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        let e = error_json(&o);
        assert_eq!(e["exit_code"], 2);
        assert!(e["error"].is_string() && e["message"].is_string());
    }
}

#[test]
fn computation_failures_exit_with_three() {
    // the cache directory path is occupied by a regular file
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("cache");
    std::fs::write(&blocker, "not a directory").unwrap();
    let o = zetalab(&blocker, &["zeros", "--tmax", "20"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_json(&o)["error"], "Io");
}

#[test]
fn structured_report_refuses_csv() {
    let cache = tempfile::tempdir().unwrap();
    let o = zetalab(cache.path(), &["lapo", "--d", "0.5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_exits_cleanly() {
    let cache = tempfile::tempdir().unwrap();
    let o = zetalab(cache.path(), &["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    for cmd in ["zeros", "operator-check", "momentum-witness", "global-xi"] {
        assert!(text.contains(cmd));
    }
}
