use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const TWO_PERIOD: &str = r#"{
  "horizon": 2,
  "demands": [3, 4],
  "breakpoints": [5, 100],
  "pieces": [
    [{"setup": 10, "unit": 1}, {"setup": 15, "unit": 2}],
    [{"setup": 10, "unit": 1}, {"setup": 15, "unit": 2}]
  ],
  "inventory": [{"hold": 1, "backlog": 2}, {"hold": 1, "backlog": 2}]
}"#;

fn lotsize(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lotsize"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn solves_two_period_fixture_with_every_engine() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "two.json", TWO_PERIOD);
    for engine in ["fast", "baseline", "oracle"] {
        let out = lotsize(&["solve", &path, "--engine", engine]);
        assert!(
            out.status.success(),
            "{engine}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let doc = stdout_json(&out);
        assert_eq!(doc["cost"], 27, "{engine}");
        assert_eq!(doc["engine"], engine);
        let production: Vec<i64> = serde_json::from_value(doc["schedule"]["production"].clone()).unwrap();
        assert_eq!(production.iter().sum::<i64>(), 7);
    }
}

#[test]
fn malformed_file_exits_with_parse_code() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "bad.json", "{ \"horizon\": 2, ");
    let out = lotsize(&["solve", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn invalid_instance_exits_with_validation_code() {
    let dir = TempDir::new().unwrap();
    // breakpoints must increase
    let text = TWO_PERIOD.replace("[5, 100]", "[100, 5]");
    let path = write(&dir, "invalid.json", &text);
    assert_eq!(lotsize(&["solve", &path]).status.code(), Some(3));
    assert_eq!(lotsize(&["check", &path]).status.code(), Some(3));
}

#[test]
fn oracle_budget_exits_with_budget_code() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "two.json", TWO_PERIOD);
    let out = lotsize(&["solve", &path, "--engine", "oracle", "--budget-states", "10"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn check_reports_agreement() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "two.json", TWO_PERIOD);
    let out = lotsize(&["check", &path]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["summary"], "3 engines agree");
    assert_eq!(doc["agree"], true);
}

#[test]
fn check_skips_oracle_when_over_budget() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "two.json", TWO_PERIOD);
    let out = lotsize(&["check", &path, "--budget-states", "10"]);
    assert!(out.status.success());
    let summary = stdout_json(&out)["summary"].as_str().unwrap().to_owned();
    assert!(summary.starts_with("2 engines agree"), "{summary}");
}

#[test]
fn generate_is_deterministic_and_valid() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = lotsize(&[
            "generate",
            "--seed",
            "17",
            "--horizon",
            "5",
            "--breakpoints",
            "2",
            "--concave-inventory",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());

    let other = lotsize(&["generate", "--seed", "18", "--horizon", "5", "--breakpoints", "2"]);
    assert_ne!(String::from_utf8(other.stdout).unwrap().trim(), text.trim());

    let out = lotsize(&["check", a.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["summary"], "3 engines agree");
}

#[test]
fn generate_rejects_negative_maxima() {
    let out = lotsize(&["generate", "--seed", "1", "--horizon", "3", "--demand-max=-1"]);
    assert_eq!(out.status.code(), Some(3));
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn bench_writes_one_row_per_repetition() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = lotsize(&[
        "bench",
        "--horizons",
        "3,5",
        "--repetitions",
        "3",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&csv);
    for engine in ["fast", "baseline"] {
        for t in ["3", "5"] {
            let n = rows.iter().filter(|r| r[0] == engine && r[1] == t).count();
            assert_eq!(n, 3, "{engine} T={t}");
        }
    }
    assert!(String::from_utf8_lossy(&out.stderr).contains("slope"));
}

#[test]
fn bench_marks_budget_exhaustion() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = lotsize(&[
        "bench",
        "--horizons",
        "3,5",
        "--budget-seconds",
        "0",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.lines().count() < 1 + 2 * 2 * 3, "{text}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exceeded"));
}

#[test]
fn sequences_dump_is_csv() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "two.json", TWO_PERIOD);
    let out = lotsize(&["sequences", &path]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("sequence,t,rank,key,counts"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|r| r.starts_with("hat,1,0,")));
    assert!(rows.iter().any(|r| r.starts_with("tilde,2,0,")));
}
