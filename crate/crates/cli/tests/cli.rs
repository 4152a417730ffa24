use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_thickness-lab"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn invoke(cmd: &str, config: &Path, out: &Path, extra: &[&str], threads: Option<&str>) -> Output {
    let mut c = bin();
    c.arg(cmd).arg(config).arg("--out").arg(out).args(extra);
    if let Some(t) = threads {
        c.env("THICKNESS_LAB_THREADS", t);
    }
    c.output().unwrap()
}

fn cfg_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn report(out: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap()).unwrap()
}

fn without_wall_time(text: &str) -> String {
    text.lines().filter(|l| !l.trim_start().starts_with("\"wall_time\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn lp_thickness_example_brackets_root_two() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "lp.json", r#"{"scenario":"lp-thickness","p":2,"dim":10,"seed":7}"#);
    let out = dir.path().join("lp-out");
    let o = invoke("check", &cfg, &out, &[], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let r = report(&out);
    let c = &r["runs"][0]["covering"];
    assert!(c["certified_lower"].as_f64().unwrap() >= 1.404);
    assert_eq!(c["analytic_upper"].as_f64().unwrap(), 2f64.sqrt());
    assert_eq!(r["pass"], Value::Bool(true));
}

#[test]
fn l1_sum_l1_example() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "l1.json", r#"{"scenario":"l1-sum-l1","d":2,"seed":7}"#);
    let out = dir.path().join("l1-out");
    let o = invoke("check", &cfg, &out, &[], None);
    assert_eq!(o.status.code(), Some(0));
    let c = &report(&out)["runs"][0]["covering"];
    let target = 1.847759;
    assert!((c["certified_lower"].as_f64().unwrap() - target).abs() < 1e-2);
    assert!((c["empirical_estimate"].as_f64().unwrap() - target).abs() < 1e-2);
    assert_eq!(c["analytic_upper"].as_f64().unwrap(), (2.0 + 2f64.sqrt()).sqrt());
}

#[test]
fn verify_inequalities_example() {
    let dir = TempDir::new().unwrap();
    let cfg =
        write_config(dir.path(), "ineq.json", r#"{"scenario":"verify-inequalities","p":1.5,"trials":1000,"seed":7}"#);
    let out = dir.path().join("ineq-out");
    let o = invoke("check", &cfg, &out, &[], None);
    assert_eq!(o.status.code(), Some(0));
    for run in report(&out)["runs"].as_array().unwrap() {
        assert_eq!(run["trials"]["violations"].as_u64(), Some(0));
        assert_eq!(run["trials"]["trials"].as_u64(), Some(1000));
    }
}

#[test]
fn reports_are_byte_identical_modulo_wall_time() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "c.json", r#"{"scenario":"product","seed":11,"budget":30000,"restarts":8}"#);
    let mut texts = Vec::new();
    for (i, threads) in [Some("1"), Some("4"), None].into_iter().enumerate() {
        let out = dir.path().join(format!("r{i}"));
        let o = invoke("run", &cfg, &out, &[], threads);
        assert_eq!(o.status.code(), Some(0));
        let text = std::fs::read_to_string(out.with_extension("json")).unwrap();
        let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
        texts.push((without_wall_time(&text).replace(&format!("r{i}"), "r"), csv));
    }
    assert_eq!(texts[0], texts[1]);
    assert_eq!(texts[0], texts[2]);
}

#[test]
fn csv_summary_row() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "h.json", r#"{"scenario":"hyperplane","dim":5,"seed":3}"#);
    let out = dir.path().join("h-out");
    assert_eq!(invoke("run", &cfg, &out, &[], None).status.code(), Some(0));
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("scenario,p,dim,m,lower,estimate,upper,pass,seed"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "hyperplane");
    assert_eq!(row[1], "inf");
    assert_eq!(row[2], "6");
    assert_eq!(row[6], "1.0");
    assert_eq!(row[7], "true");
    assert_eq!(row[8], "3");
    assert!(lines.next().is_none());
}

#[test]
fn flags_override_config() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "s.json",
        r#"{"scenario":"lp-thickness","p":1.5,"dim":4,"seed":1,"budget":50000,"out_path":"ignored"}"#,
    );
    let out = dir.path().join("s-out");
    let o = invoke("run", &cfg, &out, &["--seed", "99", "--budget", "20000"], None);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["config"]["seed"].as_u64(), Some(99));
    assert_eq!(r["config"]["budget"].as_u64(), Some(20000));
    assert_eq!(r["runs"][0]["covering"]["seed"].as_u64(), Some(99));
    assert!(!dir.path().join("ignored.json").exists());
}

#[test]
fn default_output_sits_next_to_config() {
    let dir = TempDir::new().unwrap();
    let cfg =
        write_config(dir.path(), "plain.json", r#"{"scenario":"thickness-search","m":1,"seed":2,"budget":20000}"#);
    let o = bin().arg("run").arg(&cfg).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("plain.report.json").exists());
    assert!(dir.path().join("plain.report.csv").exists());
}

#[test]
fn tightened_tolerance_fails_check_with_3() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "t.json", r#"{"scenario":"thickness-search","m":2,"seed":5,"tolerance":0}"#);
    let out = dir.path().join("t-out");
    let o = invoke("check", &cfg, &out, &[], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
    assert_eq!(report(&out)["pass"], Value::Bool(false));
    // run reports the failure but still succeeds
    assert_eq!(invoke("run", &cfg, &out, &[], None).status.code(), Some(0));
}

#[test]
fn config_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x");
    for (i, body) in [
        "{\"scenario\": \"lp-thickness\", ",
        r#"{"scenario":"lp-thickness","p":2}"#,
        r#"{"scenario":"lp-thickness","seed":1}"#,
        r#"{"scenario":"warp","seed":1}"#,
        r#"{"scenario":"verify-inequalities","p":1,"seed":1}"#,
        r#"{"scenario":"product","seed":1,"factors":[]}"#,
    ]
    .into_iter()
    .enumerate()
    {
        let cfg = write_config(dir.path(), &format!("bad{i}.json"), body);
        let o = invoke("check", &cfg, &out, &[], None);
        assert_eq!(o.status.code(), Some(2), "{body}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = invoke("run", &dir.path().join("missing.json"), &out, &[], None);
    assert_eq!(o.status.code(), Some(2));
    write_config(dir.path(), "ok.json", r#"{"scenario":"thickness-search","m":1,"seed":1,"budget":5000}"#);
    let o = invoke("run", &cfg_path(dir.path(), "ok.json"), &dir.path().join("ok"), &[], None);
    assert_eq!(o.status.code(), Some(2), "writing ok.json over the config");
    assert!(std::fs::read_to_string(dir.path().join("ok.json")).unwrap().contains("thickness-search"));
    let o = bin().arg("launch").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = invoke("run", &cfg_path(dir.path(), "ok.json"), &out, &[], Some("zero"));
    assert_eq!(o.status.code(), Some(2));
}
