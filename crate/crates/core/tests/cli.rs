use std::process::{Command, Output};

fn gmbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmbench")).args(args).env_remove("GMBENCH_REPORT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

#[test]
fn describe_counts() {
    for (g, levis, w) in [("A1", 2, 2), ("A2", 5, 6), ("B2", 6, 8)] {
        let o = gmbench(&["describe", "--group", g]);
        assert!(o.status.success());
        let text = stdout(&o);
        assert!(text.contains(&format!("levis {levis}\n")), "{text}");
        assert!(text.contains(&format!("|W| = {w}\n")), "{text}");
    }
}

#[test]
fn describe_unknown_group() {
    assert_eq!(gmbench(&["describe", "--group", "Q7"]).status.code(), Some(2));
}

#[test]
fn eval_examples() {
    let d = gmbench(&["eval", "--expr", "d", "--group", "A2", "--args", r#"{"l1":"M0","l":"M0","s":"G"}"#]);
    assert_eq!(first_line(&d), "1");
    let nl = gmbench(&["eval", "--expr", "nL", "--group", "A1", "--args", r#"{"sigma":[0,1]}"#]);
    assert_eq!(first_line(&nl), "1/2");
    let a = gmbench(&["eval", "--expr", "alpha_X", "--group", "A2", "--args", r#"{"nu":["0","0"]}"#]);
    assert_eq!(first_line(&a), "1");
}

#[test]
fn eval_provenance_block() {
    let o = gmbench(&["eval", "--expr", "n_beta", "--group", "A1", "--args", r#"{"sigma":[0,1],"beta":["1"]}"#]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(first_line(&o), "1");
    for key in ["--\n", "expr: n_beta\n", "group: A1\n", "args_digest: ", "anchor: Eq. ntau\n"] {
        assert!(text.contains(key), "{text}");
    }
}

#[test]
fn eval_errors_exit_2() {
    assert_eq!(gmbench(&["eval", "--expr", "nope", "--group", "A2"]).status.code(), Some(2));
    assert_eq!(gmbench(&["eval", "--expr", "d", "--group", "A2", "--args", r#"{"bogus":1}"#]).status.code(), Some(2));
    assert_eq!(gmbench(&["eval", "--expr", "d", "--args", "{}"]).status.code(), Some(2));
}

#[test]
fn verify_empty_suite_list() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"schema_version": 1, "group": "A2", "suites": []}"#).unwrap();
    let o = gmbench(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["records"].as_array().unwrap().len(), 0);
    assert_eq!(report["schema_version"], 1);
}

#[test]
fn verify_trand_a2() {
    let o = gmbench(&["verify", "--group", "A2", "--suite", "trand"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["failed"], 0);
    assert!(report["passed"].as_u64().unwrap() > 0);
    assert!(report["records"].as_array().unwrap().iter().all(|r| r["anchor"] == "trand"));
}

#[test]
fn verify_lemma_shift_a1() {
    let o = gmbench(&["verify", "--group", "A1", "--suite", "lemma-shift"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for r in report["records"].as_array().unwrap() {
        assert!(r["residual"].as_f64().unwrap() <= 1e-6, "{r}");
    }
}

#[test]
fn verify_failing_check_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    // no quadrature meets this tolerance
    std::fs::write(&cfg, r#"{"schema_version": 1, "group": "A1", "suites": ["lemma-shift"], "tolerances": {"shift": 1e-300}}"#)
        .unwrap();
    assert_eq!(gmbench(&["verify", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn verify_bad_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"schema_version": 1, "group": "A2", "extra": true}"#).unwrap();
    assert_eq!(gmbench(&["verify", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&cfg, r#"{"schema_version": 1, "group": "A2", "tolerances": {"shift": -1.0}}"#).unwrap();
    assert_eq!(gmbench(&["verify", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(gmbench(&["verify", "--group", "A2", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(gmbench(&["verify"]).status.code(), Some(2));
}

#[test]
fn report_dir_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_gmbench"))
        .args(["verify", "--group", "A1", "--suite", "trand"])
        .env("GMBENCH_REPORT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(dir.path().join("report-A1.json")).unwrap();
    assert!(text.contains("\"group\": \"A1\""));
}

#[test]
fn verify_all_twice_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = gmbench(&["verify", "--group", "A2", "--suite", "all", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

fn schema(name: &str) -> serde_json::Value {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn keys(v: &serde_json::Value) -> Vec<String> {
    let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
    k.sort();
    k
}

#[test]
fn report_matches_schema() {
    let s = schema("report.schema.json");
    let o = gmbench(&["verify", "--group", "A1", "--suite", "trand", "residue-1d"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(keys(&report), keys(&s["properties"]));
    let rec_props = &s["properties"]["records"]["items"]["properties"];
    let required: Vec<&str> =
        s["properties"]["records"]["items"]["required"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    for r in report["records"].as_array().unwrap() {
        for k in keys(r) {
            assert!(rec_props.get(&k).is_some(), "{k}");
        }
        for k in &required {
            assert!(r.get(*k).is_some(), "{k}");
        }
    }
}

#[test]
fn config_matches_schema() {
    let s = schema("config.schema.json");
    let c = serde_json::to_value(gmbench::config::Config::for_group("A2")).unwrap();
    assert_eq!(keys(&c), keys(&s["properties"]));
    let suites: Vec<&str> = s["properties"]["suites"]["items"]["enum"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    for name in gmbench::config::SUITES {
        assert!(suites.contains(&name));
    }
}
