use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn x116(args: &[&str]) -> Output {
    x116_env(args, None)
}

fn x116_env(args: &[&str], config: Option<&PathBuf>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_x116"));
    cmd.args(args).env_remove("X116_CONFIG");
    if let Some(c) = config {
        cmd.env("X116_CONFIG", c);
    }
    cmd.output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{e}: {l}")))
        .collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("x116-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn factor_writes_large_integers_as_strings() {
    let out = x116(&["factor", "1000000016000000063"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &lines(&out)[0];
    assert_eq!(v["n"], "1000000016000000063");
    assert_eq!(v["factors"][0]["p"], 1000000007);
    assert_eq!(v["complete"], true);

    let out = x116(&["factor", "-12"]);
    assert_eq!(lines(&out)[0]["sign"], -1);
}

#[test]
fn factor_budget_exhaustion_exits_2() {
    let out = x116(&["--trial-bound", "10", "--rho-iterations", "0", "factor", "1000000016000000063"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(lines(&out)[0]["complete"], false);
}

#[test]
fn classgroup() {
    let out = x116(&["classgroup", "--disc", "-8120"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &lines(&out)[0];
    assert_eq!(v["h"], 40);
    assert_eq!(x116(&["classgroup", "--disc", "-15"]).status.code(), Some(0));
    assert_eq!(x116(&["classgroup", "--disc", "-14"]).status.code(), Some(3));
}

#[test]
fn census_ordering_and_summary() {
    let out = x116(&["census", "--height", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    let summary = ls.last().unwrap();
    assert_eq!(summary["exceptions"], serde_json::json!(["-3", "1/3"]));
    assert_eq!(summary["violations"], serde_json::json!([]));
    assert_eq!(summary["records"].as_u64().unwrap() as usize, ls.len() - 1);
    let key = |v: &Value| {
        let t = v["t"].as_str().unwrap();
        let (r, s) = t.split_once('/').unwrap_or((t, "1"));
        let (r, s): (i64, i64) = (r.parse().unwrap(), s.parse().unwrap());
        (r.abs() + s, r, s)
    };
    let keys: Vec<_> = ls[..ls.len() - 1].iter().map(key).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));

    let path = scratch("census.jsonl");
    let out = x116(&["census", "--height", "6", "--jsonl", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().last().unwrap().contains("\"exceptions\""));
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = scratch("config.toml");
    std::fs::write(&cfg, "height_bound = 4\nformat = \"csv\"\n").unwrap();
    let out = x116_env(&["census"], Some(&cfg));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t,d,disc,h,"), "{text}");
    assert!(text.contains("height,records"));

    let out = x116_env(&["--format", "jsonl", "census"], Some(&cfg));
    let ls = lines(&out);
    assert_eq!(ls.last().unwrap()["height"], 4);

    std::fs::write(&cfg, "no_such_key = 1\n").unwrap();
    assert_eq!(x116_env(&["pi2", "--n", "10"], Some(&cfg)).status.code(), Some(3));
}

#[test]
fn pullback() {
    let out = x116(&["pullback", "--t", "-242/29"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["order"], 1);
    let out = x116(&["pullback", "--t", "-5"]);
    assert_eq!(lines(&out)[0]["order"], 5);
    assert_eq!(x116(&["pullback", "--t", "1"]).status.code(), Some(3));
    assert_eq!(x116(&["pullback", "--t", "0"]).status.code(), Some(3));
}

#[test]
fn verification_commands() {
    let out = x116(&["verify-claims"]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    let summary = ls.last().unwrap();
    assert_eq!(summary["fail"], 0);
    assert!(ls[..ls.len() - 1].iter().all(|v| v["status"] != "fail"));

    let out = x116(&["verify-claims", "--only", "descent.c17.from_case_2bii"]);
    assert_eq!(lines(&out).len(), 2);
    assert_eq!(x116(&["verify-claims", "--only", "nope"]).status.code(), Some(3));

    let out = x116(&["verify-table1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out).len(), 8);

    let out = x116(&["verify-example6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["p_digits"], 181);
}

#[test]
fn heuristic_and_pi2() {
    let out = x116(&["heuristic", "--mmax", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    let hits: Vec<(i64, u64)> = ls[..ls.len() - 1]
        .iter()
        .map(|v| (v["m"].as_i64().unwrap(), v["p_digits"].as_u64().unwrap()))
        .collect();
    assert_eq!(hits, [(-1, 2), (-2, 5), (2, 2), (-3, 10), (3, 5), (4, 10)]);
    assert_eq!(ls.last().unwrap()["hits"], 6);

    let out = x116(&["pi2", "--n", "20"]);
    assert_eq!(lines(&out)[0]["count"], 11);
    assert_eq!(x116(&["pi2", "--n", "1000000000"]).status.code(), Some(2));
}

#[test]
fn usage_and_help() {
    assert_eq!(x116(&["bogus"]).status.code(), Some(3));
    assert_eq!(x116(&["pi2"]).status.code(), Some(3));
    assert_eq!(x116(&["factor", "abc"]).status.code(), Some(3));
    assert_eq!(x116(&["factor", "0"]).status.code(), Some(3));
    assert_eq!(x116(&["heuristic", "--mmax", "0"]).status.code(), Some(3));
    assert_eq!(x116(&["--help"]).status.code(), Some(0));
    assert_eq!(x116(&["--version"]).status.code(), Some(0));
}
