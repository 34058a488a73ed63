//! Black-box tests of the `mzv` binary (each invocation runs its own
//! in-process service on a loopback port).

use std::path::Path;
use std::process::{Command, Output};

fn mzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(args)
        .env_remove("MZV_SERVER_URL")
        .env_remove("MZV_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn mzv_with_env(args: &[&str], key: &str, value: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(args)
        .env_remove("MZV_SERVER_URL")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn sigma_prints_plain_combination() {
    let out = mzv(&["sigma", "1", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2*(3)\n");
}

#[test]
fn eval_rejects_non_admissible_with_guidance() {
    let out = mzv(&["eval", "2,1", "--precision", "30"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("regularization"));

    let starred = mzv(&["eval", "2,1", "--star", "--precision", "30"]);
    assert!(starred.status.success());
    assert!(stdout(&starred).starts_with("-2.40411380631918857079947632302"));
}

#[test]
fn eval_pattern_shorthand() {
    let out = mzv(&["eval", "{1,3}^1", "--precision", "30"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("0.2705808084277845478790009241"));
}

#[test]
fn malformed_index_is_a_usage_error() {
    let out = mzv(&["eval", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot parse index"));
}

#[test]
fn stuffle_json_round_trips() {
    let out = mzv(&["stuffle", "2", "1", "--json"]);
    assert!(out.status.success());
    let parsed: mzv_core::index_algebra::IndexCombination =
        serde_json::from_str(stdout(&out).trim()).expect("emitted JSON re-parses");
    assert_eq!(serde_json::to_string(&parsed).unwrap(), stdout(&out).trim());
}

#[test]
fn reg_prints_t_polynomial() {
    let out = mzv(&["reg", "2,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "-(1,2) - (3) + ((2))*T\n");
}

#[test]
fn smzv_series_order_flag() {
    let out = mzv(&["smzv", "{1,3}^1", "--order", "2", "--precision", "30", "--json"]);
    assert!(out.status.success());
    let series: mzv_core::smzv::TSeries = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(series.order(), 2);
    let symbolic = mzv(&["smzv", "1,3", "--order", "1", "--symbolic"]);
    assert_eq!(stdout(&symbolic), "(-(4))\n");
}

#[test]
fn min_matches_known_value() {
    let out = mzv(&["min", "0", "0", "1,3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "-(4)\n");
}

#[test]
fn pslq_finds_euler_relation() {
    let z12 = stdout(&mzv(&["eval", "1,2", "--precision", "50"]));
    let z3 = stdout(&mzv(&["eval", "3", "--precision", "50"]));
    let out = mzv(&["pslq", z12.trim(), z3.trim(), "--precision", "50"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("relation: [1, -1]"), "{}", stdout(&out));
}

#[test]
fn pslq_rejects_low_precision() {
    let out = mzv(&["pslq", "1.25", "2.5", "--precision", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least 20 digits"));
}

#[test]
fn verify_exit_codes_and_listing() {
    let list = mzv(&["verify", "--list"]);
    assert!(list.status.success());
    assert!(stdout(&list).contains("lemma2.1"));

    let ok = mzv(&["verify", "lemma2.5"]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(stdout(&ok).contains("4/4 cases passed"));

    let unknown = mzv(&["verify", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn verify_json_is_the_case_array() {
    let out = mzv(&["verify", "lemma2.7", "--json"]);
    assert!(out.status.success());
    let cases: Vec<mzv_core::relations::CaseResult> =
        serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(cases.len(), 9);
    assert!(cases.iter().all(|c| c.status.is_pass()));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = mzv(&["eval", "2,3", "--precision", "40"]);
    let b = mzv(&["eval", "2,3", "--precision", "40"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn cache_dir_env_persists_values() {
    let dir = tempfile::tempdir().unwrap();
    let cold = mzv_with_env(&["eval", "2,3", "--precision", "35"], "MZV_CACHE_DIR", dir.path());
    assert!(cold.status.success(), "{}", String::from_utf8_lossy(&cold.stderr));
    let cache_file = dir.path().join("cache.jsonl");
    assert!(cache_file.exists());
    let contents = std::fs::read_to_string(&cache_file).unwrap();
    assert!(contents.contains("\"digits\":35"));

    let warm = mzv_with_env(&["eval", "2,3", "--precision", "35"], "MZV_CACHE_DIR", dir.path());
    assert_eq!(stdout(&cold), stdout(&warm));
}
