use std::path::PathBuf;

use assert_cmd::Command;
use kemeny_core::Profile;
use serde_json::Value;

fn asset(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "assets", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn kemeny() -> Command {
    Command::cargo_bin("kemeny").unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = kemeny().args(args).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn median_of_the_condorcet_loser_election() {
    let out = stdout(&["median", "--k", "3", "--solver", "brute", "--all", &asset("condorcet_loser.profile")]);
    assert_eq!(out, "score 48\nz > t > x > y\n");
}

#[test]
fn score_against_a_single_ranking_is_zero() {
    kemeny()
        .args(["score", "--k", "2", "--ranking", "a > b > c", "-"])
        .write_stdin("candidates: a b c\n1: a > b > c\n")
        .assert()
        .success()
        .stdout("0\n");
}

#[test]
fn text_and_json_agree() {
    let file = asset("lower_3_5.profile");
    let text = stdout(&["median", "--k", "3", "--solver", "brute", "--all", &file]);
    let j = json(&["median", "--k", "3", "--solver", "brute", "--all", &file]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), format!("score {}", j["score"]));
    let medians: Vec<&str> = lines.collect();
    let from_json: Vec<&str> = j["medians"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(medians, from_json);
    assert_eq!(j["score"], 21);
}

#[test]
fn solvers_report_the_same_score() {
    let file = asset("smith_iia.profile");
    for solver in ["brute", "dp", "bnb"] {
        assert_eq!(json(&["median", "--k", "3", "--solver", solver, &file])["score"], 114);
    }
}

#[test]
fn reduce_lists_pairs_and_smith_set() {
    let file = asset("smith_iia.profile");
    let text = stdout(&["reduce", "--scheme", "3wise", &file]);
    assert!(text.contains("x3 < x4  [unanimity-3wise]"), "{text}");
    assert!(text.contains("3/4-Smith set: {x1, x2, x3, x4, x5}"));
    let j = json(&["reduce", "--scheme", "3wise", "--alpha", "2/3", &file]);
    for key in ["forced_pairs", "winners", "smith_set", "alpha_smith_set"] {
        assert!(j.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn smith_subcommand() {
    let j = json(&["smith", "--alpha", "3/4", &asset("smith_iia.profile")]);
    assert_eq!(j["smith_set"], serde_json::json!(["x1", "x2", "x3", "x4", "x5"]));
}

#[test]
fn verify_command_passes() {
    let out = kemeny().args(["verify-paper", "--swap-samples", "2000"]).assert().success();
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert!(!text.contains("FAIL"), "{text}");
    assert!(text.contains("uniqueness of the median is not searched"));
}

#[test]
fn verify_command_single_instance() {
    let text = stdout(&["verify-paper", "--instance", "nine_cand"]);
    assert!(text.lines().all(|l| l.starts_with("PASS NINE_CAND")), "{text}");
}

#[test]
fn table_check_reports_known_cells() {
    let out = kemeny().args(["verify-paper", "--instance", "two_thirds", "--swap-samples", "10", "--tables"]).assert().code(1);
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 3, "{text}");
}

#[test]
fn simulate_is_reproducible_and_needs_a_seed() {
    let args = ["simulate", "--n", "3", "--m", "4", "--trials", "2000", "--seed", "9"];
    assert_eq!(stdout(&args), stdout(&args));
    kemeny().args(["simulate", "--n", "3", "--m", "4"]).assert().code(2);
    let j = json(&args);
    assert_eq!(j[0]["percentages"].as_array().unwrap().len(), 3);
    let j = json(&["simulate", "--n", "3", "--m", "3", "--trials", "100", "--seed", "1", "--rules", "at"]);
    assert_eq!(j[0]["percentages"][0]["rule"], "AT");
}

#[test]
fn gen_round_trips() {
    for args in [
        vec!["gen", "two-thirds", "--n", "33"],
        vec!["gen", "random", "--n", "5", "--m", "7", "--seed", "3"],
        vec!["gen", "instance", "SMITH_IIA"],
    ] {
        let text = stdout(&args);
        let p = Profile::parse(&text).unwrap();
        assert_eq!(p.to_text(), text);
    }
    assert_eq!(Profile::parse(&stdout(&["gen", "two-thirds", "--n", "33"])).unwrap().n(), 40);
}

#[test]
fn exit_codes() {
    kemeny().arg("frobnicate").assert().code(2);
    kemeny().args(["median", "--k", "5", "x"]).assert().code(2);
    kemeny().args(["median", "--k", "3", "--solver", "dp", "--all", "x"]).assert().code(2);
    kemeny()
        .args(["median", "--k", "3", "-"])
        .write_stdin("candidates: a b\n1: a > a\n")
        .assert()
        .code(1);
    kemeny().args(["median", "--k", "3", "/nonexistent/file"]).assert().code(1);
    kemeny().args(["gen", "two-thirds", "--n", "10"]).assert().code(1);
}
