use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gamevalue"));
    c.env_remove("GAMEVALUE_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn game_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../games")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn analyze_aumann_reports_exact_values() {
    let v = json(&["analyze", "aumann"]);
    assert_eq!(v["values"]["mv"], "10/9");
    assert_eq!(v["values"]["ev"], "6/5");
    assert_eq!(v["values"]["v_c"], "20/3");
    assert_eq!(v["ce"]["certificate"]["beta"], "20/3");
    let text = stdout(&run(&["analyze", "aumann"]));
    assert!(text.contains("MV   = 10/9"), "{text}");
}

#[test]
fn float_flag_adds_approximations() {
    let v = json(&["--float", "analyze", "aumann"]);
    let mv: f64 = v["values"]["mv_approx"].as_f64().unwrap();
    assert!((mv - 10.0 / 9.0).abs() < 1e-9);
    assert_eq!(v["values"]["mv"], "10/9");
}

#[test]
fn file_and_registry_inputs_agree() {
    assert_eq!(json(&["analyze", "aumann"])["values"], json(&["analyze", &game_file("aumann.json")])["values"]);
}

#[test]
fn uniform_check_on_example2() {
    let o = run(&["analyze", "example2", "--check", "uniform-ce"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Achieved, π=(1,5)"));
}

#[test]
fn congestion_runs_applicable_checks() {
    let v = json(&["congestion", &game_file("linear_two_facility.json")]);
    let text = v.to_string();
    assert!(text.contains("\"phi\""), "{text}");
    assert!(text.contains("\"lower_splits\""), "{text}");
    let o = run(&["congestion", "aumann"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn phi_check_passes_on_first_example() {
    let o = run(&["analyze", "example1", "--check", "phi"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("golden-ratio audit: pass"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", &game_file("three_player_cycle.json")]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "missing/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "gamma_x:1"]).status.code(), Some(2));

    let bad = tmp("negative.json");
    std::fs::write(&bad, "{\"players\": 2, \"strategies\": [1, 1], \"payoffs\": [[-1], [0]]}\n").unwrap();
    let o = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("negative payoff"));
}

#[test]
fn example_output_matches_shipped_files() {
    for (spec, file) in [
        ("aumann", "aumann.json"),
        ("gamma_x:4", "gamma_4.json"),
        ("pd:10", "pd_10.json"),
        ("example1", "example1.json"),
        ("example2", "example2.json"),
    ] {
        let printed = stdout(&run(&["example", spec]));
        assert_eq!(printed, std::fs::read_to_string(game_file(file)).unwrap(), "{spec}");
        let path = tmp(file);
        std::fs::write(&path, &printed).unwrap();
        assert_eq!(json(&["analyze", path.to_str().unwrap()])["values"], json(&["analyze", spec])["values"]);
    }
    let listed = stdout(&run(&["example", "--list"]));
    assert!(listed.contains("aumann") && listed.contains("example2"));
}

#[test]
fn out_flag_writes_the_report() {
    let path = tmp("report.json");
    let _ = std::fs::remove_file(&path);
    let o = run(&["--format", "json", "--out", path.to_str().unwrap(), "analyze", "pd:10"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["values"]["mv"], "1");
}

#[test]
fn nash_and_ce_subcommands() {
    let n = json(&["nash", "aumann"]);
    assert_eq!(n["equilibria"].as_array().unwrap().len(), 3);
    let c = json(&["ce", "gamma_x:4"]);
    assert_eq!(c["v_c"], c["certificate"]["beta"]);
}

#[test]
fn search_is_deterministic_in_its_seed() {
    let args = ["search", "--iterations", "200", "--grid", "0..4"];
    let with_flag = |seed: &str| {
        let mut a = vec!["--format", "json", "--seed", seed];
        a.extend_from_slice(&args);
        stdout(&run(&a))
    };
    let first = with_flag("77");
    assert_eq!(first, with_flag("77"));
    let via_env = bin().env("GAMEVALUE_SEED", "77").args(["--format", "json"]).args(args).output().unwrap();
    assert_eq!(stdout(&via_env), first);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert!(v["transcript"].as_array().is_some_and(|t| !t.is_empty()), "{first}");
}

#[test]
fn congestion_search_with_linear_tables() {
    let v = json(&[
        "search", "--congestion", "SN", "--players", "3", "--facilities", "2", "--linear",
        "--iterations", "50", "--grid", "0..5", "--target", "ev",
    ]);
    assert!(v["transcript"].is_array());
}
