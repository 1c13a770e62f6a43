use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn latile(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latile"))
        .args(args)
        .env("LATILE_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn latile_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_latile"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn construct_pipes_into_verify() {
    let map = latile(&["construct", "golay11"]);
    assert_eq!(code(&map), 0);
    let verified = latile_with_stdin(&["verify", "-"], &map.stdout);
    assert_eq!(code(&verified), 0);
    let report = json(&verified);
    assert_eq!(report["bijective"], true);
    assert_eq!(report["ball_size"], 243);
}

#[test]
fn broken_map_exits_one() {
    let mut map = json(&latile(&["construct", "golay11"]));
    map["images"][3] = map["images"][4].clone();
    let out = latile_with_stdin(&["verify", "-"], map.to_string().as_bytes());
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["bijective"], false);

    // the right map over the wrong ball is also a failed verification
    let good = latile(&["construct", "golay11"]).stdout;
    let out = latile_with_stdin(&["verify", "-", "--ball", "11,2,2,1"], &good);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["reason"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&latile(&["search", "-n", "2"])), 2);
    assert_eq!(code(&latile(&["search", "-n", "4", "--budget", "0"])), 2);
    assert_eq!(code(&latile(&["frobnicate"])), 2);
    assert_eq!(code(&latile(&["verify", "/definitely/not/here.json"])), 2);
    assert_eq!(
        code(&latile(&[
            "ball", "-n", "3", "-t", "4", "--kplus", "1", "--kminus", "1"
        ])),
        2
    );
    assert_eq!(code(&latile_with_stdin(&["verify", "-"], b"{not json")), 2);
    assert_eq!(code(&latile(&["verify", "-", "--ball", "1,2"])), 2);
    // over budget without --force
    let out = latile(&["search", "-n", "6", "--budget", "1000", "-q"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn bad_thread_variable_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_latile"))
        .args(["search", "-n", "3", "-q"])
        .env("LATILE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn certify_verdicts_are_data() {
    for (n, verdict) in [
        (3, "NONEXISTENCE"),
        (4, "NONEXISTENCE"),
        (11, "INAPPLICABLE"),
    ] {
        let out = latile(&["certify", "-n", &n.to_string()]);
        assert_eq!(code(&out), 0);
        assert_eq!(json(&out)["conclusion"], verdict);
    }
    let out = latile(&["certify", "-n", "11"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "{\n  \"n\": 11,\n  \"order\": 243,\n  \"conclusion\": \"INAPPLICABLE\"\n}"
    );
}

#[test]
fn search_reports_empty_solutions() {
    let out = latile(&["search", "-n", "3", "-q"]);
    assert_eq!(code(&out), 0);
    let result = json(&out);
    assert_eq!(result["solutions"], Value::Array(vec![]));
    assert_eq!(result["reduced"], true);
    let full = json(&latile(&["search", "-n", "3", "--no-reduce", "-q"]));
    assert_eq!(full["candidates_tested"][0], 84);
}

#[test]
fn progress_goes_to_stderr_only() {
    let out = latile(&["search", "-n", "3"]);
    assert!(!out.stderr.is_empty());
    json(&out);
}

#[test]
fn output_is_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("metadata");
        serde_json::to_string(&v).unwrap()
    };
    let a = latile(&["search", "-n", "4", "-q"]);
    let b = Command::new(env!("CARGO_BIN_EXE_latile"))
        .args(["search", "-n", "4", "-q"])
        .env("LATILE_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(strip(json(&a)), strip(json(&b)));

    for args in [
        &["certify", "-n", "5"][..],
        &["construct", "golay11"],
        &[
            "ball", "-n", "3", "-t", "2", "--kplus", "2", "--kminus", "1",
        ],
    ] {
        assert_eq!(latile(args).stdout, latile(args).stdout, "{args:?}");
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("latile-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("map.json");
    let out = latile(&["construct", "golay11", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read(&path).unwrap(),
        latile(&["construct", "golay11"]).stdout
    );

    let analysis = latile(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&analysis), 0);
    let report = json(&analysis);
    assert_eq!(report["lemma6"]["identity_multiplicity"], 23);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn human_format_renders_the_same_result() {
    let out = latile(&["--format", "human", "certify", "-n", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("p=17"));
    assert!(text.trim_end().ends_with("NONEXISTENCE"));

    let out = latile(&[
        "ball", "-n", "2", "-t", "1", "--kplus", "1", "--kminus", "1", "--format", "human",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("B(2,1,1,1): 5 vectors"));
}

#[test]
fn ball_json_round_trips() {
    let out = latile(&[
        "ball", "-n", "4", "-t", "2", "--kplus", "2", "--kminus", "1",
    ]);
    let ball: latile::ErrorBall = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(ball.len() as u128, latile::ball_size(4, 2, 2, 1).unwrap());
}
