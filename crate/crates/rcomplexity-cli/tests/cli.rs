//! End-to-end behavior of the `rcx` binary: flag handling, output shapes,
//! and the documented exit-code vocabulary.

use std::io::Write;
use std::process::{Command, Output};

fn rcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn write_csv(content: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(content.as_bytes()).unwrap();
    file.flush().unwrap();
    file
}

const REFERENCE_CSV: &str = "\
metric,unit,n,value
time,seconds,10,306
time,seconds,20,1206
time,seconds,30,2706
memory,kB,10,22
memory,kB,20,43
memory,kB,30,64
";

#[test]
fn member_accepts_with_witness_limit() {
    let out = rcx(&["member", "--function", "2.1*n+1", "--class", "theta_2.1(n)"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("member"), "{text}");
    assert!(text.contains("2.1"), "{text}");
}

#[test]
fn member_rejects_small_o_of_itself() {
    let out = rcx(&["member", "--function", "n", "--class", "o(n)"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("non-member"));
}

#[test]
fn member_includes_the_big_o_boundary() {
    let out = rcx(&["member", "--function", "3*n^2+6", "--class", "O_3(n^2)"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("limit = 3"));
}

#[test]
fn member_parse_errors_exit_two() {
    let out = rcx(&["member", "--function", "3*$", "--class", "o(n)"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("parse error"));

    let out = rcx(&["member", "--function", "n", "--class", "o_2(n)"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("rate"));
}

#[test]
fn limit_prints_value_zero_and_infinite() {
    let out = rcx(&["limit", "--num", "3*n^2+6", "--den", "n^2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "3");

    let out = rcx(&["limit", "--num", "n*log(n)", "--den", "n^2"]);
    assert_eq!(stdout(&out).trim(), "0");

    let out = rcx(&["limit", "--num", "n^2", "--den", "n*log(n)"]);
    assert_eq!(stdout(&out).trim(), "Infinite");

    let out = rcx(&["limit", "--num", "5*n", "--den", "5*n"]);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn limit_verify_agrees_on_clean_ratios() {
    let out = rcx(&["limit", "--num", "3*n^2+6", "--den", "n^2", "--verify"]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("agrees"));
}

#[test]
fn limit_verify_reports_abstention_without_failing() {
    // log-only separation: symbolically zero, numerically inconclusive
    let out = rcx(&["limit", "--num", "n", "--den", "n*log(n)", "--verify"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "0");
    assert!(stderr(&out).contains("abstained"));
}

#[test]
fn limit_verify_disagreement_exits_four() {
    // a sliver of a log exponent diverges symbolically but drifts slowly
    // enough to pass the oracle's settled-window check: the two referees
    // genuinely disagree and the exit code must say so
    let out = rcx(&["limit", "--num", "n^2*log(n)^0.01", "--den", "n^2", "--verify"]);
    assert_eq!(code(&out), 4);
    assert_eq!(stdout(&out).trim(), "Infinite");
    assert!(stderr(&out).contains("disagrees"));
}

#[test]
fn add_follows_the_dominance_and_rate_rules() {
    let out = rcx(&["add", "--left", "theta_2(n)", "--right", "theta_3(n^2)"]);
    assert_eq!(stdout(&out).trim(), "theta_3(n^2)");

    let out = rcx(&["add", "--left", "theta_2(n)", "--right", "theta_3(n)"]);
    assert_eq!(stdout(&out).trim(), "theta_2(2.5*n)");

    let out = rcx(&["add", "--left", "O_1(n^2)", "--right", "O_1(n)"]);
    assert_eq!(stdout(&out).trim(), "O_1(n^2)");
}

#[test]
fn add_rejects_mixed_kinds() {
    let out = rcx(&["add", "--left", "theta_2(n)", "--right", "O_1(n)"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("kind"));
}

#[test]
fn add_supports_small_classes_classically() {
    let out = rcx(&["add", "--left", "o(n)", "--right", "o(n^2)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "o(n^2)");
}

#[test]
fn fit_emits_documented_json_schema() {
    let csv = write_csv(REFERENCE_CSV);
    let out = rcx(&["fit", "--input", csv.path().to_str().unwrap(), "--output", "json"]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let metrics = parsed["metrics"].as_array().unwrap();
    assert_eq!(metrics.len(), 2);
    for metric in metrics {
        for key in ["name", "unit", "family", "degree", "coeff", "intercept", "score"] {
            assert!(metric.get(key).is_some(), "missing key {key}");
        }
    }
    assert_eq!(metrics[0]["name"], "time");
    assert_eq!(metrics[0]["family"], "POLY");
    assert_eq!(metrics[0]["degree"].as_f64().unwrap(), 2.0);
    assert_eq!(metrics[0]["coeff"].as_f64().unwrap(), 3.0);
    assert_eq!(metrics[0]["intercept"].as_f64().unwrap(), 6.0);
}

#[test]
fn fit_human_and_json_carry_identical_numbers() {
    let csv = write_csv(REFERENCE_CSV);
    let json_out = rcx(&["fit", "--input", csv.path().to_str().unwrap(), "--output", "json"]);
    let human_out = rcx(&["fit", "--input", csv.path().to_str().unwrap()]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let human = stdout(&human_out);
    let lines: Vec<&str> = human.lines().collect();
    assert_eq!(lines.len(), 2);
    for (line, metric) in lines.iter().zip(parsed["metrics"].as_array().unwrap()) {
        for key in ["degree", "coeff", "intercept", "score"] {
            let value = metric[key].as_f64().unwrap();
            assert!(
                line.contains(&format!("{value}")) || line.contains(&format!("{}", value as i64)),
                "line {line} missing {key} = {value}"
            );
        }
    }
}

#[test]
fn fit_missing_file_exits_two() {
    let out = rcx(&["fit", "--input", "/nonexistent/data.csv"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cannot open"));
}

#[test]
fn fit_short_series_exits_two() {
    let csv = write_csv("metric,unit,n,value\nm,u,10,1\nm,u,20,2\n");
    let out = rcx(&["fit", "--input", csv.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("at least 3"));
}

#[test]
fn fit_without_viable_model_exits_three() {
    // strictly decreasing data rejects every positive-coefficient candidate
    // once the constant family is excluded
    let csv = write_csv("metric,unit,n,value\nm,u,10,100\nm,u,20,50\nm,u,30,10\n");
    let out = rcx(&[
        "fit",
        "--input",
        csv.path().to_str().unwrap(),
        "--families",
        "POLY,NLOGN,EXP,LOG",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("no viable model"));
}

#[test]
fn fit_rejects_unknown_families_and_bad_degrees() {
    let csv = write_csv(REFERENCE_CSV);
    let out = rcx(&["fit", "--input", csv.path().to_str().unwrap(), "--families", "CUBIC"]);
    assert_eq!(code(&out), 2);
    let out = rcx(&["fit", "--input", csv.path().to_str().unwrap(), "--degrees", "0.5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn fit_degree_grid_is_configurable() {
    // n^2.5 data is recovered once the grid carries the fractional degree
    let points: Vec<String> = [10u64, 20, 40, 80]
        .iter()
        .map(|&n| format!("m,u,{n},{}", 2.0 * (n as f64).powf(2.5) + 3.0))
        .collect();
    let csv = write_csv(&format!("metric,unit,n,value\n{}\n", points.join("\n")));
    let out = rcx(&[
        "fit",
        "--input",
        csv.path().to_str().unwrap(),
        "--degrees",
        "1,2,2.5,3",
        "--output",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["metrics"][0]["degree"].as_f64().unwrap(), 2.5);
    assert!((parsed["metrics"][0]["coeff"].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn compare_finds_crossover_and_values() {
    let out = rcx(&["compare", "--f1", "100*n", "--f2", "n^2", "--horizon", "1000000"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "crossover: 101");

    let out = rcx(&["compare", "--f1", "n", "--f2", "n"]);
    assert_eq!(stdout(&out).trim(), "crossover: none <= 1000000");

    let out = rcx(&[
        "compare",
        "--f1",
        r#"{"family":"POLY","degree":2,"coeff":3,"intercept":6}"#,
        "--f2",
        "n^2",
        "--at",
        "20",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("f1(20) = 1206"), "{text}");
    assert!(text.contains("f2(20) = 400"), "{text}");
}

#[test]
fn compare_warns_when_dropping_negative_intercepts() {
    let out = rcx(&[
        "compare",
        "--f1",
        r#"{"family":"POLY","degree":1,"coeff":2,"intercept":-1}"#,
        "--f2",
        "n",
        "--at",
        "10",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("negative intercept"));
    // extrapolation keeps the exact intercept even though the algebra drops it
    assert!(stdout(&out).contains("f1(10) = 19"));
}

#[test]
fn compare_rejects_bad_inputs() {
    let out = rcx(&["compare", "--f1", "{broken", "--f2", "n"]);
    assert_eq!(code(&out), 2);
    let out = rcx(&["compare", "--f1", "n", "--f2", "n", "--horizon", "1"]);
    assert_eq!(code(&out), 2);
    let out = rcx(&[
        "compare",
        "--f1",
        r#"{"family":"POLY","degree":2,"coeff":-3}"#,
        "--f2",
        "n",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn help_documents_exit_codes() {
    let out = rcx(&["--help"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("Exit codes"), "{text}");
    assert!(text.contains("non-member"), "{text}");
}
