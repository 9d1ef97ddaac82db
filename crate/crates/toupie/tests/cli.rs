mod common;

use std::process::Command;

use common::{fixture_path, fixture_text, run, run_with_stdin};

#[test]
fn validate_accepts_a_fixture() {
    let o = run(&["validate", &fixture_path("canonical_t4")]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "valid\n");
}

#[test]
fn syntax_errors_carry_positions() {
    let o = run_with_stdin(&["validate", "-"], "branches 2\nlengths 1 x\n");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("-:2:11:"), "{}", o.stderr);
    let o = run_with_stdin(
        &["classify", "-"],
        "branches 2\nlengths 2 2\nrelation comb 1/0 1\n",
    );
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("-:3:15:"), "{}", o.stderr);
}

#[test]
fn inadmissible_ideals_are_invalid_input() {
    let o = run_with_stdin(
        &["validate", "-"],
        "branches 2\nlengths 1 2\nrelation comb 1 1\n",
    );
    assert_eq!(o.code, 2);
    let o = run_with_stdin(
        &["classify", "-"],
        "branches 2\nlengths 2 2\nrelation mono 1 0 1\n",
    );
    assert_eq!(o.code, 2);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&["classify"]).code, 1);
    assert_eq!(run(&["classify", "--jobs", "many", "x"]).code, 1);
    let o = run(&[
        "witness",
        &fixture_path("tilted_square"),
        "--family",
        "rad-p0",
        "--index",
        "5",
    ]);
    assert_eq!(o.code, 1);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn missing_files_are_invalid_input() {
    assert_eq!(run(&["validate", "/nonexistent/x.toupie"]).code, 2);
}

#[test]
fn capacity_exit_4() {
    let text = format!("branches 17\nlengths {}\n", vec!["2"; 17].join(" "));
    let o = run_with_stdin(&["classify", "-"], &text);
    assert_eq!(o.code, 4, "{}", o.stderr);
}

#[test]
fn verification_failures_exit_3() {
    let o = run(&[
        "classify",
        "--verify",
        &fixture_path("not_laura_no_branch_in_ideal"),
    ]);
    assert_eq!(o.code, 3);
    assert!(o.stdout.contains("verification: FAILED"));
    let o = run(&["classify", "--verify", &fixture_path("tilted_square")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("verification: ok"));
}

#[test]
fn classify_reports_label_and_case() {
    let o = run(&["classify", &fixture_path("tilted_square")]);
    assert_eq!(o.code, 0);
    assert!(
        o.stdout
            .starts_with("label: tilted-not-hereditary\nfired_case: MainTheorem(T)(i)\n"),
        "{}",
        o.stdout
    );
    let o = run(&["classify", &fixture_path("canonical_t3")]);
    assert!(o.stdout.contains("label: quasitilted-not-tilted"));
    assert!(o.stdout.contains("warning: (T)(ii) also matches"));
}

#[test]
fn stdin_and_file_agree() {
    let file = run(&["classify", "--json", &fixture_path("laura_t2")]);
    let stdin = run_with_stdin(&["classify", "--json", "-"], &fixture_text("laura_t2"));
    assert_eq!(file.stdout, stdin.stdout);
}

#[test]
fn json_evidence_has_the_documented_keys() {
    let o = run(&[
        "classify",
        "--json",
        "--verify",
        &fixture_path("not_laura_two_long"),
    ]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let want = [
        "schema",
        "label",
        "t",
        "m",
        "lengths",
        "simply_connected",
        "linkage_edges",
        "branches_in_I",
        "relations_per_branch",
        "canonical",
        "fired_case",
        "warnings",
        "witnesses",
        "verification",
    ];
    let mut sorted_want = want.to_vec();
    sorted_want.sort();
    let mut sorted_keys = keys.clone();
    sorted_keys.sort();
    assert_eq!(sorted_keys, sorted_want);
    assert_eq!(v["label"], "not-laura");
    assert_eq!(v["witnesses"][1]["family"], "infinite-family");
    assert_eq!(v["verification"]["ok"], true);
}

#[test]
fn json_key_order_is_stable() {
    let o = run(&["classify", "--json", &fixture_path("tilted_square")]);
    let order = [
        "\"schema\"",
        "\"label\"",
        "\"t\"",
        "\"m\"",
        "\"lengths\"",
        "\"fired_case\"",
        "\"witnesses\"",
    ];
    let pos: Vec<usize> = order.iter().map(|k| o.stdout.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{}", o.stdout);
}

#[test]
fn batches_are_sorted_and_independent_of_jobs() {
    let a = fixture_path("tilted_square");
    let b = fixture_path("canonical_t3");
    let c = fixture_path("weakly_shod_m0");
    let one = run(&["classify", "--verify", "--jobs", "1", &c, &a, &b]);
    let four = run(&["classify", "--verify", "--jobs", "4", &b, &a, &c]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.code, four.code);
    let headers: Vec<&str> = one
        .stdout
        .lines()
        .filter(|l| l.starts_with("== "))
        .collect();
    let mut sorted = headers.clone();
    sorted.sort();
    assert_eq!(headers, sorted);
    let j1 = run(&["classify", "--json", "--jobs", "1", &a, &b]);
    let j3 = run(&["classify", "--json", "--jobs", "3", &b, &a]);
    assert_eq!(j1.stdout, j3.stdout);
    assert!(serde_json::from_str::<serde_json::Value>(&j1.stdout)
        .unwrap()
        .is_array());
}

#[test]
fn batch_exit_code_is_the_worst_input() {
    let o = run(&[
        "classify",
        "--verify",
        &fixture_path("tilted_square"),
        &fixture_path("not_laura_no_branch_in_ideal"),
    ]);
    assert_eq!(o.code, 3);
    let o = run(&[
        "classify",
        &fixture_path("tilted_square"),
        "/nonexistent/x.toupie",
    ]);
    assert_eq!(o.code, 2);
}

#[test]
fn invariants_list_minimal_relations() {
    let o = run(&["invariants", &fixture_path("canonical_t4")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("canonical: lambdas -1/2 -1"));
    assert_eq!(o.stdout.matches("minimal_relation:").count(), 5);
    let j = run(&["invariants", "--json", &fixture_path("canonical_t4")]);
    let v: serde_json::Value = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(v["minimal_relations"].as_array().unwrap().len(), 5);
    assert_eq!(v["m"], 2);
}

#[test]
fn witness_prints_a_module_over_its_quiver() {
    let o = run(&[
        "witness",
        &fixture_path("not_laura_no_branch_in_ideal"),
        "--family",
        "no-branch-in-ideal",
        "--lambda",
        "5/2",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(
        o.stdout
            .starts_with("# family no-branch-in-ideal r=2 s=1 m=2 lambda=5/2\n"),
        "{}",
        o.stdout
    );
    assert!(o.stdout.contains("\ndims "));
    let o = run(&[
        "witness",
        &fixture_path("tilted_square"),
        "--family",
        "interval",
    ]);
    assert_eq!(o.code, 2);
}

#[test]
fn witness_quiver_out_writes_a_parseable_presentation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.toupie");
    let o = run(&[
        "witness",
        &fixture_path("not_laura_two_in_ideal"),
        "--family",
        "two-branches-in-ideal",
        "--quiver-out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let p = toupie::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(p.validate().is_valid());
}

#[test]
fn tau_defaults_to_rad_p0_and_round_trips() {
    let path = fixture_path("tilted_t4_long3");
    let o = run(&["tau", &path]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("dims 0 0 0 0 0 1 1\n"), "{}", o.stdout);
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.txt");
    std::fs::write(&m, &o.stdout).unwrap();
    let back = run(&["tau", &path, "--module", m.to_str().unwrap(), "--inverse"]);
    assert_eq!(back.code, 0);
    assert!(
        back.stdout.contains("dims 0 1 1 1 1 1 3\n"),
        "{}",
        back.stdout
    );
}

#[test]
fn tau_powers_reach_zero_on_a_projective() {
    let o = run(&[
        "tau",
        &fixture_path("tilted_square"),
        "--power",
        "2",
        "--inverse",
    ]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("dims 1 0 0 0\n"));
    let o = run(&["tau", &fixture_path("hereditary_linear"), "--power", "5"]);
    assert!(o.stdout.contains("dims 0 0 0 0\n"), "{}", o.stdout);
}

#[test]
fn truncate_recognizes_toupie_shapes() {
    let o = run(&[
        "truncate",
        &fixture_path("not_laura_no_branch_in_ideal"),
        "--vertices",
        "0,1.1,2.1,inf",
    ]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("arrow a3.1*a3.2 0 inf\n"));
    assert!(
        o.stdout
            .contains("#   lengths 1 2 2\n#   relation comb 0 1 -1\n"),
        "{}",
        o.stdout
    );
    let o = run(&[
        "truncate",
        &fixture_path("tilted_square"),
        "--vertices",
        "0,9.9",
    ]);
    assert_eq!(o.code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_toupie");
    let ok = Command::new(bin)
        .args(["validate", &fixture_path("tilted_square")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
    let verify = Command::new(bin)
        .args([
            "classify",
            "--verify",
            &fixture_path("not_laura_not_canonical"),
        ])
        .output()
        .unwrap();
    assert_eq!(verify.status.code(), Some(3));
}
