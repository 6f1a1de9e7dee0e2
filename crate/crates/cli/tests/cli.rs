//! End-to-end tests of the binary: file formats, exit codes, output shape.

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn soficlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soficlab"))
        .args(args)
        .output()
        .expect("spawn soficlab")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn sqrt_count_from_type_and_file() {
    let out = soficlab(&["sqrt-count", "--type", "1^4"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["count"], "10");
    assert_eq!(doc["degree"], 4);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perm.txt");
    fs::write(&path, "1 0 3 2\n").unwrap();
    let out = soficlab(&["sqrt-count", "--perm-file", path.to_str().unwrap()]);
    let doc = stdout_json(&out);
    assert_eq!(doc["type"], "2^2");
    assert_eq!(doc["count"], "2");
}

#[test]
fn bad_permutation_file_is_a_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perm.txt");
    fs::write(&path, "0 0 2\n").unwrap();
    let out = soficlab(&["sqrt-count", "--perm-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("index 1"), "stderr: {stderr}");
}

#[test]
fn schema_errors_exit_with_two() {
    // clap-level: unknown flag.
    let out = soficlab(&["sqrt-count", "--nope"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing required alternative.
    let out = soficlab(&["sqrt-count"]);
    assert_eq!(out.status.code(), Some(2));
    // Our own validation.
    let out = soficlab(&["near-commute", "--n", "4", "--mode", "bcyc"]);
    assert_eq!(out.status.code(), Some(2));
    let out = soficlab(&["expander", "--n", "30", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn extract_round_trip_through_files() {
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(20);
    let inst = soficlab::intertwiner::planted_instance(12, &mut rng).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.txt");
    let z = dir.path().join("z.txt");
    let y = dir.path().join("y.txt");
    fs::write(&x, format!("{}\n", inst.x)).unwrap();
    fs::write(&z, format!("{}\n", inst.z)).unwrap();
    fs::write(&y, format!("{}\n", inst.y)).unwrap();
    let out = soficlab(&[
        "extract",
        "--x-file",
        x.to_str().unwrap(),
        "--z-file",
        z.to_str().unwrap(),
        "--y-file",
        y.to_str().unwrap(),
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["epsilon"], "0/1");
    assert_eq!(doc["succeeded"], true);
    assert_eq!(doc["achieved_wx_zw"], "0/1");
    assert_eq!(doc["achieved_xw_wz"], "0/1");
    // The witness intertwines exactly; check it as a parsed permutation.
    let w: soficlab::Permutation = doc["witness"].as_str().unwrap().parse().unwrap();
    assert_eq!(
        w.compose(&inst.x).unwrap(),
        inst.z.compose(&w).unwrap()
    );
}

#[test]
fn rep_cut_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.json");
    // Amplified two-cycle rep: degree 4 = 2 * 2, fine-0 block invariant.
    fs::write(
        &rep,
        r#"{"generators":["a"],"degree":4,"images":{"a":[2,3,0,1]},"relators":[]}"#,
    )
    .unwrap();
    let set = dir.path().join("set.txt");
    fs::write(&set, "0 2\n").unwrap();
    let out = soficlab(&[
        "rep",
        "cut",
        "--rep-file",
        rep.to_str().unwrap(),
        "--set-file",
        set.to_str().unwrap(),
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["degree"], 2);
    assert_eq!(doc["images"]["a"], serde_json::json!([1, 0]));
}

#[test]
fn rep_defect_and_distance() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("rep.json");
    fs::write(
        &rep,
        r#"{"generators":["a","b"],"degree":5,"images":{"a":[1,2,3,4,0],"b":[2,3,4,0,1]},"relators":[]}"#,
    )
    .unwrap();
    let out = soficlab(&["rep", "defect", "--rep-file", rep.to_str().unwrap(), "--l", "3"]);
    let doc = stdout_json(&out);
    // b = a^2, so the length-3 word a a b^-1 is the identity: defect 1.
    assert_eq!(doc["defect"], "1/1");

    let out = soficlab(&[
        "rep",
        "distance",
        "--rep1",
        rep.to_str().unwrap(),
        "--rep2",
        rep.to_str().unwrap(),
        "--budget",
        "10",
        "--l",
        "2",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["squared"], "0/1");
}

#[test]
fn fullgroup_approx_and_distance() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.txt");
    fs::write(&map, "0 1/3 2/3\n1/3 1 2/3\n").unwrap();
    let out = soficlab(&[
        "fullgroup",
        "approx",
        "--map-file",
        map.to_str().unwrap(),
        "--epsilon",
        "1/10",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["n"], 3);
    assert_eq!(doc["achieved"], "0/1");
    assert_eq!(doc["within_2eps"], true);

    let id = dir.path().join("id.txt");
    fs::write(&id, "0 1 0\n").unwrap();
    let out = soficlab(&[
        "fullgroup",
        "distance",
        "--left",
        map.to_str().unwrap(),
        "--right",
        id.to_str().unwrap(),
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["distance"], "1/1");
}

#[test]
fn emitted_json_round_trips_and_rationals_stay_exact() {
    let out = soficlab(&[
        "expander", "--n", "12", "--trials", "3", "--seed", "5", "--mode", "exact",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    // Reserialising the parsed document reproduces the bytes exactly.
    let mut again = serde_json::to_string_pretty(&doc).unwrap();
    again.push('\n');
    assert_eq!(text, again);
    // Exact quantities are "p/q" strings, never JSON numbers.
    for record in doc["records"].as_array().unwrap() {
        let h = record["cheeger_or_bound"].as_str().unwrap();
        assert!(h.contains('/'), "cheeger value leaked as non-rational: {h}");
    }
    assert!(doc["summary"]["frequency"].as_str().unwrap().contains('/'));
}

#[test]
fn zero_trials_yields_header_only_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("empty.csv");
    let out = soficlab(&[
        "expander", "--n", "10", "--trials", "0", "--format", "csv", "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let content = fs::read_to_string(&out_path).unwrap();
    assert_eq!(content, "trial,lambda2,cheeger_or_bound,condition_holds\n");
    let summary: Value = serde_json::from_str(
        &fs::read_to_string(soficlab_cli::output::summary_path(&out_path)).unwrap(),
    )
    .unwrap();
    assert_eq!(summary["trials"], 0);
}

#[test]
fn near_commute_construct_mode() {
    let out = soficlab(&[
        "near-commute", "--n", "6", "--k", "2", "--mode", "construct", "--witnesses",
    ]);
    let doc = stdout_json(&out);
    // Two-segment constructions are exactly the cycle powers.
    assert_eq!(doc["constructed_count"], 6);
    let witnesses = doc["witnesses"].as_array().unwrap();
    assert!(witnesses.contains(&Value::String("1 2 3 4 5 0".into())));
}

#[test]
fn bcyc_mode_reports_bound_comparison() {
    let out = soficlab(&[
        "near-commute", "--n", "5", "--epsilon", "2/5", "--mode", "bcyc",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["cycles_total"], "24");
    assert!(doc["bcyc_count"].as_u64().is_some());
    assert!(doc["below_asymptotic_bound"].is_boolean());
}
