mod common;

use std::process::{Command, Output};

use serde_json::Value;

fn hsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsp"))
        .args(args)
        .env_remove("HSP_SIZE_CAP")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = hsp(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn info_reports_structure() {
    let v = json(&["info", "--group", "cyclic:2"]);
    assert_eq!(v["order"], 2);
    assert_eq!(v["subgroups"], 2);
    let v = json(&["info", "--group", "cyclic:1"]);
    assert_eq!(
        (v["order"].as_u64(), v["subgroups"].as_u64()),
        (Some(1), Some(1))
    );
    let v = json(&["info", "--group", "symmetric:3"]);
    assert_eq!(v["order"], 6);
    assert_eq!(v["subgroups"], 6);
    assert_eq!(v["subgroup_classes"], 4);
    assert_eq!(v["element_classes"], 3);
    assert_eq!(v["abelian"], false);
}

#[test]
fn subgroups_and_chartable() {
    let v = json(&["subgroups", "--group", "dihedral:3"]);
    assert_eq!(v["count"], 6);
    let sizes: Vec<u64> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, vec![1, 3, 1, 1]);
    let v = json(&["chartable", "--group", "symmetric:3"]);
    assert_eq!(v["classes"], serde_json::json!([1, 3, 2]));
    let dims: Vec<u64> = v["irreps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 1, 2]);
}

#[test]
fn measure_z2_optimal_plan() {
    let v = json(&["measure", "--group", "cyclic:2", "--method", "optimal"]);
    let plan = v["measurements"][0]["plan"].as_array().unwrap();
    assert_eq!(plan.len(), 2);
    for entry in plan {
        assert!((entry["e"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn measure_z2_pgm_dump() {
    let v = json(&[
        "measure",
        "--group",
        "cyclic:2",
        "--method",
        "pgm",
        "--dump-operators",
    ]);
    let ops = v["measurements"][0]["operators"].as_array().unwrap();
    // subgroup 1 is Z₂; its operator is (2/3)|+⟩⟨+|
    let re = &ops[1]["operator"]["re"];
    for i in 0..2 {
        for j in 0..2 {
            assert!((re[i][j].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-10);
        }
    }
}

#[test]
fn dihedral_one_matches_cyclic_two() {
    let a = json(&["verify", "--group", "dihedral:1"]);
    let b = json(&["verify", "--group", "cyclic:2"]);
    assert_eq!(a["reports"], b["reports"]);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["verify", "--group", "heisenberg:2", "--seed", "42"];
    assert_eq!(hsp(&args).stdout, hsp(&args).stdout);
    let args = ["measure", "--group", "symmetric:3", "--dump-operators"];
    assert_eq!(hsp(&args).stdout, hsp(&args).stdout);
}

#[test]
fn sweep_rows_in_input_order() {
    let out = hsp(&[
        "sweep",
        "--group",
        "cyclic:2,cyclic:1,dihedral:3,dihedral:4",
    ]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header = reader.headers().unwrap().clone();
    assert_eq!(
        header.iter().collect::<Vec<_>>(),
        [
            "schema_version",
            "group",
            "order",
            "n_subgroups",
            "method",
            "valid",
            "certified_optimal",
            "p_succ",
            "error"
        ]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    let groups: Vec<&str> = rows.iter().step_by(3).map(|r| &r[1]).collect();
    assert_eq!(groups, ["cyclic:2", "cyclic:1", "dihedral:3", "dihedral:4"]);
    let p = |r: &csv::StringRecord| r[7].parse::<f64>().unwrap();
    assert!((p(&rows[0]) - 2.0 / 3.0).abs() < 1e-9);
    assert!((p(&rows[2]) - 0.75).abs() < 1e-9);
    for r in &rows[3..6] {
        assert!((p(r) - 1.0).abs() < 1e-9);
    }
    for r in &rows[6..] {
        match &r[4] {
            "optimal" => assert_eq!(&r[6], "true"),
            "ip" => assert!(&r[5] == "false" || &r[6] == "false"),
            _ => {}
        }
    }
}

#[test]
fn sweep_annotates_failures_per_row() {
    let out = hsp(&["sweep", "--group", "cyclic:2,cyclic:40", "--cap", "30"]);
    assert_eq!(code(&out), 3);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[1..4].iter().all(|l| l.ends_with(',')));
    assert!(lines[4..].iter().all(|l| l.contains("size cap")));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&hsp(&["info", "--group", "bogus:3"])), 2);
    assert_eq!(code(&hsp(&["info", "--group", "cyclic:201"])), 3);
    assert_eq!(
        code(&hsp(&["info", "--group", "cyclic:20", "--cap", "10"])),
        3
    );
    let env_cap = Command::new(env!("CARGO_BIN_EXE_hsp"))
        .args(["info", "--group", "cyclic:20"])
        .env("HSP_SIZE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(code(&env_cap), 3);
    assert_eq!(code(&hsp(&["info", "--group", "symmetric:6"])), 3);
    assert_eq!(
        code(&hsp(&["info", "--group", "cyclic:3", "--seed", "0"])),
        2
    );
}

#[test]
fn class_weight_priors() {
    let dir = tempfile::tempdir().unwrap();
    // S₃ classes: {e}, three order-2, A₃, S₃
    let good = dir.path().join("good.json");
    std::fs::write(
        &good,
        r#"{"weights":[{"class_index":0,"p":0.25},{"class_index":1,"p":0.1},{"class_index":2,"class_rep_order":3,"p":0.2},{"class_index":3,"p":0.25}]}"#,
    )
    .unwrap();
    let prior = format!("class-weights:@{}", good.display());
    let v = json(&[
        "verify",
        "--group",
        "symmetric:3",
        "--method",
        "optimal",
        "--prior",
        &prior,
    ]);
    assert_eq!(
        v["reports"][0]["report"]["verdict"]["certified_optimal"],
        true
    );

    let conflicting = dir.path().join("bad.json");
    std::fs::write(
        &conflicting,
        r#"{"weights":[{"class_index":1,"p":0.1},{"class_index":1,"p":0.2},{"class_index":0,"p":0.5}]}"#,
    )
    .unwrap();
    let prior = format!("class-weights:@{}", conflicting.display());
    assert_eq!(
        code(&hsp(&[
            "measure",
            "--group",
            "symmetric:3",
            "--prior",
            &prior
        ])),
        4
    );

    let bad_sum = dir.path().join("sum.json");
    std::fs::write(&bad_sum, r#"{"weights":[{"class_index":0,"p":0.5}]}"#).unwrap();
    let prior = format!("class-weights:@{}", bad_sum.display());
    assert_eq!(
        code(&hsp(&[
            "measure",
            "--group",
            "symmetric:3",
            "--prior",
            &prior
        ])),
        1
    );
}

#[test]
fn cayley_descriptor_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("q8.json");
    let body = serde_json::json!({"order": 8, "table": common::q8_table()});
    std::fs::write(&table, body.to_string()).unwrap();
    let out_path = dir.path().join("report.json");
    let group = format!("cayley:@{}", table.display());
    let out = hsp(&[
        "verify",
        "--group",
        &group,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["order"], 8);
    let opt = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["method"] == "optimal")
        .unwrap();
    assert_eq!(opt["report"]["verdict"]["certified_optimal"], true);
}

#[test]
fn pretty_output_rounds() {
    let out = hsp(&["verify", "--group", "cyclic:2", "--format", "pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0.666667"));
    assert!(text.contains("0.750000"));
    assert_eq!(
        code(&hsp(&["measure", "--group", "cyclic:2", "--format", "csv"])),
        1
    );
}
