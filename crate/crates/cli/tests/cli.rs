//! End-to-end tests of the binary: exit-status contract, determinism per
//! seed, and the shape of each output format.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skew-howe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_of(output)).expect("stdout is one JSON document")
}

#[test]
fn verify_small_grid_exits_zero_with_all_checks_equal() {
    let out = run(&["verify", "--m", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["all_equal"], serde_json::json!(true));
    // Five checks for each power 0..=4.
    assert_eq!(doc["checks"].as_array().unwrap().len(), 25);
}

#[test]
fn verify_single_power_runs_five_checks() {
    let out = run(&["verify", "--m", "3", "--n", "3", "--p", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    assert!(checks.iter().all(|c| c["equal"] == serde_json::json!(true)));
}

#[test]
fn usage_errors_exit_sixty_four() {
    assert_eq!(run(&["verify", "--m", "0", "--n", "2"]).status.code(), Some(64));
    assert_eq!(run(&["table", "--m", "2", "--n", "2", "--p", "9"]).status.code(), Some(64));
    assert_eq!(run(&["table", "--m", "2", "--n", "2"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(
        run(&["character", "--m", "2", "--n", "3", "--p", "3", "--p-prime", "2"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        run(&["table", "--m", "2", "--n", "2", "--p", "2", "--format", "svg"])
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn resource_caps_exit_two() {
    assert_eq!(run(&["table", "--m", "7", "--n", "7", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--m", "7", "--n", "7"]).status.code(), Some(2));
    assert_eq!(
        run(&["sample", "--m", "7", "--n", "7", "--p", "3", "--sampler", "exact"])
            .status
            .code(),
        Some(2)
    );
    // The two stochastic samplers have no support cap.
    assert_eq!(
        run(&[
            "sample", "--m", "7", "--n", "7", "--p", "3", "--sampler", "chain", "--samples", "5",
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&["character", "--m", "4", "--n", "4", "--p", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["bijection", "--m", "6", "--n", "8"]).status.code(), Some(2));
}

#[test]
fn table_emits_exact_weights_in_enumeration_order() {
    let out = run(&["table", "--m", "2", "--n", "2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["atom_count"], serde_json::json!(2));
    let atoms = doc["atoms"].as_array().unwrap();
    assert_eq!(atoms[0]["partition"], serde_json::json!([2]));
    assert_eq!(atoms[0]["weight"]["exact"], serde_json::json!("1/2"));
    assert_eq!(atoms[1]["partition"], serde_json::json!([1, 1]));
    assert_eq!(atoms[1]["weight"]["exact"], serde_json::json!("1/2"));

    let csv = run(&["table", "--m", "2", "--n", "2", "--p", "2", "--format", "csv"]);
    assert_eq!(
        stdout_of(&csv),
        "partition,weight_num,weight_den,weight_float\n2,1,2,0.5\n1 1,1,2,0.5\n"
    );
}

#[test]
fn table_degenerate_powers_have_a_single_full_weight_atom() {
    let doc = json_of(&run(&["table", "--m", "3", "--n", "2", "--p", "0"]));
    assert_eq!(doc["atoms"], serde_json::json!([{"partition": [], "weight": {"exact": "1", "float": 1.0}}]));

    let doc = json_of(&run(&["table", "--m", "3", "--n", "2", "--p", "6"]));
    assert_eq!(doc["atom_count"], serde_json::json!(1));
    assert_eq!(doc["atoms"][0]["partition"], serde_json::json!([2, 2, 2]));
    assert_eq!(doc["atoms"][0]["weight"]["exact"], serde_json::json!("1"));
}

#[test]
fn same_seed_gives_byte_identical_output() {
    let args = [
        "sample", "--m", "3", "--n", "3", "--p", "4", "--samples", "200", "--seed", "17",
        "--sampler", "chain",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let different = run(&[
        "sample", "--m", "3", "--n", "3", "--p", "4", "--samples", "200", "--seed", "18",
        "--sampler", "chain",
    ]);
    assert_ne!(first.stdout, different.stdout);
}

#[test]
fn full_power_samples_are_always_the_rectangle() {
    let out = run(&[
        "sample", "--m", "2", "--n", "4", "--p", "8", "--sampler", "syt", "--samples", "20",
        "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout_of(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("index,partition"));
    let data: Vec<&str> = lines.collect();
    assert_eq!(data.len(), 20);
    for (idx, line) in data.iter().enumerate() {
        assert_eq!(*line, format!("{},4 4", idx + 1));
    }
}

#[test]
fn sample_json_reports_seed_counts_and_tv_distance() {
    let out = run(&[
        "sample", "--m", "3", "--n", "3", "--p", "4", "--samples", "500", "--seed", "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["seed"], serde_json::json!(9));
    assert_eq!(doc["sampler"], serde_json::json!("syt"));
    assert_eq!(doc["draws"].as_array().unwrap().len(), 500);
    let counts = doc["summary"]["counts"].as_array().unwrap();
    let total: u64 = counts.iter().map(|c| c["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 500);
    assert!(doc["summary"]["tv_distance"]["exact"].is_string());
}

#[test]
fn shape_csv_has_one_row_per_column_with_monotone_means() {
    let out = run(&[
        "shape", "--m", "4", "--n", "6", "--p", "12", "--samples", "80", "--seed", "3",
        "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout_of(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("x,mean_height,std_dev,n_samples"));
    let rows: Vec<Vec<f64>> = lines
        .map(|line| line.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 6);
    for window in rows.windows(2) {
        assert!(window[0][1] >= window[1][1], "mean heights must decrease");
    }
    assert!(rows.iter().all(|r| r[3] == 80.0));
}

#[test]
fn shape_at_power_zero_is_flat() {
    let out = run(&[
        "shape", "--m", "3", "--n", "4", "--p", "0", "--samples", "5", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout_of(&out).lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[1], "0");
        assert_eq!(fields[2], "0");
    }
}

#[test]
fn shape_svg_is_well_formed_with_overlays_and_seed_comment() {
    let out = run(&[
        "shape", "--m", "3", "--n", "4", "--p", "6", "--samples", "30", "--seed", "11",
        "--format", "svg",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg = stdout_of(&out);
    assert!(svg.starts_with("<?xml version=\"1.0\""));
    assert!(svg.contains("seed=11"));
    assert!(svg.contains("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(svg.trim_end().ends_with("</svg>"));
    // 20 overlays (out of 30 samples) plus the mean staircase.
    assert_eq!(svg.matches("<path").count(), 21);
}

#[test]
fn shape_requires_two_samples() {
    let out = run(&["shape", "--m", "3", "--n", "4", "--p", "6", "--samples", "1"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn character_reports_exact_values_on_both_sides() {
    let out = run(&["character", "--m", "2", "--n", "3", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["all_match"], serde_json::json!(true));
    let rows = doc["restriction"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let by_type = |t: serde_json::Value| {
        rows.iter()
            .find(|r| r["cycle_type"] == t)
            .expect("cycle type present")
            .clone()
    };
    let fixed = by_type(serde_json::json!([1, 1]));
    assert_eq!(fixed["lhs"]["exact"], serde_json::json!("1"));
    assert_eq!(fixed["rhs"]["exact"], serde_json::json!("1"));
    let swap = by_type(serde_json::json!([2]));
    assert_eq!(swap["lhs"]["exact"], serde_json::json!("1/5"));
    assert_eq!(swap["rhs"]["exact"], serde_json::json!("1/5"));
}

#[test]
fn character_independence_runs_when_p_prime_given() {
    let out = run(&[
        "character", "--m", "2", "--n", "3", "--p", "2", "--p-prime", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["p_independence"]["status"], serde_json::json!("ok"));
    assert_eq!(doc["p_independence"]["all_match"], serde_json::json!(true));
    assert_eq!(doc["p_independence"]["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn character_out_of_cap_subchecks_are_skipped_not_fatal() {
    // p = 6 exceeds the pair-conjugation cap and the dense-operator cap,
    // but the restriction table itself is in range.
    let out = run(&["character", "--m", "2", "--n", "3", "--p", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["jm_partial_trace"]["status"], serde_json::json!("skipped"));
    assert_eq!(doc["pair_conjugation"]["status"], serde_json::json!("skipped"));
    assert_eq!(doc["restriction"]["all_match"], serde_json::json!(true));
}

#[test]
fn bijection_reproduces_the_reference_pair() {
    let out = run(&["bijection", "--m", "4", "--n", "8", "--shape", "7,5,4,2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["round_trip"], serde_json::json!(true));
    assert_eq!(doc["count_preserved"], serde_json::json!(true));
    assert_eq!(doc["pair_count"], serde_json::json!(300));
    let input = serde_json::json!([
        [1, 1, 1, 2, 2, 3, 3],
        [2, 2, 3, 3, 3],
        [3, 3, 4, 4],
        [4, 4]
    ]);
    let expected = serde_json::json!([
        [1, 1, 1, 1, 1, 2],
        [2, 2, 2, 4],
        [3, 4, 4],
        [4]
    ]);
    let pair = doc["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["input"] == input)
        .expect("reference filling is enumerated");
    assert_eq!(pair["output"], expected);
    assert_eq!(pair["output_shape"], serde_json::json!([6, 4, 3, 1]));
}

#[test]
fn bijection_empty_shape_pairs_with_the_full_rectangle() {
    let out = run(&["bijection", "--m", "2", "--n", "3", "--shape", ""]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["pair_count"], serde_json::json!(1));
    let pair = &doc["pairs"][0];
    assert_eq!(pair["input"], serde_json::json!([]));
    assert_eq!(pair["output_shape"], serde_json::json!([3, 3]));
    assert_eq!(pair["output"], serde_json::json!([[1, 1, 1], [2, 2, 2]]));
}

#[test]
fn bijection_whole_rectangle_scope_preserves_counts() {
    let out = run(&["bijection", "--m", "3", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["round_trip"], serde_json::json!(true));
    assert_eq!(doc["count_preserved"], serde_json::json!(true));
    for row in doc["shapes"].as_array().unwrap() {
        assert_eq!(row["tableau_count"], row["complement_tableau_count"]);
    }
}

#[test]
fn out_flag_writes_the_document_to_a_file() {
    let dir = std::env::temp_dir().join(format!("skew-howe-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let out = run(&[
        "table", "--m", "2", "--n", "2", "--p", "2", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("partition,weight_num"));
    std::fs::remove_dir_all(&dir).unwrap();
}
