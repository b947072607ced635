use std::process::{Command, Output};

fn ehrenfest(command_line: &str) -> Output {
    ehrenfest_args(&command_line.split_whitespace().collect::<Vec<_>>())
}

fn ehrenfest_args(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ehrenfest"))
        .args(args)
        .env_remove("EHRENFEST_MAX_STATES")
        .env_remove("EHRENFEST_MAX_TYPES")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn csv_preamble_names_command_parameters_and_ordering() {
    let out = ehrenfest("fk --shuffle cyclic-left -r 3 -n 2");
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# ehrenfest "));
    assert_eq!(lines.next().unwrap(), "# r=3 n=2 shuffle=cyclic-left");
    assert!(lines
        .next()
        .unwrap()
        .contains("lexicographically decreasing"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let commands = [
        "table -r 3 -n 4",
        "tvd --shuffle cyclic-bidir -r 4 -n 5 --n-max 40",
        "evolve --shuffle any-other -r 3 -n 6 --steps 7 --format json",
        "simulate --shuffle any-other -r 3 -n 3 --steps 10 --trials 20000 --seed 9",
    ];
    for command in commands {
        let a = ehrenfest(command);
        let b = ehrenfest(command);
        assert!(a.status.success(), "{command}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{command}");
    }
}

#[test]
fn table_trivial_row_and_column_are_one() {
    let out = ehrenfest("table -r 2 -n 2");
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows[0][0], "k");
    assert_eq!(rows[1][0], "(2;0)");
    for field in &rows[1][1..] {
        let v: f64 = field.parse().unwrap();
        assert!(v == 1.0 || v == 0.0);
    }
    // Column (1;1) of row (1;1) is zero; row (0;2) alternates.
    let row = &rows[3];
    let values: Vec<f64> = row[1..].iter().map(|f| f.parse().unwrap()).collect();
    assert_eq!(values, vec![1.0, 0.0, -1.0, 0.0, 1.0, 0.0]);
}

#[test]
fn cutoff_reports_threshold_and_guarantee() {
    let out = ehrenfest("cutoff -r 3 -n 20 -c 0");
    assert!(out.status.success());
    let rows = data_rows(&stdout(&out));
    let header = &rows[0];
    let value = |name: &str| rows[1][header.iter().position(|h| h == name).unwrap()].clone();
    let steps: f64 = value("steps").parse().unwrap();
    assert!((steps - 146.48163848908).abs() < 1e-9);
    assert_eq!(value("steps_ceil"), "147");
    let guarantee: f64 = value("guarantee").parse().unwrap();
    assert_eq!(guarantee, 0.25);
    assert_eq!(value("holds"), "true");
}

#[test]
fn negative_offset_is_accepted() {
    let out = ehrenfest("cutoff -r 4 -n 6 -c -1.5 --format json");
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["c"], -1.5);
}

#[test]
fn verify_reports_pass() {
    let out = ehrenfest("verify --shuffle cyclic-left -r 3 -n 3 --n-steps 15");
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "pass");
    assert!(report["max_error"].as_f64().unwrap() <= 1e-10);
    assert_eq!(report["steps_checked"], 15);
}

#[test]
fn tvd_for_r2_includes_parity_columns() {
    let out = ehrenfest("tvd --shuffle any-other -r 2 -n 4 --n-max 60");
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows[0].last().unwrap(), "tv_parity_limit");
    let last = rows.last().unwrap();
    assert_eq!(last[0], "60");
    assert_eq!(last[5], "even");
    let raw: f64 = last[1].parse().unwrap();
    let parity: f64 = last[6].parse().unwrap();
    assert!((raw - 0.5).abs() < 1e-6);
    assert!(parity < 1e-6);
}

#[test]
fn simulate_json_records_seed_and_rng() {
    let out = ehrenfest("simulate --shuffle any-other -r 3 -n 3 --steps 10 --seed 4 --format json");
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["seed"], 4);
    assert_eq!(report["trials"], 100_000);
    assert!(report["rng"].as_str().unwrap().contains("ChaCha8"));
    assert!(report["tv_empirical_vs_exact"].as_f64().unwrap() <= 0.02);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fk.csv");
    let out = ehrenfest_args(&[
        "fk",
        "--shuffle",
        "any-other",
        "-r",
        "3",
        "-n",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(data_rows(&text).len(), 1 + 10);
}

#[test]
fn invalid_arguments_exit_with_2() {
    let out = ehrenfest("table -r 1 -n 3");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("r >= 2"));

    let out = ehrenfest("fk --shuffle sideways -r 3 -n 3");
    assert_eq!(out.status.code(), Some(2));

    let out = ehrenfest("verify --shuffle any-other -r 2 -n 2 --n-steps 1 --format csv");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("JSON only"));
}

#[test]
fn caps_exit_with_3_and_name_the_override() {
    let out = ehrenfest("table -r 30 -n 30");
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.contains("composition count"));
    assert!(err.contains("EHRENFEST_MAX_TYPES"));

    let out = ehrenfest("verify --shuffle any-other -r 5 -n 6 --n-steps 1");
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.contains("configuration count 15625"));
    assert!(err.contains("EHRENFEST_MAX_STATES"));

    let out = Command::new(env!("CARGO_BIN_EXE_ehrenfest"))
        .args([
            "verify",
            "--shuffle",
            "any-other",
            "-r",
            "5",
            "-n",
            "6",
            "--n-steps",
            "1",
        ])
        .env("EHRENFEST_MAX_STATES", "20000")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
}
