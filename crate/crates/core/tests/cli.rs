use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_johnson-walk"));
    c.env_remove("JOHNSON_WALK_MEMCAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn simulate_both_engines_agree() {
    let out = run(&[
        "simulate",
        "--family",
        "element-distinctness",
        "--n",
        "9",
        "--l",
        "2",
        "--engine",
        "both",
        "--seed",
        "1",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["full"]["engine"], "full");
    assert_eq!(v["reduced"]["engine"], "reduced");
    assert!(v["max_state_deviation"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["full"]["query_count"], v["reduced"]["query_count"]);
}

#[test]
fn simulate_without_solution_reports_reject() {
    let out = run(&[
        "simulate",
        "--family",
        "zero-sum-xor",
        "--n",
        "16",
        "--l",
        "3",
        "--no-plant",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["success_probability"].as_f64(), Some(0.0));
    let flags: Vec<&str> = v["flags"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_str().unwrap())
        .collect();
    assert!(flags.contains(&"no_marked"));
}

#[test]
fn simulate_reduced_at_a_million() {
    let out = run(&[
        "simulate", "--n", "1000000", "--l", "2", "--engine", "reduced",
    ]);
    assert!(out.status.success());
    assert!(stdout_json(&out)["overlap_w"].as_f64().unwrap() >= 0.97);
}

#[test]
fn memory_cap_exit_code_and_env_override() {
    let out = bin()
        .args(["simulate", "--n", "9", "--l", "2"])
        .env("JOHNSON_WALK_MEMCAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = run(&[
        "simulate",
        "--family",
        "element-distinctness",
        "--n",
        "40",
        "--l",
        "2",
        "--m",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(
        run(&["spectrum", "--n", "10", "--m", "1", "--l", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["simulate", "--n", "9", "--l", "2", "--m", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["simulate", "--family", "nonsense", "--n", "9", "--l", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["simulate", "--config", "/nonexistent/run.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"command": "simulate", "n": 9, "l": 2, "engine": "reduced", "t2": 0}"#,
    )
    .unwrap();
    let out = run(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["t2"], 0);
    assert_eq!(v["query_count"], 4);
    let out = run(&["simulate", "--config", cfg.to_str().unwrap(), "--t2", "2"]);
    assert_eq!(stdout_json(&out)["t2"], 2);

    std::fs::write(&cfg, r#"{"n": 9, "frobnicate": true}"#).unwrap();
    assert_eq!(
        run(&["simulate", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic_and_seventeen_digits() {
    let args = [
        "simulate",
        "--family",
        "sum-mod-q",
        "--n",
        "10",
        "--l",
        "2",
        "--seed",
        "42",
        "--samples",
        "20",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["samples"].as_array().unwrap().len(), 20);
    assert_eq!(v["seed"], 42);
    let line = text
        .lines()
        .find(|l| l.contains("\"success_probability\""))
        .unwrap();
    let number = line.split(':').nth(1).unwrap().trim().trim_end_matches(',');
    let mantissa = number.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{number}");

    let sweep = ["sweep", "--l", "2", "--n-values", "1000,100000,10000"];
    assert_eq!(run(&sweep).stdout, run(&sweep).stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "simulate",
        "--n",
        "100",
        "--l",
        "2",
        "--engine",
        "reduced",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 100);
}

#[test]
fn sweep_csv_and_slope() {
    let out = run(&["sweep", "--l", "2", "--n-min", "1000", "--n-max", "1000000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,m,t1,t2,queries,overlap_w,success");
    let ns: Vec<u64> = lines[1..5]
        .iter()
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(ns, vec![1000, 10_000, 100_000, 1_000_000]);
    let slope: f64 = lines[5].split(',').nth(1).unwrap().parse().unwrap();
    assert!((slope - 2.0 / 3.0).abs() <= 0.02);

    let out = run(&["sweep", "--l", "1", "--n-min", "1000", "--n-max", "1000000"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let slope: f64 = text
        .lines()
        .last()
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((slope - 0.5).abs() <= 0.02);

    let out = run(&["sweep", "--l", "2", "--n-min", "100", "--n-max", "10"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n,m,t1,t2,queries,overlap_w,success\n"
    );
}

#[test]
fn sweep_full_engine_counts_queries() {
    let out = run(&["sweep", "--l", "2", "--n-values", "8,9", "--engine", "full"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(row[..5], ["9", "4", "2", "2", "12"]);
}

#[test]
fn spectrum_reports() {
    let out = run(&["spectrum", "--n", "3", "--m", "1", "--l", "1"]);
    let v = stdout_json(&out);
    let phases: Vec<f64> = v["walk"]["phases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    let third = 2.0 * std::f64::consts::PI / 3.0;
    assert!(
        (phases[0] + third).abs() < 1e-12
            && phases[1].abs() < 1e-12
            && (phases[2] - third).abs() < 1e-12
    );

    let v = stdout_json(&run(&["spectrum", "--n", "10000", "--l", "2"]));
    assert_eq!(v["rotation"]["within_bounds"], true);
    assert_eq!(v["rotation"]["m"], 464);
}

#[test]
fn cost_commands() {
    let out = run(&["cost", "--table1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.contains("\n6,12/7,7/4,5/3,mss,"));

    let v = stdout_json(&run(&[
        "cost",
        "--optimize",
        "--l",
        "3",
        "--variant",
        "recursive",
    ]));
    assert!((v["fitted_exponent"].as_f64().unwrap() - 1.3).abs() <= 0.02);
    let v = stdout_json(&run(&[
        "cost",
        "--optimize",
        "--l",
        "5",
        "--variant",
        "mss",
    ]));
    assert!((v["fitted_exponent"].as_f64().unwrap() - 1.6).abs() <= 0.02);

    let v = stdout_json(&run(&[
        "cost",
        "--params",
        "--n",
        "9",
        "--l",
        "2",
        "--t2-rule",
        "literal",
    ]));
    assert_eq!(v["total_queries"], 20);
}

#[test]
fn verify_passes_and_catches_injected_fault() {
    let out = run(&["verify"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let out = run(&["verify", "--inject-fault", "c2-sign"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[FAIL] reflections_square_to_identity"));
    assert!(text.contains("[FAIL] full_reduced_equivalence"));
    let help = String::from_utf8(run(&["verify", "--help"]).stdout).unwrap();
    assert!(!help.contains("inject"));
}

#[test]
fn generate_then_simulate_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    let out = run(&[
        "generate",
        "--family",
        "l-clique",
        "--n",
        "8",
        "--l",
        "3",
        "--seed",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "simulate",
        "--instance",
        path.to_str().unwrap(),
        "--m",
        "4",
        "--t1",
        "1",
        "--t2",
        "1",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["mode"], "pairwise");
    assert_eq!(v["query_count"], 6 + 2 * 4);
}
