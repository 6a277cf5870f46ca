//! End-to-end checks of the binary's interface contract: flags, file
//! outputs, formats, the environment-variable default directory, and
//! exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn usub() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_usub"));
    c.env_remove("USUB_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    usub().args(args).output().expect("binary runs")
}

fn parse_stdout(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn classify_emits_a_versioned_report_with_one_row_per_hyperplane() {
    let out = run(&[
        "su2-classify",
        "--n",
        "1",
        "--restarts",
        "6",
        "--samples",
        "4",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = parse_stdout(&out);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["command"], "su2-classify");
    assert_eq!(report["rows"].as_array().unwrap().len(), 2);
    let weights: Vec<i64> = report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["quotient_weight"].as_i64().unwrap())
        .collect();
    assert_eq!(weights, vec![-1, 1]);
    assert_eq!(report["config"]["n"], 1);
    assert!(report["config"]["seed"].is_u64());
    assert!(!report["consistency_flags"].as_array().unwrap().is_empty());
}

#[test]
fn out_flag_writes_json_with_a_csv_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("classify.json");
    let out = run(&[
        "su2-classify",
        "--n",
        "1",
        "--restarts",
        "6",
        "--samples",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json = std::fs::read_to_string(&path).unwrap();
    assert!(json.contains("\"schema_version\": 1"));
    let csv = std::fs::read_to_string(dir.path().join("classify.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "i,quotient_weight,base_space,class,vanishes,verdict,min_distance"
    );
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn the_environment_variable_supplies_the_default_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = usub()
        .env("USUB_OUT_DIR", dir.path())
        .args(["euler", "--group", "su2", "--subgroup", "t"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("euler.json").exists());
    assert!(dir.path().join("euler.csv").exists());
}

#[test]
fn csv_format_prints_the_table_on_stdout() {
    let out = run(&["euler", "--group", "su3", "--subgroup", "t", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("group,subgroup,rank,weyl_order,components,chi,"));
    assert!(text.contains("SU(3)"));
    assert!(text.contains(",6,"));
}

#[test]
fn bad_arguments_exit_with_the_configuration_code() {
    for args in [
        &["su2-classify", "--n", "0"][..],
        &["su2-classify", "--n", "notanumber"][..],
        &["euler", "--group", "so5", "--subgroup", "t"][..],
        &["euler", "--group", "su2", "--subgroup", "u2"][..],
        &["solvable", "--size", "1"][..],
        &["run", "--config", "/definitely/not/a/file.toml"][..],
        &["no-such-subcommand"][..],
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(1),
            "args {args:?} stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn help_exits_cleanly_and_lists_every_subcommand() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for sub in [
        "su2-classify",
        "counterexample",
        "levi-demo",
        "schur",
        "solvable",
        "euler",
        "run",
    ] {
        assert!(text.contains(sub), "help is missing {sub}");
    }
}

#[test]
fn run_subcommand_reads_a_config_file_and_echoes_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.toml");
    std::fs::write(
        &cfg,
        r#"
            seed = 99

            [group]
            kind = "su2"

            [representation]
            kind = "irrep"
            degree = 2

            [subspace]
            kind = "weight-complement"
            killed = [0]

            [search]
            restarts = 6
            samples = 4
        "#,
    )
    .unwrap();
    let out = run(&["run", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = parse_stdout(&out);
    assert_eq!(report["config"]["seed"], 99);
    assert_eq!(report["config"]["file"]["seed"], 99);
    assert_eq!(report["command"], "run");
    assert!(!report["verdicts"].as_array().unwrap().is_empty());
}

#[test]
fn cli_seed_overrides_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.toml");
    std::fs::write(
        &cfg,
        r#"
            seed = 99

            [group]
            kind = "torus"
            k = 1

            [representation]
            kind = "characters"
            weights = [[1], [2]]

            [subspace]
            kind = "span"
            vectors = [[[1.0, 0.0], [0.0, 0.0]]]

            [search]
            restarts = 4
            samples = 3
        "#,
    )
    .unwrap();
    let out = run(&["run", "--config", cfg.to_str().unwrap(), "--seed", "123"]);
    let report = parse_stdout(&out);
    assert_eq!(report["config"]["seed"], 123);
}

fn report_path(dir: &Path, name: &str) -> std::path::PathBuf {
    dir.join(name)
}

#[test]
fn identical_invocations_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = report_path(dir.path(), "a.json");
    let b = report_path(dir.path(), "b.json");
    for (path, _) in [(&a, 0), (&b, 1)] {
        let out = run(&[
            "solvable",
            "--size",
            "3",
            "--trials",
            "2",
            "--restarts",
            "6",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b);
    assert_eq!(
        std::fs::read(a.with_extension("csv")).unwrap(),
        std::fs::read(b.with_extension("csv")).unwrap()
    );
}
