use std::path::Path;

use rmtlab::cli::{run, ExperimentConfig};
use serde_json::Value;

fn run_args(args: &[&str]) -> i32 {
    let mut argv = vec!["rmtlab"];
    argv.extend_from_slice(args);
    run(argv)
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// Data rows of a CSV output (header comments and column line removed).
fn csv_rows(p: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(p).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    lines.next().expect("column line");
    lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn eqm_reports_semicircle_support() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eqm.json");
    assert_eq!(
        run_args(&[
            "eqm",
            "--potential",
            "0,0,0.5",
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let doc = read_json(&out);
    let s = &doc["results"]["support"];
    assert!((s[0].as_f64().unwrap() + 2.0).abs() < 1e-10);
    assert!((s[1].as_f64().unwrap() - 2.0).abs() < 1e-10);
    assert!(doc["diagnostics"]["artifact_version"]
        .as_str()
        .unwrap()
        .starts_with("rmtlab"));
}

#[test]
fn config_round_trips_through_json_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.json");
    let out_s = out.to_str().unwrap();
    assert_eq!(
        run_args(&[
            "kernel",
            "--family",
            "bessel-hard",
            "--alpha",
            "0.5",
            "--grid",
            "0.5:2:4",
            "--out",
            out_s
        ]),
        0
    );
    let doc = read_json(&out);
    let cfg: ExperimentConfig = serde_json::from_value(doc["config"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&cfg).unwrap(), doc["config"]);
    assert_eq!(cfg.command, "kernel");
    assert_eq!(cfg.kernel.as_ref().unwrap().alpha, Some(0.5));
    assert_eq!(cfg.output.path.as_deref(), Some(out_s));
}

#[test]
fn sine_kernel_table_has_unit_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.csv");
    assert_eq!(
        run_args(&[
            "kernel",
            "--family",
            "sine",
            "--grid",
            "-3:3:121",
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 121 * 121);
    let diag: Vec<f64> = rows
        .iter()
        .filter(|r| r[0] == r[1])
        .map(|r| r[2].parse().unwrap())
        .collect();
    assert_eq!(diag.len(), 121);
    assert!(diag.iter().all(|&d| d == 1.0));
}

#[test]
fn bulk_convergence_rows_decrease() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("conv.csv");
    let args = [
        "converge",
        "--potential",
        "0,0,0.5",
        "--mode",
        "bulk",
        "--n",
        "32,64,128",
        "--out",
    ];
    let mut argv = args.to_vec();
    argv.push(out.to_str().unwrap());
    assert_eq!(run_args(&argv), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 3);
    let sup: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(sup[0] > sup[1] && sup[1] > sup[2], "{sup:?}");
    assert_eq!(rows[0][1], "bulk");
}

#[test]
fn every_subcommand_has_help() {
    let flags = [
        (
            "eqm",
            vec![
                "--potential",
                "--grid",
                "--oracle",
                "--out",
                "--format",
                "--workers",
            ],
        ),
        ("kernel", vec!["--family", "--alpha", "--s", "--grid"]),
        (
            "oppoly",
            vec!["--n-max", "--n-param", "--table", "--kernel-n"],
        ),
        ("converge", vec!["--mode", "--n", "--x-star", "--grid"]),
        ("rh", vec!["--n", "--delta"]),
        (
            "sample",
            vec![
                "--ensemble",
                "--beta",
                "--count",
                "--seed",
                "--steps",
                "--histogram",
                "--window",
                "--batch-out",
            ],
        ),
    ];
    for (cmd, expected) in flags {
        assert_eq!(run_args(&[cmd, "--help"]), 0, "{cmd}");
        let text = rmtlab_help(cmd);
        for f in expected {
            assert!(text.contains(f), "{cmd} help lacks {f}");
        }
    }
}

fn rmtlab_help(cmd: &str) -> String {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_rmtlab"))
        .args([cmd, "--help"])
        .output()
        .unwrap();
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn malformed_potential_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad.csv");
    assert_eq!(
        run_args(&[
            "eqm",
            "--potential",
            "0,0,zero",
            "--out",
            out.to_str().unwrap()
        ]),
        2
    );
    assert_eq!(
        run_args(&[
            "converge",
            "--potential",
            "1,,2",
            "--mode",
            "bulk",
            "--n",
            "8",
            "--out",
            out.to_str().unwrap()
        ]),
        2
    );
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    assert_eq!(
        run_args(&["kernel", "--family", "sine", "--grid", "1:0:3"]),
        2
    );
    assert_eq!(run_args(&["frobnicate"]), 2);
}

#[test]
fn numerical_failure_exits_3() {
    // One burn-in sweep cannot tune the proposal width: on a nearly flat
    // weight (N = 1) almost every small move is accepted.
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let args = [
        "sample",
        "--ensemble",
        "invariant",
        "--beta",
        "1",
        "--n",
        "4",
        "--n-param",
        "1",
    ];
    let mut argv = args.to_vec();
    argv.extend([
        "--steps",
        "2",
        "--count",
        "160",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run_args(&argv), 3);
    assert!(!out.exists());
}

#[test]
fn repeated_runs_are_identical_apart_from_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let strip = |p: &Path| {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with("# generated_unix"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let out = dir.path().join("s.csv");
    let bin = dir.path().join("s.rmtb");
    let mut texts = Vec::new();
    for workers in ["1", "3"] {
        let args = [
            "sample",
            "--beta",
            "1",
            "--n",
            "24",
            "--count",
            "40",
            "--seed",
            "5",
            "--workers",
            workers,
        ];
        let mut argv = args.to_vec();
        argv.extend([
            "--out",
            out.to_str().unwrap(),
            "--batch-out",
            bin.to_str().unwrap(),
        ]);
        assert_eq!(run_args(&argv), 0);
        texts.push((strip(&out), std::fs::read(&bin).unwrap()));
    }
    // Only the configured worker count differs between the two headers.
    assert_eq!(
        texts[0].0.replace("\"workers\":1", "\"workers\":3"),
        texts[1].0
    );
    assert_eq!(texts[0].1, texts[1].1);
}

#[test]
fn oppoly_and_rh_write_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    assert_eq!(
        run_args(&[
            "oppoly",
            "--n-max",
            "10",
            "--n-param",
            "10",
            "--out",
            out.to_str().unwrap()
        ]),
        0
    );
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 11);
    let a3: f64 = rows[3][1].parse().unwrap();
    assert!((a3 - 0.3).abs() < 1e-12);
    let rh_out = dir.path().join("rh.json");
    assert_eq!(
        run_args(&["rh", "--n", "64,128", "--out", rh_out.to_str().unwrap()]),
        0
    );
    let doc = read_json(&rh_out);
    let m = doc["diagnostics"]["matching"].as_array().unwrap();
    assert_eq!(m.len(), 4);
}

#[test]
fn cache_directory_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.csv");
    // Other tests may pick the variable up too; cached records reproduce fresh results.
    std::env::set_var("RMT_CACHE_DIR", dir.path().join("cache"));
    assert_eq!(
        run_args(&["oppoly", "--n-max", "6", "--out", out.to_str().unwrap()]),
        0
    );
    assert_eq!(run_args(&["eqm", "--out", out.to_str().unwrap()]), 0);
    std::env::remove_var("RMT_CACHE_DIR");
    let names: Vec<String> = std::fs::read_dir(dir.path().join("cache"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(names.iter().any(|n| n.starts_with("measure-")), "{names:?}");
    assert!(
        names.iter().any(|n| n.starts_with("recurrence-")),
        "{names:?}"
    );
}
