//! End-to-end tests of the command-line interface, run against the compiled
//! binary.

use std::process::{Command, Output};

const CSV_HEADER: &str = "delta,re_chi_e,im_chi_e,re_chi_m,im_chi_m,re_xi_eh,im_xi_eh,\
                          re_xi_he,im_xi_he,re_eps,im_eps,re_mu,im_mu,re_n,im_n,fom";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chiral4"))
        .args(args)
        .env("RUST_BACKTRACE", "0")
        .output()
        .expect("failed to spawn binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_config(dir: &tempfile::TempDir, body: &str) -> String {
    let path = dir.path().join("scheme.cfg");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn zero_density_sweep_prints_trivial_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "eta = 0.0\n");
    let out = run(&[
        "sweep",
        "--config",
        &cfg,
        "--delta-min",
        "-1",
        "--delta-max",
        "1",
        "--points",
        "3",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], CSV_HEADER.replace(char::is_whitespace, ""));
    for row in &lines[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 16);
        assert_eq!(fields[13].parse::<f64>().unwrap(), 1.0); // re_n
        assert_eq!(fields[14].parse::<f64>().unwrap(), 0.0); // im_n
        assert_eq!(fields[15], "inf"); // lossless medium
    }
}

#[test]
fn point_emits_one_json_object_with_all_columns() {
    let out = run(&["point", "--delta", "0"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let obj = value.as_object().unwrap();
    for key in [
        "delta", "re_chi_e", "im_chi_e", "re_chi_m", "im_chi_m", "re_xi_eh", "im_xi_eh",
        "re_xi_he", "im_xi_he", "re_eps", "im_eps", "re_mu", "im_mu", "re_n", "im_n", "fom",
    ] {
        assert!(obj.contains_key(key), "missing column {key}");
    }
    assert_eq!(obj["delta"].as_f64().unwrap(), 0.0);
    assert!(obj["im_n"].as_f64().unwrap() > 0.0);
}

#[test]
fn usage_errors_exit_with_code_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["point"]).status.code(), Some(2)); // --delta is required
}

#[test]
fn domain_errors_exit_with_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "nonsense = 3\n");
    let out = run(&["sweep", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown key"));

    let out = run(&["sweep", "--points", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("grid points"));
}

#[test]
fn csv_and_json_encode_identical_values() {
    let args = [
        "sweep",
        "--delta-min",
        "-2",
        "--delta-max",
        "2",
        "--points",
        "5",
    ];
    let csv_out = run(&args);
    let json_out = run(&{
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        a
    });
    assert!(csv_out.status.success() && json_out.status.success());

    let csv_text = stdout(&csv_out);
    let csv_rows: Vec<&str> = csv_text.lines().skip(1).collect();
    let header: Vec<&str> = csv_text.lines().next().unwrap().split(',').collect();
    let json: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    let json_rows = json.as_array().unwrap();
    assert_eq!(csv_rows.len(), json_rows.len());

    for (row, obj) in csv_rows.iter().zip(json_rows) {
        for (key, field) in header.iter().zip(row.split(',')) {
            let from_csv: f64 = field.parse().unwrap();
            let from_json = obj[*key].as_f64().unwrap();
            assert_eq!(from_csv, from_json, "column {key} differs between formats");
        }
    }
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.csv");
    let args = [
        "sweep",
        "--delta-min",
        "0",
        "--delta-max",
        "1",
        "--points",
        "3",
    ];

    let direct = run(&args);
    let to_file = run(&{
        let mut a = args.to_vec();
        a.extend(["--out", path.to_str().unwrap()]);
        a
    });
    assert!(direct.status.success() && to_file.status.success());
    assert!(stdout(&to_file).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&direct));

    // a second run replaces the file rather than appending
    let again = run(&[
        "sweep",
        "--delta-min",
        "0",
        "--delta-max",
        "1",
        "--points",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(again.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 3);
}

#[test]
fn flag_overrides_config_value() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "eta = 0.5\n");
    let base = ["point", "--delta", "0", "--config", &cfg];

    let with_config = run(&base);
    let value: serde_json::Value = serde_json::from_str(&stdout(&with_config)).unwrap();
    assert!(value["im_n"].as_f64().unwrap() > 1e-3);

    let overridden = run(&{
        let mut a = base.to_vec();
        a.extend(["--eta", "0"]);
        a
    });
    let value: serde_json::Value = serde_json::from_str(&stdout(&overridden)).unwrap();
    assert_eq!(value["im_n"].as_f64().unwrap(), 0.0);
}

#[test]
fn reproduce_prints_nine_reports_and_exit_matches_their_verdicts() {
    let out = run(&["reproduce"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9, "expected one line per criterion:\n{text}");
    for (i, line) in lines.iter().enumerate() {
        assert!(
            line.starts_with(&format!("A{} ", i + 1)),
            "bad line: {line}"
        );
        assert!(
            line.contains(": PASS — ") || line.contains(": FAIL — "),
            "bad line: {line}"
        );
    }
    let any_fail = lines.iter().any(|l| l.contains(": FAIL — "));
    assert_eq!(out.status.code(), Some(if any_fail { 1 } else { 0 }));
}
