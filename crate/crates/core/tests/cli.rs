use std::process::{Command, Output};

fn grover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grover"))
        .args(args)
        .env_remove("GROVER_MAX_QUBITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_prints_plan_and_success() {
    let o = grover(&["run", "--n", "3", "--marked", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("k_opt            2"));
    assert!(text.contains("success          0.945312500000"));
    assert!(text.contains("oracle queries   2"));
}

#[test]
fn csv_output_is_deterministic_and_written_to_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let p = path.to_str().unwrap();
    let a = grover(&["run", "--n", "6", "--marked", "b101010,3", "--out", p]);
    assert!(a.status.success());
    let first = std::fs::read(&path).unwrap();
    let b = grover(&["run", "--n", "6", "--marked", "3,42", "--out", p]);
    assert!(b.status.success());
    assert_eq!(first, std::fs::read(&path).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with(
        "iteration,success_probability,marked_amplitude,unmarked_amplitude,analytic_probability\n"
    ));
    assert!(!text.contains('\r'));
}

#[test]
fn sweep_csv_covers_inclusive_range() {
    let o = grover(&["sweep", "--n", "3", "--marked", "5", "--sweep", "0..6", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows[0].starts_with("0,0.125000000000,"));
    assert!(rows[2].starts_with("2,0.945312500000,"));
    assert!(rows[3].starts_with("3,0.330078125000,"));
}

#[test]
fn circuit4_both_styles() {
    for style in ["simplified", "toffoli"] {
        for marked in ["00", "01", "10", "11"] {
            let o = grover(&["circuit4", "--marked", marked, "--oracle", style]);
            assert!(o.status.success(), "{marked} {style}");
            assert!(stdout(&o).contains(&format!("ab               {marked}")));
        }
    }
}

#[test]
fn verify_passes_and_tampering_fails() {
    let o = grover(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    for needle in ["0.945312500000", "0.330078125000", "2.250000000000", "41.410000000000"] {
        assert!(text.contains(needle), "missing {needle}");
    }
    let tampered = grover(&["verify", "--tolerance", "-1"]);
    assert_eq!(tampered.status.code(), Some(1));
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(grover(&["run", "--n", "3", "--marked", "8"]).status.code(), Some(2));
    assert_eq!(grover(&["run", "--n", "3"]).status.code(), Some(2));
    assert_eq!(grover(&["sweep", "--n", "3", "--marked", "5", "--sweep", "4..1"]).status.code(), Some(2));
    assert_eq!(grover(&["circuit4", "--marked", "12"]).status.code(), Some(2));
    assert_eq!(grover(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn qubit_cap_env_override() {
    let capped = Command::new(env!("CARGO_BIN_EXE_grover"))
        .args(["run", "--n", "5", "--marked", "1"])
        .env("GROVER_MAX_QUBITS", "4")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap is 4"));
    let bad = Command::new(env!("CARGO_BIN_EXE_grover"))
        .args(["run", "--n", "3", "--marked", "1"])
        .env("GROVER_MAX_QUBITS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn baseline_and_oracle_check_commands() {
    let o = grover(&["baseline", "--n", "2", "--seed", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("classical for p = 1/2    2"));
    let o = grover(&["oracle-check", "--n", "3", "--marked", "5"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
}
