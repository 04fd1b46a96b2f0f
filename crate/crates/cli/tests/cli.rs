use std::process::{Command, Output};

fn qmink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmink"))
        .args(args)
        .env_remove("QMINK_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn derive_light_cone_power() {
    let o = qmink(&["derive", "x30^3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("d^0: (-1 - q^2 - q^4)*x30^2"), "{text}");
    assert!(text.contains("d^3: (1 + q^2 + q^4)*x30^2"), "{text}");
    assert!(text.contains("d^-: 0") && text.contains("d^+: 0"));
}

#[test]
fn normalize_round_trips() {
    let o = qmink(&["normalize", "x0^2 + q*x3"]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o);
    let again = qmink(&["normalize", first.trim()]);
    assert_eq!(stdout(&again), first);
}

#[test]
fn parse_errors_exit_two() {
    let o = qmink(&["normalize", "x0^-1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(
        err.contains("negative exponent") && err.contains("position 3"),
        "{err}"
    );
    assert_eq!(qmink(&["derive", "x0 +"]).status.code(), Some(2));
    assert_eq!(qmink(&["lpow", "y", "2"]).status.code(), Some(2));
    assert_eq!(qmink(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_output() {
    let o = qmink(&["--json", "derive", "xm^2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let minus = &v["gradient"]["-"]["terms"][0];
    assert_eq!(minus["exponents"], serde_json::json!([0, 0, 0, 0, 1]));
    assert_eq!(minus["coefficient"], "(1 + q^2)");
    assert_eq!(v["gradient"]["0"]["terms"].as_array().unwrap().len(), 0);
}

#[test]
fn lpow_light_cone() {
    let o = qmink(&["lpow", "x30", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("(q^5)*x30^5"), "{text}");
    let o = qmink(&["--json", "lpow", "x0", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_all_small() {
    let o = qmink(&["verify", "all", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_reads_environment_degree() {
    let o = Command::new(env!("CARGO_BIN_EXE_qmink"))
        .args(["--json", "verify", "calculus"])
        .env("QMINK_MAX_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["suite"], "calculus");
    assert_eq!(v[0]["passed"], true);
    let bad = Command::new(env!("CARGO_BIN_EXE_qmink"))
        .args(["verify", "calculus"])
        .env("QMINK_MAX_DEGREE", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn solve_and_verify() {
    let o = qmink(&["solve", "massless", "--degree", "6", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("massless: pass through degree 5"));
    let o = qmink(&[
        "--json", "solve", "massive", "--degree", "4", "--param", "2*m", "--verify",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["slices"].as_array().unwrap().len(), 5);
    assert_eq!(v["param"], "(2*m)");
    assert!(v["verification"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn char_check_passes() {
    let o = qmink(&["char-check"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "PASS L_x0\nPASS B_x0");
}
