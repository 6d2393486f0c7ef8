use std::process::{Command, Output};

fn tlj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlj"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tlj(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn jw_two() {
    assert_eq!(stdout(&["jw", "--n", "2"]).trim(), "id − ((q)/(1 + q^2)) * U_1");
}

#[test]
fn theta_is_quantum_three() {
    assert_eq!(stdout(&["theta", "--a", "1", "--b", "1", "--c", "2"]).trim(), "q^-2 + 1 + q^2");
    assert_eq!(stdout(&["net", "eval", "examples/theta_net.json"]), stdout(&["theta", "--a", "1", "--b", "1", "--c", "2"]));
    assert_eq!(stdout(&["--root", "3", "theta", "--a", "1", "--b", "1", "--c", "2"]).trim(), "0");
}

#[test]
fn fusion_and_sixj() {
    assert_eq!(stdout(&["fuse", "--a", "1", "--b", "1", "--root", "3"]).lines().count(), 1);
    assert_eq!(stdout(&["fuse", "--a", "1", "--b", "1"]).lines().count(), 2);
    assert_eq!(stdout(&["sixj", "--a", "1", "--b", "1", "--i", "2", "--c", "1", "--d", "1", "--j", "0"]).trim(), "1");
}

#[test]
fn doubly_holed_disk() {
    assert_eq!(stdout(&["skein", "dim", "examples/two_holed_theta.json", "--root", "3"]).trim(), "4");
    assert_eq!(stdout(&["skein", "dim", "examples/two_holed_dumbbell.json", "--root", "3"]).trim(), "4");
    let basis = stdout(&["skein", "basis", "examples/two_holed_theta.json", "--root", "3"]);
    assert_eq!(basis, "0 0 0\n0 1 1\n1 0 1\n1 1 0\n");
    let hi = stdout(&["skein", "hi", "examples/two_holed_dumbbell.json", "--edge", "1", "--root", "3"]);
    assert_eq!(hi.lines().count(), 4);
}

#[test]
fn transport_round_trip() {
    let dir = std::env::temp_dir().join(format!("tlj-moves-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let moves = dir.join("moves.json");
    std::fs::write(&moves, r#"[{"edge": 4, "orientation": 0}, {"edge": 4, "orientation": 1}]"#).unwrap();
    let out = stdout(&["skein", "transport", "examples/h_four_boundary.json", "--moves", moves.to_str().unwrap(), "--root", "4"]);
    assert_eq!(out, "1 | 0\n0 | 1\n");
}

#[test]
fn json_output_parses() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["--json", "skein", "basis", "examples/annulus.json", "--root", "5"])).unwrap();
    assert_eq!(v["colorings"].as_array().unwrap().len(), 4);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["jw", "--n", "3", "--json"])).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 5);
}

#[test]
fn output_is_deterministic() {
    let args = ["skein", "hi", "examples/h_four_boundary.json", "--edge", "4", "--root", "5"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["--root", "1", "jw", "--n", "2"],
        &["theta", "--a", "1", "--b", "1", "--c", "1"],
        &["skein", "dim", "examples/annulus.json"],
        &["skein", "dim", "no_such_file.json", "--root", "3"],
        &["skein", "hi", "examples/h_four_boundary.json", "--edge", "0", "--root", "3"],
    ] {
        assert_eq!(tlj(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_skein_at_three() {
    let out = stdout(&["verify", "skein", "--root", "3"]);
    assert!(out.ends_with("1 checks, 0 failed\n"), "{out}");
    let out = stdout(&["verify", "jw", "--max-n", "6"]);
    assert!(out.contains("0 failed"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "verify", "theta", "--max-label", "5"])).unwrap();
    assert_eq!(v["passed"], true);
}
