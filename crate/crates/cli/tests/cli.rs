//! Exit codes, stored envelopes and verification, through the binary.

mod common;

use std::fs;

use common::run;

#[test]
fn success_exits_zero() {
    let r = run(&["group", "abelianize", "--fixture", "gamma4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let env = r.envelope();
    assert_eq!(env["status"], "ok");
    assert_eq!(env["payload"]["invariants"], serde_json::json!([3, 15]));
    assert!(env["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn config_errors_exit_two() {
    for args in [
        &["group", "abelianize", "--fixture", "no-such-group"][..],
        &["charvar", "--n", "0"],
        &["charvar", "--n", "8"],
        &["group", "cosets", "--fixture", "gamma4", "--subgroup", "c"],
        &["group", "cosets", "--fixture", "gamma4", "--limit", "0"],
        &["fingerprint", "--fixture", "a", "--fixture", "b", "--fixture", "c"],
        &["rigidity-gamma4", "--precision", "0"],
        &["no-such-command"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty(), "{args:?} gave no message");
    }
}

#[test]
fn file_input_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pres");
    fs::write(&path, "group g a,b\nrel a^2 c\n").unwrap();
    let r = run(&["group", "abelianize", "--file", path.to_str().unwrap()]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert!(r.stderr.contains("undeclared generator c"), "{}", r.stderr);
    let r = run(&["group", "abelianize", "--file", dir.path().join("missing.pres").to_str().unwrap()]);
    assert_eq!(r.code, 2, "{}", r.stderr);
}

#[test]
fn overflow_exits_three_with_partial_envelope() {
    let r = run(&["group", "cosets", "--fixture", "delta3", "--limit", "1000"]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    let env = r.envelope();
    assert_eq!(env["status"], "overflow");
    assert_eq!(env["payload"]["status"]["status"], "overflowed");

    let r = run(&["fingerprint", "--fixture", "gamma4", "--bound", "16", "--node-limit", "10"]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert_eq!(r.envelope()["payload"]["complete"], false);
}

#[test]
fn known_value_mismatch_exits_four() {
    // The published order for this fixture is 8; enumeration finds 10.
    let r = run(&["group", "cosets", "--fixture", "delta2"]);
    assert_eq!(r.code, 4);
    let env = r.envelope();
    assert_eq!(env["status"], "mismatch");
    assert_eq!(env["payload"]["index"], 10);
    assert!(r.stderr.contains("order"), "{}", r.stderr);
}

#[test]
fn stored_envelopes_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let r = run(&["--out", out, "--quiet", "group", "luck", "--fixture", "free2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    run(&["--out", out, "--quiet", "group", "luck", "--fixture", "free2"]);
    run(&["--out", out, "--quiet", "group", "abelianize", "--fixture", "delta4"]);

    let stored: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    // Identical payloads share a file.
    assert_eq!(stored.len(), 2);
    let index = fs::read_to_string(dir.path().join("index.tsv")).unwrap();
    assert_eq!(index.lines().count(), 3, "{index}");
    assert!(!dir.path().join("index.lock").exists());

    for path in &stored {
        let r = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.starts_with("ok sha256:"), "{}", r.stdout);
        let digest = path.file_stem().unwrap().to_str().unwrap();
        assert!(index.contains(digest));
    }
}

#[test]
fn verify_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    run(&["--out", out, "--quiet", "group", "abelianize", "--fixture", "gamma4"]);
    let path = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|x| x == "json"))
        .unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let tampered = text.replacen("15", "16", 1);
    assert_ne!(text, tampered);
    fs::write(&path, tampered).unwrap();
    let r = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(r.code, 4, "{}", r.stdout);

    let r = run(&["verify", dir.path().join("absent.json").to_str().unwrap()]);
    assert_ne!(r.code, 0);
}

#[test]
fn float_payloads_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let r = run(&["--out", out, "--quiet", "charvar", "--n", "7"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let path = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).find(|p| p.extension().is_some_and(|x| x == "json")).unwrap();
    assert_eq!(run(&["verify", path.to_str().unwrap()]).code, 0);
}

#[test]
fn payloads_are_deterministic() {
    let a = run(&["--workers", "1", "fingerprint", "--fixture", "delta4", "--fixture", "gamma4", "--bound", "12"]).envelope();
    let b = run(&["--workers", "3", "fingerprint", "--fixture", "delta4", "--fixture", "gamma4", "--bound", "12"]).envelope();
    assert_eq!(a["checksum"], b["checksum"]);
    assert_eq!(a["config"]["workers"], 1);
}

#[test]
fn inputs_keep_command_line_order() {
    let file = common::workspace_root().join("fixtures/gamma4.pres");
    let r = run(&["fingerprint", "--file", file.to_str().unwrap(), "--fixture", "delta4", "--bound", "3"]);
    let env = r.envelope();
    let inputs = env["config"]["inputs"].as_array().unwrap();
    assert!(inputs[0].get("file").is_some(), "{inputs:?}");
    assert_eq!(inputs[1]["fixture"], "delta4");
    // With the roles swapped, delta4's Z/2 quotient is the one missing from the group.
    assert_eq!(env["payload"]["subgroup"], "delta4");
    assert_eq!(env["payload"]["side"], "subgroup");
    assert_eq!(env["payload"]["distinguisher"]["name"], "Z/2");
}
