//! Real command output validated against the documents in `schemas/`.

mod common;

use std::fs;

use jsonschema::{Resource, Validator};
use serde_json::Value;

use common::{run, workspace_root};

const BASE: &str = "json-schema:///";

fn load(name: &str) -> Value {
    let path = workspace_root().join("schemas").join(name);
    serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn schema_files() -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(workspace_root().join("schemas"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    names
}

fn validator(name: &str) -> Validator {
    let mut opts = jsonschema::draft202012::options();
    for other in schema_files() {
        opts.with_resource(format!("{BASE}{other}"), Resource::from_contents(load(&other)).unwrap());
    }
    opts.build(&load(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// `rigidity-lab/cosets/v1` lives in `cosets.v1.json`.
fn file_for(payload_schema: &str) -> String {
    let mut parts = payload_schema.split('/');
    assert_eq!(parts.next(), Some("rigidity-lab"));
    let kind = parts.next().unwrap();
    let version = parts.next().unwrap();
    format!("{kind}.{version}.json")
}

fn errors(v: &Validator, instance: &Value) -> Vec<String> {
    v.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path)).collect()
}

/// Every key a schema lists as required, at the top level of the payload.
fn required(schema: &Value) -> Vec<&str> {
    schema["required"].as_array().map(|a| a.iter().filter_map(Value::as_str).collect()).unwrap_or_default()
}

fn check(args: &[&str], expected_schema: &str) {
    let r = run(args);
    assert!(matches!(r.code, 0 | 3 | 4), "{args:?} exited {}: {}", r.code, r.stderr);
    let env = r.envelope();
    let e = errors(&validator("envelope.v1.json"), &env);
    assert!(e.is_empty(), "{args:?} envelope: {e:?}");
    let ps = env["payload_schema"].as_str().unwrap();
    assert_eq!(ps, expected_schema, "{args:?}");
    let file = file_for(ps);
    let payload = &env["payload"];
    let e = errors(&validator(&file), payload);
    assert!(e.is_empty(), "{args:?} payload: {e:?}");
    for key in required(&load(&file)) {
        assert!(payload.get(key).is_some(), "{args:?}: {key} missing");
    }
}

#[test]
fn schemas_are_well_formed() {
    let files = schema_files();
    assert_eq!(files.len(), 10, "{files:?}");
    for f in &files {
        let s = load(f);
        assert_eq!(s["$id"].as_str(), Some(f.as_str()));
        validator(f);
    }
}

#[test]
fn certificate_output_matches_schema() {
    check(&["rigidity-gamma4", "--skip-numeric"], "rigidity-lab/certificate/v1");
    check(&["rigidity-gamma4", "--precision", "20"], "rigidity-lab/certificate/v1");
}

#[test]
fn charvar_output_matches_schema() {
    for n in ["5", "9"] {
        check(&["charvar", "--n", n], "rigidity-lab/charvar/v1");
    }
}

#[test]
fn group_outputs_match_schemas() {
    check(&["group", "abelianize", "--fixture", "gamma4"], "rigidity-lab/abelianization/v1");
    check(&["group", "cosets", "--fixture", "delta2"], "rigidity-lab/cosets/v1");
    check(&["group", "cosets", "--fixture", "delta3", "--limit", "500"], "rigidity-lab/cosets/v1");
    check(&["group", "cosets", "--fixture", "gamma4", "--subgroup", "a", "--strategy", "felsch"], "rigidity-lab/cosets/v1");
    check(&["group", "subgroups", "--fixture", "delta4", "--index", "4"], "rigidity-lab/subgroups/v1");
    check(&["group", "subgroups", "--fixture", "free2", "--index", "4", "--normal"], "rigidity-lab/subgroups/v1");
    check(&["group", "rs", "--fixture", "free2", "--subgroup", "a", "--subgroup", "b a b^-1", "--subgroup", "b^2"], "rigidity-lab/rs/v1");
    check(&["group", "luck", "--fixture", "free2"], "rigidity-lab/luck/v1");
}

#[test]
fn fingerprint_outputs_match_schemas() {
    check(&["fingerprint", "--fixture", "gamma4", "--bound", "8"], "rigidity-lab/fingerprint/v1");
    check(&["fingerprint", "--fixture", "gamma4", "--bound", "8", "--node-limit", "5"], "rigidity-lab/fingerprint/v1");
    check(&["fingerprint", "--fixture", "delta4", "--fixture", "gamma4", "--bound", "3"], "rigidity-lab/compare/v1");
    check(&["fingerprint", "--fixture", "b1", "--fixture", "b1", "--bound", "6"], "rigidity-lab/compare/v1");
}

#[test]
fn validation_rejects_broken_payloads() {
    let env = run(&["group", "luck", "--fixture", "free2"]).envelope();
    let v = validator("luck.v1.json");
    assert!(errors(&v, &env["payload"]).is_empty());
    let mut missing = env["payload"].clone();
    missing.as_object_mut().unwrap().remove("values");
    assert!(!errors(&v, &missing).is_empty());
    let mut wrong = env["payload"].clone();
    wrong["values"] = serde_json::json!(["1.5"]);
    assert!(!errors(&v, &wrong).is_empty());
    let mut bad_sum = env.clone();
    bad_sum["checksum"] = serde_json::json!("md5:00");
    assert!(!errors(&validator("envelope.v1.json"), &bad_sum).is_empty());
}
