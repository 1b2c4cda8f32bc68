use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn hwenv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hwenv"))
        .args(args)
        .env_remove("HWENV_DEFAULT_FIELD")
        .output()
        .expect("runs")
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let out = hwenv(&all);
    let json = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (out.status.code().expect("exit code"), json)
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("hwenv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path)
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    path
}

#[test]
fn semisimple_is_highest_weight() {
    let (code, v) = machine(&["check-hw", "semisimple"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["failing_clause"], Value::Null);
    assert_eq!(v["per_weight"].as_array().unwrap().len(), 2);
}

#[test]
fn dual_numbers_fail_st1() {
    let (code, v) = machine(&["check-hw", "catalog:dual_numbers"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["failing_clause"], "st1");
    assert!(v["message"].as_str().unwrap().starts_with("st1 failed"));
}

#[test]
fn order_override_changes_the_verdict() {
    // 1 -> 2 with 1 < 2 is still highest weight, with different standards
    let (code, v) = machine(&["check-hw", "a2", "--order", "1 < 2"]);
    assert_eq!(code, 0);
    assert_eq!(v["per_weight"][0]["standard_dims"], serde_json::json!([1, 0]));
    let (code, _) = machine(&["hw-equivalent", "a2", "--other", "1 < 2"]);
    assert_eq!(code, 1);
    let (code, _) = machine(&["hw-equivalent", "a2", "--other", ""]);
    assert_eq!(code, 1);
    let (code, _) = machine(&["hw-equivalent", "a2", "--other", "2 < 1"]);
    assert_eq!(code, 0);
}

#[test]
fn membership_methods_agree() {
    let projective = temp_file("p1.mod", "dim 1 1\ndim 2 1\nmap a\n1\n");
    let simple = temp_file("s1.mod", "dim 1 1\ndim 2 0\n");
    let (code, v) = machine(&["membership", "a2", projective.to_str().unwrap(), "--method", "all"]);
    assert_eq!(code, 0);
    assert_eq!(v["agree"], true);
    assert_eq!(
        v["methods"],
        serde_json::json!({"counit": true, "ext": true, "filtration": true})
    );
    assert_eq!(v["witness"], serde_json::json!(["1"]));
    let (code, v) = machine(&["membership", "a2", simple.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(
        v["methods"],
        serde_json::json!({"counit": false, "ext": false, "filtration": false})
    );
    for method in ["filtration", "ext", "counit"] {
        let (code, v) = machine(&["membership", "a2", simple.to_str().unwrap(), "--method", method]);
        assert_eq!(code, 1, "{method}");
        assert_eq!(v["methods"].as_object().unwrap().len(), 1);
    }
}

#[test]
fn module_violating_a_relation_is_rejected() {
    let bad = temp_file(
        "bad.mod",
        "dim 1 1\ndim 2 1\ndim 3 1\nmap a\n1\nmap c\n1\nmap b\n1\nmap d\n1\n",
    );
    let out = hwenv(&["membership", "exm_strictness", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("relation"), "{err}");
}

#[test]
fn strictness_fails_on_the_three_vertex_example() {
    let (code, v) = machine(&["recollement", "exm_strictness", "--ideal", "2", "--strictness"]);
    assert_eq!(code, 1);
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 1);
    assert_eq!(pairs[0]["i"], serde_json::json!(["1", "2"]));
    assert_eq!(pairs[0]["j"], serde_json::json!(["2", "3"]));
    assert_eq!(
        pairs[0]["dims"],
        serde_json::json!({"union_over_meet": 4, "j_over_meet": 1, "union_over_i": 1})
    );
}

#[test]
fn recollement_of_a_lower_ideal() {
    let (code, v) = machine(&["recollement", "auslander", "--ideal", "2"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["serre"], serde_json::json!(["2"]));
    assert_eq!(v["corner"], serde_json::json!(["1"]));
    let out = hwenv(&["recollement", "a2", "--ideal", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn structure_commands_succeed_on_diamond() {
    for cmd in [
        "tilting",
        "ringel-dual",
        "double-dual",
        "canonical-poset",
        "standard",
        "costandard",
    ] {
        let (code, _) = machine(&[cmd, "diamond"]);
        assert_eq!(code, 0, "{cmd}");
    }
    let (_, v) = machine(&["double-dual", "diamond"]);
    assert_eq!(v["cartan"]["original"], v["cartan"]["double_dual"]);
    for side in ["left", "right"] {
        for collection in ["standard", "costandard"] {
            let (code, v) = machine(&["envelope", "diamond", "--side", side, "--collection", collection]);
            assert_eq!(code, 0, "{side} {collection}");
            assert_eq!(v["transports_match"], true);
        }
    }
}

#[test]
fn right_envelope_of_standards_has_the_original_cartan_matrix() {
    let (_, hw) = machine(&["check-hw", "auslander"]);
    let (_, env) = machine(&["envelope", "auslander"]);
    assert_eq!(hw["cartan"], env["cartan"]);
}

#[test]
fn machine_output_is_deterministic() {
    let a = hwenv(&["check-hw", "diamond", "--format", "machine"]);
    let b = hwenv(&["check-hw", "diamond", "--format", "machine"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn empty_file_is_a_parse_error_at_line_one() {
    let empty = temp_file("empty.alg", "");
    let out = hwenv(&["check-hw", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn default_field_comes_from_the_environment() {
    let file = temp_file("nofield.alg", "vertex 1\nvertex 2\narrow a 1 2\norder 2 < 1\nend\n");
    let out = hwenv(&["check-hw", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_hwenv"))
        .args(["check-hw", file.to_str().unwrap()])
        .env("HWENV_DEFAULT_FIELD", "GF(3)")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn catalog_lists_and_prints_entries() {
    let (code, v) = machine(&["catalog"]);
    assert_eq!(code, 0);
    assert!(v["entries"].as_array().unwrap().iter().any(|e| e == "exm_strictness"));
    let (_, v) = machine(&["catalog", "exm_strictness"]);
    assert!(v["source"].as_str().unwrap().contains("relation a*b"));
    let out = hwenv(&["catalog", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exhausted_budget_is_exit_two() {
    let out = hwenv(&["check-hw", "diamond", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}
