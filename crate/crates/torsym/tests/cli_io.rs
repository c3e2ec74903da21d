//! CLI contract tests: exit codes (0 success, 1 domain error, 2 parse
//! error), document round-trips through the binary, the size guard and its
//! environment override.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_torsym")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(bin())
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("torsym-cli-io");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn catalog_entries_validate() {
    let families: Vec<Vec<&str>> = vec![
        vec!["cp", "1"],
        vec!["cp", "4"],
        vec!["product", "2", "1"],
        vec!["hirzebruch", "-2"],
        vec!["bott", "3", "-1,1,0", "0,-1,2", "0,0,-1"],
        vec!["polygon", "1,0", "0,1", "-1,0", "-1,-1", "0,-1"],
        vec!["p5"],
    ];
    for family in families {
        let mut args = vec!["catalog"];
        args.extend(&family);
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "catalog {:?} failed", family);
        let path = tmp("entry.json", &stdout_of(&out));
        let check = run(&["validate", path.to_str().unwrap()]);
        assert_eq!(
            check.status.code(),
            Some(0),
            "catalog {:?} does not validate: {}",
            family,
            stdout_of(&check)
        );
    }
}

#[test]
fn emit_parse_roundtrip_through_binary() {
    let out = run(&["catalog", "product", "2", "1"]);
    let doc = stdout_of(&out);
    let path = tmp("prism.json", &doc);
    // blow up at a face and down again; the final document equals the input
    let blown = run(&["blowup", path.to_str().unwrap(), "A1,A2"]);
    assert_eq!(blown.status.code(), Some(0));
    let blown_path = tmp("prism_blown.json", &stdout_of(&blown));
    let down = run(&["blowdown", blown_path.to_str().unwrap(), "E"]);
    assert_eq!(down.status.code(), Some(0));
    assert_eq!(stdout_of(&down), doc);
}

#[test]
fn exit_code_contract() {
    // domain error: blow down a non-exceptional facet
    let out = run(&["catalog", "cp", "2"]);
    let cp2 = tmp("cp2.json", &stdout_of(&out));
    let down = run(&["blowdown", cp2.to_str().unwrap(), "F1"]);
    assert_eq!(down.status.code(), Some(1));

    // domain error: crossing partition
    let square = tmp(
        "square.json",
        &stdout_of(&run(&["catalog", "hirzebruch", "0"])),
    );
    let crossing = run(&[
        "triple",
        square.to_str().unwrap(),
        "--partition",
        "F1,F2|F3,F4",
    ]);
    assert_eq!(crossing.status.code(), Some(1));

    // parse error: malformed document
    let broken = tmp("broken.json", "{\"n\": 2");
    assert_eq!(run(&["validate", broken.to_str().unwrap()]).status.code(), Some(2));

    // parse error: lambda entry is a float
    let float_doc = tmp(
        "float.json",
        "{\"n\": 1, \"facets\": [\"F\"], \"max_simplices\": [[\"F\"]], \"lambda\": {\"F\": [1.5]}}",
    );
    assert_eq!(run(&["validate", float_doc.to_str().unwrap()]).status.code(), Some(2));

    // domain error: unknown catalog family
    assert_eq!(run(&["catalog", "nope"]).status.code(), Some(1));

    // domain error: non-simple polytope input
    let pyramid = tmp(
        "pyramid.json",
        r#"{
  "n": 3,
  "inequalities": [
    { "normal": [0, 0, -1], "offset": 0 },
    { "normal": [1, 0, 1], "offset": 1 },
    { "normal": [-1, 0, 1], "offset": 1 },
    { "normal": [0, 1, 1], "offset": 1 },
    { "normal": [0, -1, 1], "offset": 1 }
  ]
}"#,
    );
    assert_eq!(run(&["delzant", pyramid.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn aut_size_guard_and_override() {
    // a 13-facet pair sits over the default guard of 12; iterated corner
    // chops of the square stay valid and grow one facet each
    let square = stdout_of(&run(&["catalog", "hirzebruch", "0"]));
    let mut path = tmp("grow.json", &square);
    for _ in 0..9 {
        let doc = std::fs::read_to_string(&path).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&doc).unwrap();
        let facets = parsed["facets"].as_array().unwrap();
        // blow up at the first listed edge
        let simplex = parsed["max_simplices"][0].as_array().unwrap();
        let face = format!(
            "{},{}",
            simplex[0].as_str().unwrap(),
            simplex[1].as_str().unwrap()
        );
        assert!(facets.len() <= 13);
        let blown = run(&["blowup", path.to_str().unwrap(), &face]);
        assert_eq!(blown.status.code(), Some(0));
        path = tmp("grow.json", &stdout_of(&blown));
    }
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["facets"].as_array().unwrap().len(), 13);

    let guarded = run(&["aut", path.to_str().unwrap()]);
    assert_eq!(guarded.status.code(), Some(1));
    let stderr = String::from_utf8(guarded.stderr).unwrap();
    assert!(stderr.contains("size guard"), "got: {}", stderr);

    let allowed = run_with_env(&["aut", path.to_str().unwrap()], "TORSYM_SIZE_GUARD", "20");
    assert_eq!(allowed.status.code(), Some(0));
}

#[test]
fn symmetry_output_flag_writes_file() {
    let cp2 = tmp("cp2_out.json", &stdout_of(&run(&["catalog", "cp", "2"])));
    let report_path = std::env::temp_dir().join("torsym-cli-io/report.txt");
    let out = run(&[
        "symmetry",
        cp2.to_str().unwrap(),
        "--output",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).is_empty());
    let report = std::fs::read_to_string(&report_path).unwrap();
    assert!(report.contains("group: SU(3)"));
}

#[test]
fn symmetry_json_has_schema() {
    let h1 = tmp("h1.json", &stdout_of(&run(&["catalog", "hirzebruch", "1"])));
    let out = run(&["symmetry", h1.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["schema"], "torsym-report/1");
    assert_eq!(value["command"], "symmetry");
    assert_eq!(value["group"]["canonical"], "SU(2) x T^1");
}
