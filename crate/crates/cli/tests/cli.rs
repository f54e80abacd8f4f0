use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_punctual"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn punctual")
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn validate(sub: &str, doc: &Value) {
    let text = std::fs::read_to_string(schema_dir().join(format!("{sub}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => vec![],
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{sub} output violates its schema: {msgs:?}\n{doc:#}");
}

/// Runs with --format json, checks exit 0 and the schema, returns the document.
fn json_ok(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).expect("valid json");
    validate(args[0], &doc);
    doc
}

fn strs(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn fz_gap_three() {
    let doc = json_ok(&["fz", "--D", "3"]);
    assert_eq!(strs(&doc["rational_form"]["numerator"]), ["3", "-1", "-1"]);
    assert_eq!(doc["rational_form"]["denominator"], serde_json::json!([[1, 1], [2, 1], [3, 1]]));
}

#[test]
fn fz_strategies_agree() {
    let base = json_ok(&["fz", "--k", "1,2", "--series", "8"]);
    for m in ["shape-sum", "oracle"] {
        let other = json_ok(&["fz", "--k", "1,2", "--series", "8", "--method", m]);
        assert_eq!(base["rational_form"], other["rational_form"]);
        assert_eq!(base["series"], other["series"]);
    }
}

#[test]
fn fq_rank_two() {
    let doc = json_ok(&["fq", "-r", "2", "--D", "2", "--series", "4"]);
    assert_eq!(doc["rank"], 2);
    assert!(!strs(&doc["series"]).is_empty());
}

#[test]
fn oracle_counts() {
    let out = run(&["oracle", "--nesting", "2,4"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "8");
    let doc = json_ok(&["oracle", "--nesting", "1,2", "--rank", "2"]);
    assert_eq!(doc["count"], "6");
}

#[test]
fn motive_three_five() {
    let doc = json_ok(&["motive", "--nesting", "3,5"]);
    assert_eq!(strs(&doc["motive"]), ["1", "2", "4", "4", "2"]);
    assert_eq!(doc["euler"], "13");
}

#[test]
fn motive_other_modes() {
    let strata = json_ok(&["motive", "--strata", "6"]);
    assert_eq!(strata["n"], 6);
    let series = json_ok(&["motive", "--series", "8", "--step", "3"]);
    let terms = series["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 6);
    assert_eq!(strs(&terms[2]["motive"]), ["1", "2", "4", "4", "2"]);
}

#[test]
fn globalize_modes() {
    let doc = json_ok(&["globalize", "--chi", "1", "--n1", "2", "--n2", "4"]);
    assert_eq!(doc["coefficient"], "8");
    let doc = json_ok(&["globalize", "--resolve-dp6"]);
    assert_eq!(doc["exponent"], 6);
}

#[test]
fn verify_modes() {
    let list = json_ok(&["verify", "--list"]);
    assert_eq!(list["identities"].as_array().unwrap().len(), 10);
    let doc = json_ok(&["verify", "--only", "q-geometric", "--only", "dp6"]);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["results"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["fz", "--D", "2", "--method", "nope"][..],
        &["verify", "--only", "nope"],
        &["motive", "--nesting", "4,6"],
        &["oracle", "--nesting", "3,1"],
        &["globalize", "--chi", "-2"],
        &["oracle"],
        &["fz", "--D", "1", "--k", "1"],
        &["bogus"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn csv_output() {
    let out = run(&["motive", "--nesting", "2,5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("nesting,motive,euler"));
    assert!(lines.next().unwrap().starts_with("\"2,5\","));
}

fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn tables_are_deterministic() {
    let root = std::env::temp_dir().join(format!("punctual-tables-{}", std::process::id()));
    let mut snapshots = vec![];
    for (i, jobs) in ["1", "4", "1"].iter().enumerate() {
        let dir = root.join(i.to_string());
        let dir_s = dir.to_str().unwrap();
        let doc = json_ok(&["tables", "--out", dir_s, "--jobs", jobs]);
        assert_eq!(doc["files"].as_array().unwrap().len(), 10);
        snapshots.push(read_all(&dir));
    }
    assert_eq!(snapshots[0], snapshots[1]);
    assert_eq!(snapshots[0], snapshots[2]);
    let pd: Value = serde_json::from_slice(&snapshots[0].iter().find(|f| f.0 == "polynomials_d.json").unwrap().1).unwrap();
    assert_eq!(strs(&pd[2]["numerator"]), ["3", "-1", "-1"]);
    std::fs::remove_dir_all(&root).ok();
}

#[test]
fn schemas_reject_malformed_output() {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_dir().join("motive.schema.json")).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    assert!(compiled.is_valid(&serde_json::json!({ "nesting": [3, 5], "motive": ["1"], "euler": "1" })));
    assert!(!compiled.is_valid(&serde_json::json!({ "nesting": [3, 5], "motive": [1], "euler": "1" })));
    assert!(!compiled.is_valid(&serde_json::json!({ "nesting": [3, 5], "motive": ["1"] })));
}
