use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

use ut2gpi::eval::{codimension, Caps, Mode};
use ut2gpi::rep::cocharacter;
use ut2gpi::walgebra::{action_to_json, ActionTag, WAlgebraAction};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ut2gpi")).args(args).current_dir(root()).output().expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn schema(name: &str) -> JSONSchema {
    let path = root().join("schemas").join(name);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    JSONSchema::compile(&doc).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_valid(schema: &JSONSchema, doc: &Value) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{doc}\n{}", msgs.join("\n"));
    }
}

fn csv_of(args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut full = args.to_vec();
    full.extend(["--format", "csv"]);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}");
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[test]
fn library_documents_match_schemas() {
    let caps = Caps::default();
    let codim = schema("codim.schema.json");
    let cochar = schema("cocharacter.schema.json");
    let action = schema("action.schema.json");
    for tag in ActionTag::BUILTIN {
        let act = WAlgebraAction::builtin(tag).unwrap();
        assert_valid(&action, &action_to_json(&act));
        for mode in [Mode::Exact, Mode::Modular] {
            let doc = serde_json::to_value(codimension(&act, 3, mode, &caps).unwrap()).unwrap();
            assert_valid(&codim, &doc);
        }
        assert_valid(&cochar, &serde_json::to_value(cocharacter(&act, 3, &caps).unwrap()).unwrap());
    }
    let fixture: Value =
        serde_json::from_str(&std::fs::read_to_string(root().join("fixtures/corrupted_action.json")).unwrap()).unwrap();
    assert_valid(&action, &fixture);

    assert!(!codim.is_valid(&serde_json::json!({"algebra": "regular", "n": 3, "codim": 22, "mode": "fuzzy"})));
    assert!(!codim.is_valid(&serde_json::json!({"algebra": "regular", "n": 0, "codim": 22, "mode": "exact"})));
    assert!(!cochar.is_valid(&serde_json::json!({"algebra": "D", "n": 2, "multiplicities": {"[0,2]": 1}})));
    assert!(!cochar.is_valid(&serde_json::json!({"algebra": "D", "n": 2, "multiplicities": {"[2]": -1}})));
    let mut broken = fixture.clone();
    broken["left"]["e22"]["e12"] = serde_json::json!(["1/0", "0", "0"]);
    assert!(!action.is_valid(&broken));
}

#[test]
fn cli_documents_match_schemas() {
    let report = schema("report.schema.json");
    let per_result = [
        ("codim", Some(schema("codim.schema.json"))),
        ("cochar", Some(schema("cocharacter.schema.json"))),
        ("basis", Some(schema("basis.schema.json"))),
        ("hwv-rank", None),
        ("axioms", None),
        ("witness", None),
    ];
    for (command, item) in &per_result {
        let doc = json_of(&[command, "--n", "1..3"]);
        assert_valid(&report, &doc);
        assert_eq!(doc["ok"], true, "{command}");
        if let Some(s) = item {
            for r in doc["results"].as_array().unwrap() {
                assert_valid(s, r);
            }
        }
    }
    let doc = json_of(&["check", "fixtures/mixed.gp"]);
    assert_valid(&report, &doc);
}

#[test]
fn csv_and_json_agree() {
    for command in ["codim", "basis", "hwv-rank", "axioms", "witness"] {
        let doc = json_of(&[command, "--n", "2..4"]);
        let (header, rows) = csv_of(&[command, "--n", "2..4"]);
        let results = doc["results"].as_array().unwrap();
        assert_eq!(results.len(), rows.len(), "{command}");
        for (r, row) in results.iter().zip(&rows) {
            for (col, value) in header.iter().zip(row) {
                if let Some(v) = r.get(col.as_str()) {
                    if !v.is_array() && !v.is_object() {
                        assert_eq!(&cell(v), value, "{command}.{col}");
                    }
                }
            }
        }
    }
    let doc = json_of(&["cochar", "--n", "2..4"]);
    let (_, rows) = csv_of(&["cochar", "--n", "2..4"]);
    let mut from_json = Vec::new();
    for r in doc["results"].as_array().unwrap() {
        for (shape, m) in r["multiplicities"].as_object().unwrap() {
            from_json.push((cell(&r["algebra"]), r["n"].to_string(), shape.clone(), m.to_string()));
        }
    }
    let from_csv: Vec<_> = rows.iter().map(|r| (r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone())).collect();
    from_json.sort();
    let mut from_csv = from_csv;
    from_csv.sort();
    assert_eq!(from_json, from_csv);
}

#[test]
fn worked_cli_examples() {
    let doc = json_of(&["codim", "--algebra", "regular", "--n", "1..4"]);
    let pairs: Vec<(u64, u64)> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["codim"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, vec![(1, 5), (2, 10), (3, 22), (4, 50)]);
    assert!(doc["results"].as_array().unwrap().iter().all(|r| r["matches"] == true));

    let doc = json_of(&["check", "--algebra", "regular", "fixtures/commutator_product.gp"]);
    assert_eq!(doc["results"][0]["identity"], true);

    let doc = json_of(&["witness"]);
    let verdicts: Vec<(String, String, bool)> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (cell(&r["polynomial"]), cell(&r["algebra"]), r["identity"].as_bool().unwrap()))
        .collect();
    assert!(verdicts.contains(&("E22*x1".into(), "F".into(), true)));
    assert!(verdicts.contains(&("E22*x1".into(), "D".into(), false)));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("codim.csv");
    let out = run(&["codim", "--algebra", "F", "--n", "1..3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "algebra,n,codim,mode,formula,matches\nF,1,1,exact,1,true\nF,2,2,exact,2,true\nF,3,6,exact,6,true\n"
    );
}

#[test]
fn exit_code_contract() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["axioms"]), 0);
    assert_eq!(code(&["axioms", "--algebra", "custom=fixtures/corrupted_action.json"]), 2);
    assert_eq!(code(&["codim", "--algebra", "custom=fixtures/corrupted_action.json", "--n", "2"]), 2);
    assert_eq!(code(&["codim", "--algebra", "custom=fixtures/d_action.json", "--n", "1..3"]), 0);
    assert_eq!(code(&["check", "--algebra", "regular", "fixtures/commutator_product.gp", "--expect", "false"]), 2);
    assert_eq!(code(&["check", "--algebra", "regular", "fixtures/commutator_product.gp", "--expect", "true"]), 0);
    assert_eq!(code(&["codim", "--n", "6"]), 1);
    assert_eq!(code(&["codim", "--algebra", "nonsense"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["check", "missing.gp"]), 1);
}

#[test]
fn parse_errors_name_the_position() {
    let dir = tempfile::tempdir().unwrap();
    let path: &Path = &dir.path().join("bad.gp");
    std::fs::write(path, "[x1,x2]\nx1 +\n  foo\n").unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3, column 3"), "{err}");
}
