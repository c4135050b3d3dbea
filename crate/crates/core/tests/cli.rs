use std::process::Command;

use serde_json::Value;

fn sasaki(args: &str) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sasaki"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn schema() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/report.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn json_report(args: &str) -> Value {
    let (code, out, err) = sasaki(&format!("{args} --json"));
    assert_eq!(code, 0, "{args}: {err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let compiled = schema();
    if let Err(errors) = compiled.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{args}: schema violations {msgs:?}");
    }
    v
}

/// Every tagged number rendered the way the text mode shows it.
fn tagged_leaves(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) if m.len() == 2 && m.contains_key("num") => {
            let (n, d) = (m["num"].as_str().unwrap(), m["den"].as_str().unwrap());
            out.push(if d == "1" { n.to_string() } else { format!("{n}/{d}") });
        }
        Value::Object(m) if m.len() == 2 && m.contains_key("decimal") => {
            out.push(m["decimal"].as_str().unwrap().to_string());
        }
        Value::Object(m) => m.values().for_each(|x| tagged_leaves(x, out)),
        Value::Array(a) => a.iter().for_each(|x| tagged_leaves(x, out)),
        _ => {}
    }
}

const COMMANDS: &[&str] = &[
    "validate --base CP2 --l1 1 --l2 13 --w 3,2",
    "invariants --base CP1 --l1 1 --l2 13 --w 21,5",
    "rays csc --base CP2 --l1 1 --l2 13 --w 3,2",
    "rays csc --base CP2 --l1 1 --l2 4 --w 1,1",
    "rays se --base CP1 --l1 1 --l2 13 --w 21,5",
    "rays extremal --base CP2 --l1 1 --l2 13 --w 3,2 --v1 2 --v2 1",
    "rays extremal --base CP2 --l1 1 --l2 13 --w 3,2 --v1 1 --v2 0.3",
    "rays soliton --base CP1 --l1 1 --l2 13 --w 21,5 --v1 5 --v2 7",
    "rays threshold --base CP2 --l1 1 --w 3,2",
    "ypq --p 13 --q 8",
    "ypq --scan-pmax 12",
    "topology sphere-join --r 2 --l1 1 --l2 13 --w 3,2",
    "topology weighted-line --w 2,3",
    "topology ruled-cpp --p 2 --n 122",
    "scan csc --base CP2 --l1 1 --w 3,2 --l2-from 1 --l2-to 15",
];

#[test]
fn every_report_matches_the_schema() {
    for c in COMMANDS {
        json_report(c);
    }
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    for c in COMMANDS {
        let v = json_report(c);
        let (code, text, _) = sasaki(c);
        assert_eq!(code, 0);
        let mut leaves = Vec::new();
        tagged_leaves(&v["result"], &mut leaves);
        for leaf in leaves {
            assert!(text.contains(&leaf), "{c}: {leaf} missing from text output");
        }
    }
}

#[test]
fn three_csc_rays_for_l2_thirteen() {
    let v = json_report("rays csc --base CP2 --l1 1 --l2 13 --w 3,2");
    assert_eq!(v["result"]["ray_count"], 3);
    assert_eq!(v["result"]["rays"].as_array().unwrap().len(), 3);
}

#[test]
fn ypq_thirteen_eight() {
    let v = json_report("ypq --p 13 --q 8");
    assert_eq!(v["result"]["quasiregular"], true);
    assert_eq!(v["result"]["w"], serde_json::json!([21, 5]));
    assert_eq!(v["result"]["se_ray"]["b"], serde_json::json!({"num": "5", "den": "7"}));
    assert!(v["warnings"].as_array().unwrap().iter().any(|w| w.as_str().unwrap().contains("(5, 7)")));
}

#[test]
fn invalid_input_exits_two() {
    let (code, out, err) = sasaki("validate --base CP2 --l1 1 --l2 3 --w 3,2");
    assert_eq!(code, 2);
    assert!(err.contains("gcd(l2, l1·w1·w2) = 3"));
    assert!(out.contains("gcd(l2, l1·w1·w2) = 3"));
    let (code, _, err) = sasaki("rays se --base CP2 --l1 1 --l2 13 --w 3,2");
    assert_eq!(code, 2);
    assert!(err.contains("c1 obstruction"));
    let (code, _, _) = sasaki("rays csc --l1 1 --l2 13");
    assert_eq!(code, 2);
    let (code, out, _) = sasaki("validate --base CP2 --l1 1 --l2 3 --w 3,2 --json");
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(schema().is_valid(&v));
}

#[test]
fn scan_reproduces_ray_count_table() {
    let v = json_report("scan csc --base CP2 --l1 1 --w 3,2 --l2-from 1 --l2-to 30");
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 30);
    for row in rows {
        let l2 = row["l2"].as_u64().unwrap();
        let valid = l2 % 2 != 0 && l2 % 3 != 0;
        assert_eq!(row["valid"], valid, "l2 = {l2}");
        if !valid {
            continue;
        }
        let expected = if l2 <= 7 { 1 } else { 3 };
        assert_eq!(row["ray_count"], expected, "l2 = {l2}");
    }
    let keys: Vec<u64> = rows.iter().map(|r| r["l2"].as_u64().unwrap()).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn scan_csv_columns() {
    let (code, out, _) = sasaki("scan csc --base CP2 --l1 1 --w 3,2 --l2-from 1 --l2-to 13 --csv");
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        ["l2", "valid", "ray_count", "root_1", "root_2", "root_3", "regularity_1", "regularity_2", "regularity_3"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 13);
    assert_eq!(&rows[12][2], "3");
    assert_eq!(&rows[0][2], "1");
    assert_eq!(&rows[1][1], "false");
}

#[test]
fn deterministic_output() {
    let a = sasaki("scan csc --base CP2 --l1 1 --w 3,2 --l2-from 1 --l2-to 20 --json");
    let b = sasaki("scan csc --base CP2 --l1 1 --w 3,2 --l2-from 1 --l2-to 20 --json");
    assert_eq!(a, b);
}

#[test]
fn precision_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_sasaki"))
        .args("rays csc --base CP2 --l1 1 --l2 13 --w 3,2 --json".split_whitespace())
        .env("SASAKI_PRECISION_DIGITS", "12")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["rays"][0]["b"]["error_bound"], "1e-12");
}

#[test]
fn schema_rejects_malformed_numbers() {
    let mut v = json_report("topology sphere-join --r 2 --l1 1 --l2 13 --w 3,2");
    let compiled = schema();
    assert!(compiled.is_valid(&v));
    v["result"]["torsion_coefficient"] = serde_json::json!({ "num": "6" });
    assert!(!compiled.is_valid(&v));
    v["result"]["torsion_coefficient"] = serde_json::json!({ "num": "6", "den": "0" });
    assert!(!compiled.is_valid(&v));
    v["result"]["torsion_coefficient"] = serde_json::json!({ "decimal": "6.0" });
    assert!(!compiled.is_valid(&v));
    v["result"]["torsion_coefficient"] = serde_json::json!(6.5);
    assert!(!compiled.is_valid(&v));
}
