use std::path::PathBuf;
use std::process::{Command, Output};

use cylmob::construction::{build, Family};
use cylmob::gf2::BinaryMatrix;
use serde_json::Value;

fn cylmob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cylmob")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Non-comment lines of a text artifact.
fn body(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/cylmob.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "integer" => v.is_u64() || v.is_i64(),
        "number" => v.is_number(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "object" => v.is_object(),
        "array" => v.is_array(),
        "null" => v.is_null(),
        _ => false,
    }
}

/// Checks required keys and declared property types of one `$defs` entry.
fn validate(def: &str, record: &Value) {
    let schema = schema();
    let defs = &schema["$defs"];
    let d = &defs[def];
    for key in d["required"].as_array().unwrap() {
        assert!(record.get(key.as_str().unwrap()).is_some(), "{def}: missing {key} in {record}");
    }
    for (key, prop) in d["properties"].as_object().unwrap() {
        let Some(v) = record.get(key) else { continue };
        let mut prop = prop;
        if let Some(r) = prop.get("$ref") {
            prop = &defs[r.as_str().unwrap().trim_start_matches("#/$defs/")];
        }
        let ok = match &prop["type"] {
            Value::String(t) => type_matches(t, v),
            Value::Array(ts) => ts.iter().any(|t| type_matches(t.as_str().unwrap(), v)),
            _ => true,
        };
        assert!(ok, "{def}.{key}: {v} does not match {}", prop["type"]);
    }
}

fn provenance_line(stderr: &[u8]) -> Value {
    let text = String::from_utf8_lossy(stderr);
    let line = text.lines().find_map(|l| l.strip_prefix("# provenance: ")).expect("provenance on stderr");
    serde_json::from_str(line).unwrap()
}

#[test]
fn params_record() {
    let o = cylmob(&["params", "--family", "cylindrical", "--L", "3"]);
    assert_eq!(stdout(&o).trim(), r#"{"n":15,"k":1,"dX":3,"dZ":3}"#);
    validate("provenance", &provenance_line(&o.stderr));
    let o = cylmob(&["params", "--family", "surface", "--Lc", "3", "--Lf", "5"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    validate("params", &v);
    assert_eq!((v["n"].as_u64(), v["dX"].as_u64(), v["dZ"].as_u64()), (Some(23), Some(5), Some(3)));
}

#[test]
fn moebius_enumerator_csv() {
    let out = stdout(&cylmob(&["enumerate", "--family", "moebius", "--L", "3"]));
    let rows = body(&out);
    assert_eq!(&rows[..3], ["weight,count", "3,4", "4,18"]);
    let out = stdout(&cylmob(&["enumerate", "--family", "moebius", "--L", "3", "--format", "json", "--route", "direct"]));
    let v: Value = serde_json::from_str(&out).unwrap();
    validate("enumerators", &v);
    assert_eq!(v["L"][3], 4);
    assert_eq!(v["S"][0], 1);
}

#[test]
fn fractions_table_row() {
    let out = stdout(&cylmob(&["fractions", "--family", "cylindrical", "--Lc", "5", "--Lf", "3", "--j", "2"]));
    let rows = body(&out);
    assert_eq!(rows[0], "code,j,XX,XZ,XY,ZZ,ZY,YY");
    assert!(rows[1].starts_with("\"[[25,1,3/5]]\",2,0.150000,0.000000,"), "{}", rows[1]);
}

#[test]
fn decode_worked_example() {
    let out = stdout(&cylmob(&["decode", "--family", "cylindrical", "--L", "3", "--error", "Y7 Y10"]));
    let v: Value = serde_json::from_str(&out).unwrap();
    validate("decode", &v);
    assert_eq!(v["correction"], "X1 Z13");
    assert_eq!(v["residual_class"], "logical_z");
    let syndrome = v["syndrome"].as_str().unwrap().to_string();
    let out = stdout(&cylmob(&["decode", "--family", "cylindrical", "--L", "3", "--syndrome", &syndrome, "--debug"]));
    let mut lines = out.lines().filter(|l| !l.starts_with("# provenance"));
    let v: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(v["correction"], "X1 Z13");
    let rest: Vec<&str> = lines.collect();
    assert!(rest.contains(&"# X-check graph (a b qubit)"));
    assert!(rest.iter().any(|l| l.ends_with(" 1") && l.split(' ').count() == 3));
}

#[test]
fn beta_and_bound_records() {
    let v: Value =
        serde_json::from_str(&stdout(&cylmob(&["beta", "--family", "cylindrical", "--L", "3", "--A", "1"]))).unwrap();
    validate("value", &v);
    assert_eq!(v["exact"], "89/105");
    let v: Value =
        serde_json::from_str(&stdout(&cylmob(&["beta", "--family", "moebius", "--L", "3", "--A", "inf"]))).unwrap();
    assert_eq!((v["A"].as_str(), v["exact"].as_str()), (Some("inf"), Some("34/35")));
    let out = stdout(&cylmob(&["bound", "--family", "cylindrical", "--d", "3", "--A", "inf", "--p", "0.001"]));
    let v: Value = serde_json::from_str(&out).unwrap();
    validate("value", &v);
    assert!((v["value"].as_f64().unwrap() - 32.0 / 35.0).abs() < 1e-12);
}

#[test]
fn logicals_and_export() {
    let v: Value = serde_json::from_str(&stdout(&cylmob(&[
        "logicals", "--family", "moebius", "--L", "3", "--format", "json",
    ])))
    .unwrap();
    validate("logicals", &v);
    assert_eq!(v["logical_z"][0], "Z8 Z11 Z14");
    let out = stdout(&cylmob(&["export", "--family", "surface", "--L", "3", "--matrix", "hz"]));
    let m = BinaryMatrix::from_text(&out).unwrap();
    assert_eq!(&m, build(Family::Surface, 3, 3).unwrap().h_z());
    let out = stdout(&cylmob(&["build", "--family", "cylindrical", "--L", "3"]));
    let params = out.lines().find_map(|l| l.strip_prefix("# params: ")).unwrap();
    validate("build", &serde_json::from_str(params).unwrap());
    let hx: String = out.lines().skip_while(|l| *l != "# H_X").skip(1).take_while(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    assert_eq!(&BinaryMatrix::from_text(&hx).unwrap(), build(Family::Cylindrical, 3, 3).unwrap().h_x());
}

#[test]
fn simulation_records_generated_seed_and_reruns() {
    let file = tmp("sim.json");
    let o = cylmob(&[
        "simulate", "--family", "cylindrical", "--L", "3", "--A", "1", "--p", "0.05", "--max-shots", "20000",
        "--out", file.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let env: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    validate("envelope", &env);
    validate("simulation_report", &env["result"]);
    let seed = env["provenance"]["config"]["seed"].as_u64().expect("seed recorded");
    assert_eq!(env["result"]["seed"].as_u64(), Some(seed));
    let again: Value = serde_json::from_str(&stdout(&cylmob(&["rerun", file.to_str().unwrap()]))).unwrap();
    assert_eq!(again, env["result"]);
}

#[test]
fn worker_count_does_not_change_output() {
    let run = |w: &str| {
        stdout(&cylmob(&[
            "sweep", "--family", "moebius", "--L", "3", "--A", "10", "--p-grid", "0.02,0.05", "--seed", "3",
            "--max-shots", "30000", "--workers", w,
        ]))
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    let rows = body(&one);
    assert_eq!(rows[0], "family,Lc,Lf,A,p,p_L,ci_low,ci_high,shots,failures");
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("moebius,3,3,10,0.02,"));
}

#[test]
fn threshold_csv_and_rerun() {
    let file = tmp("threshold.csv");
    let o = cylmob(&[
        "threshold", "--family", "cylindrical", "--A", "inf", "--shots", "4000", "--seed", "8",
        "--p-grid", "0.04,0.08,0.12,0.16,0.2", "--out", file.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("# provenance: "));
    let p_th: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# p_th = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((0.04..=0.2).contains(&p_th));
    assert_eq!(body(&text).len(), 1 + 2 * 5);
    assert_eq!(stdout(&cylmob(&["rerun", file.to_str().unwrap()])), text);
}

#[test]
fn exit_codes() {
    assert_eq!(cylmob(&["params", "--family", "torus", "--L", "3"]).status.code(), Some(2));
    assert_eq!(cylmob(&["params", "--family", "surface"]).status.code(), Some(2));
    assert_eq!(cylmob(&["params", "--family", "surface", "--L", "1"]).status.code(), Some(2));
    assert_eq!(cylmob(&["simulate", "--family", "surface", "--L", "3", "--A", "-1", "--p", "0.1"]).status.code(), Some(2));
    let o = cylmob(&["fractions", "--family", "cylindrical", "--L", "9", "--j", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    let o = cylmob(&["fractions", "--family", "cylindrical", "--L", "3", "--j", "2", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let bad = tmp("missing-dir").join("x.json");
    assert_eq!(cylmob(&["params", "--family", "surface", "--L", "3", "--out", bad.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(cylmob(&["rerun", bad.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn reproduce_paper_fast_path() {
    let out = stdout(&cylmob(&["reproduce-paper", "--skip-slow"]));
    assert!(out.lines().any(|l| l.starts_with("SKIP") && l.contains("Monte Carlo")));
    assert!(!out.lines().any(|l| l.starts_with("FAIL")));
    assert!(out.trim_end().ends_with("0 failed, 0 flagged, 6 skipped"));
    assert!(out.lines().any(|l| l.starts_with("PASS") && l.contains("moebius closed-form")));
}
