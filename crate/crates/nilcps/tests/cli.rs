use std::path::PathBuf;
use std::process::Command;

use nilcps::json::cps_to_json;
use nilcps_core::catalog;
use serde_json::Value;

fn nilcps(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nilcps")).args(args).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, text)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nilcps-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn filiform_files() -> (String, String) {
    let (flat, nonflat) = catalog::filiform_examples();
    let a = scratch("flat.json");
    let b = scratch("nonflat.json");
    std::fs::write(&a, cps_to_json(&flat).to_string()).unwrap();
    std::fs::write(&b, cps_to_json(&nonflat).to_string()).unwrap();
    (a.display().to_string(), b.display().to_string())
}

#[test]
fn parse_prints_brackets() {
    let (code, v, _) = nilcps(&["parse", "(0,0,0,0,12,34)"]);
    assert_eq!(code, 0);
    let b = v["algebra"]["brackets"].as_array().unwrap();
    assert_eq!(b.len(), 2);
    assert_eq!(b[0]["coeffs"]["5"], "-1");
    assert_eq!((b[1]["i"].as_u64(), b[1]["j"].as_u64()), (Some(3), Some(4)));
}

#[test]
fn non_triangular_string_is_an_error() {
    let (code, v, _) = nilcps(&["parse", "(0,0,13)"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "salamon.triangularity");
    assert_eq!(v["passed"], false);
}

#[test]
fn missing_file_is_an_io_error() {
    let (code, v, _) = nilcps(&["connection-report", "--cps", "/nonexistent/cps.json"]);
    assert_eq!(code, 2);
    assert!(v["error"]["code"].as_str().unwrap().starts_with("io."));
}

#[test]
fn verify_catalog_is_deterministic() {
    let (code, v, first) = nilcps(&["verify-catalog", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 18);
    assert_eq!(v["rows"][4]["admits"], serde_json::json!([false, true, true]));
    let (_, _, second) = nilcps(&["verify-catalog", "--seed", "3"]);
    assert_eq!(first, second);
}

#[test]
fn structure_and_connection_reports() {
    let (flat, nonflat) = filiform_files();
    let (code, v, _) = nilcps(&["check-structure", "--cps", &flat]);
    assert_eq!(code, 0);
    assert_eq!(v["cps"]["valid"], true);
    assert_eq!(v["cps"]["abelian"], false);

    let (code, v, _) = nilcps(&["connection-report", "--cps", &flat]);
    assert_eq!(code, 0);
    assert_eq!(v["flat"], true);
    assert_eq!(v["completeness"]["method"], "algebraic");

    let (code, v, _) = nilcps(&["connection-report", "--cps", &nonflat]);
    assert_eq!(code, 0);
    assert_eq!(v["flat"], false);
    assert_eq!(v["ricci_flat"], true);
    assert_eq!(v["torsion_free"], true);
}

#[test]
fn hypercomplex_and_geodesic() {
    let (flat, nonflat) = filiform_files();
    let (code, v, _) = nilcps(&["hypercomplex", "--cps", &flat]);
    assert_eq!(code, 0);
    assert_eq!(v["integrable"], true);
    assert_eq!(v["obata"]["flat"], true);
    let (_, v, _) = nilcps(&["hypercomplex", "--cps", &nonflat]);
    assert_eq!(v["obata"]["flat"], false);
    assert_eq!(v["obata"]["ricci_flat"], true);

    let (code, v, _) = nilcps(&["geodesic", "--cps", &nonflat]);
    assert_eq!(code, 0);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-6);
}

#[test]
fn out_flag_writes_the_report() {
    let path = scratch("parse.json");
    let (code, _, text) = nilcps(&["parse", "(0,0,12)", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["algebra"]["dim"], 3);
}

#[test]
fn nonexistence_command() {
    let (code, v, _) = nilcps(&["nonexistence", "(0,0,0,12,23,14-35)"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}
