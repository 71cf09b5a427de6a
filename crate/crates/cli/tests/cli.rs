use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgrade"))
        .args(args)
        .env_remove("NILGRADE_SEED")
        .env_remove("NILGRADE_TOL")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nilgrade-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn strip_elapsed(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed");
            m.values_mut().for_each(strip_elapsed);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_elapsed),
        _ => {}
    }
}

#[test]
fn construct_then_verify() {
    let out = run(&["construct", "--family", "a6", "--n", "8", "--params", "1,1,0,0,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let path = scratch("a6.json");
    std::fs::write(&path, &out.stdout).unwrap();

    let v = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    let doc = json_of(&v);
    assert_eq!(doc["associative"], true);
    assert_eq!(doc["nilindex"], 5);
    assert_eq!(doc["char_sequence"], serde_json::json!([5, 2, 1]));
    assert_eq!(doc["graded"], true);
}

#[test]
fn construct_output_round_trips_through_core() {
    let out = run(&["construct", "--family", "b4", "--n", "9", "--params", "1/2,-1,2-i,3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let a = nilgrade_core::json::algebra_from_json(&text).unwrap();
    let again = serde_json::to_string_pretty(&nilgrade_core::json::algebra_to_json(&a)).unwrap();
    assert_eq!(text.trim_end(), again.trim_end());
}

#[test]
fn verify_reports_violations() {
    // e1 e1 = e2 and e2 e1 = e1 breaks (e1 e1) e1 = e1 (e1 e1).
    let bad = r#"{"schema":"nilgrade/1","dim":3,"field":{"kind":"Q"},
        "table":[{"i":1,"j":1,"coeffs":[[2,"1"]]},{"i":2,"j":1,"coeffs":[[3,"1"]]}]}"#;
    let path = scratch("bad.json");
    std::fs::write(&path, bad).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert_eq!(doc["error"]["kind"], "not_associative");
    let triples = doc["error"]["violations"].as_array().unwrap();
    assert!(triples.contains(&serde_json::json!([1, 1, 1])), "violations: {triples:?}");
}

#[test]
fn classify_known_tuple() {
    let out = run(&["classify", "--family", "a6", "--params", "0,0,0,3,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["representative"], "A(0,0,0,1,0,0)");
    assert_eq!(doc["branch"], "a.1.1.1.2");
}

#[test]
fn parse_error_names_offending_tokens() {
    let out = run(&["classify", "--family", "a6", "--params", "1,x,0,0,y,0"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert_eq!(doc["error"]["kind"], "parse");
    assert_eq!(doc["error"]["tokens"], serde_json::json!(["x", "y"]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--family", "a6"]).status.code(), Some(2));
}

#[test]
fn isomorphic_exact_on_identical_inputs() {
    let out = run(&["construct", "--family", "a6", "--n", "7", "--params", "0,0,0,1,0,0"]);
    let path = scratch("iso.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();
    let res = run(&["isomorphic", p, p, "--mode", "exact"]);
    assert_eq!(res.status.code(), Some(0));
    assert_eq!(json_of(&res)["isomorphic"], true);
}

#[test]
fn nonexist_is_deterministic_up_to_timing() {
    let args = ["nonexist", "--n", "7", "--scenario", "r:1,3", "--field", "5,13"];
    let mut a = json_of(&run(&args));
    let mut b = json_of(&run(&args));
    assert_eq!(a["verdict"], "refuted at desk scale");
    strip_elapsed(&mut a);
    strip_elapsed(&mut b);
    assert_eq!(a, b);

    let single = json_of(&run(&["nonexist", "--n", "7", "--scenario", "shape:2,4,1", "--field", "5"]));
    assert_eq!(single["solutions_found"], 0);
    assert_ne!(single["verdict"], "refuted at desk scale");

    let default_primes = json_of(&run(&["nonexist", "--n", "7", "--scenario", "r:2,1"]));
    assert_eq!(default_primes["results"].as_array().unwrap().len(), 2);
    assert_eq!(default_primes["verdict"], "refuted at desk scale");
}

#[test]
fn acceptance_subset_is_byte_identical() {
    let a = run(&["acceptance", "--only", "4,7"]);
    let b = run(&["acceptance", "--only", "4,7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["passed"], true);
}

#[test]
fn output_flag_writes_file() {
    let path = scratch("out.json");
    let out = run(&["construct", "--family", "nullfiliform", "--n", "5", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["dim"], 5);
}
