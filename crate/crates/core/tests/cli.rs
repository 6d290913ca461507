use std::path::Path;
use std::process::Command;

use central_type::catalog;
use central_type::cochains::Cochain;
use central_type::groups::{AbelianGroup, Action, FiniteGroup};
use central_type::instance::Instance;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_central-type")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn catalog_file(dir: &Path, name: &str) -> String {
    let (code, text, _) = run(&["catalog", name]);
    assert_eq!(code, 0);
    write(dir, &format!("{name}.json"), &text)
}

/// `G = C₄` as an extension of `C₂` by `C₂` with the bijective `π`.
fn cyclic4_instance() -> Instance {
    let q = FiniteGroup::cyclic(2);
    let a = AbelianGroup::cyclic(2);
    let x = a.generator(0);
    Instance {
        name: Some("c4".into()),
        beta: Cochain::from_fn(2, 2, |g| if g[0] == 1 && g[1] == 1 { x.clone() } else { a.identity() }),
        pi: Some(Cochain::from_values(1, 2, vec![a.trivial_character(), a.basis_character(0)]).unwrap()),
        action: Action::trivial(&q, a.clone()),
        a,
        q,
        c: None,
    }
}

#[test]
fn certify_and_reverify_the_order_64_example() {
    let dir = tempfile::tempdir().unwrap();
    let file = catalog_file(dir.path(), "paper64");
    let cert = dir.path().join("cert.json");
    let cert = cert.to_str().unwrap();
    let (code, report, err) = run(&["certify", &file, "--twist", "--probe-complements", "--out", cert]);
    assert_eq!(code, 0, "{err}");
    assert!(report.contains("central type"));
    let (code, text, _) = run(&["reverify", cert]);
    assert_eq!(code, 0);
    assert!(text.contains("0 mismatches"));
}

#[test]
fn certificates_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let file = catalog_file(dir.path(), "klein4");
    let (c1, first, _) = run(&["certify", &file, "--twist", "--json"]);
    let (c2, second, _) = run(&["certify", &file, "--twist", "--json"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(first, second);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert!(v.get("timings_ms").is_none());
    assert_eq!(v["verdicts"]["central_type"], Value::Bool(true));
    let (_, timed, _) = run(&["certify", &file, "--json", "--timings"]);
    let v: Value = serde_json::from_str(&timed).unwrap();
    assert!(v.get("timings_ms").is_some());
}

#[test]
fn tampered_certificates_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let file = catalog_file(dir.path(), "split-eg3-sample");
    let (code, text, _) = run(&["certify", &file, "--json"]);
    assert_eq!(code, 0);
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["verdicts"]["center_dimension"] = Value::from(3);
    let bad = write(dir.path(), "bad.json", &v.to_string());
    let (code, _, err) = run(&["reverify", &bad]);
    assert_eq!(code, 20, "{err}");

    let mut v: Value = serde_json::from_str(&text).unwrap();
    let n = v["tables"]["zeta"]["values"].as_array().unwrap().len();
    let k = v["tables"]["zeta"]["values"][n - 1][0].as_i64().unwrap();
    v["tables"]["zeta"]["values"][n - 1][0] = Value::from(k + 1);
    let bad = write(dir.path(), "bad2.json", &v.to_string());
    let (code, _, err) = run(&["reverify", &bad]);
    assert_eq!(code, 20, "{err}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);

    let junk = write(d, "junk.json", "{ not json");
    assert_eq!(run(&["certify", &junk]).0, 10);

    let mut klein = catalog::klein4();
    klein.pi = None;
    let f = write(d, "nopi.json", &klein.to_json());
    assert_eq!(run(&["certify", &f]).0, 12);
    assert_eq!(run(&["extract", &f]).0, 12);

    // on C₄ acting trivially a cocycle is a homomorphism; this one is not
    let q = FiniteGroup::cyclic(4);
    let a = AbelianGroup::cyclic(4);
    let bad_pi = Instance {
        name: None,
        beta: Cochain::constant(2, 4, a.identity()),
        pi: Some(Cochain::from_values(1, 4, vec![a.trivial_character(), a.basis_character(0), a.trivial_character(), a.trivial_character()]).unwrap()),
        action: Action::trivial(&q, a.clone()),
        a,
        q,
        c: None,
    };
    let f = write(d, "badpi.json", &bad_pi.to_json());
    assert_eq!(run(&["certify", &f]).0, 13);

    let mut trivial = catalog::klein4();
    trivial.pi = Some(Cochain::constant(1, 2, trivial.a.trivial_character()));
    let f = write(d, "trivial.json", &trivial.to_json());
    assert_eq!(run(&["certify", &f, "--require-bijective"]).0, 14);
    assert_eq!(run(&["certify", &f]).0, 17);

    let f = write(d, "c4.json", &cyclic4_instance().to_json());
    assert_eq!(run(&["certify", &f]).0, 15);
}

#[test]
fn extract_reads_a_supplied_cocycle() {
    let dir = tempfile::tempdir().unwrap();
    let file = catalog_file(dir.path(), "klein4");
    let (_, text, _) = run(&["certify", &file, "--json"]);
    let cert: Value = serde_json::from_str(&text).unwrap();
    let base = cert["tables"]["c_pi"]["base"].as_u64().unwrap() as usize;
    let vals = cert["tables"]["c_pi"]["values"].as_array().unwrap();
    let mut inst: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let rows: Vec<Value> = vals
        .chunks(base)
        .map(|row| Value::Array(row.to_vec()))
        .collect();
    inst["c"] = Value::Array(rows);
    inst.as_object_mut().unwrap().remove("pi");
    let f = write(dir.path(), "withc.json", &inst.to_string());
    let (code, out, err) = run(&["extract", &f]);
    assert_eq!(code, 0, "{err}");
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["pi_c"], inst_pi(&file));
    assert_eq!(report["input_was_karp"], Value::Bool(true));
}

#[test]
fn search_and_selftest() {
    let dir = tempfile::tempdir().unwrap();
    let file = catalog_file(dir.path(), "paper64");
    let (code, out, _) = run(&["search", &file]);
    assert_eq!(code, 0);
    let found: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(found.as_array().unwrap().len(), 3);
    let (code, out, _) = run(&["selftest", "--seed", "5"]);
    assert_eq!(code, 0);
    assert!(!out.contains("FAIL"));
}

fn inst_pi(file: &str) -> Value {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    v["pi"].clone()
}
