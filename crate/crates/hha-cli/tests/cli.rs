//! End-to-end tests of the input format, the commands and their exit statuses.

use std::path::PathBuf;
use std::process::Command;

use hha::catalog::{get_example, names};
use hha::constructions::Built;
use hha::{HypercomplexStructure, Scalar};
use hha_cli::report::parse_text_verdicts;
use hha_cli::{export, parse_input, run_args, InputDocument, Outcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn tmp(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}"));
    std::fs::write(&p, contents).unwrap();
    p
}

fn exported(name: &str) -> PathBuf {
    let out = hha(&["catalog", "export", name]);
    assert_eq!(out.status, 0, "{}", out.stderr);
    tmp(&format!("{name}.json"), &out.stdout)
}

fn hha(args: &[&str]) -> Outcome {
    run_args(std::iter::once("hha").chain(args.iter().copied()), None)
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", out.stdout))
}

fn json_flags(v: &Value) -> Vec<(String, bool)> {
    v["flags"].as_object().unwrap().iter().map(|(k, b)| (k.clone(), b.as_bool().unwrap())).collect()
}

#[test]
fn every_catalog_entry_round_trips_through_the_input_format() {
    for name in names() {
        let e = get_example(&name).unwrap();
        let doc = export(&name, &Built { h: e.h.clone(), metric: e.metric.clone() }, &e.expect.flags).unwrap();
        let text = doc.to_json();
        let parsed = parse_input(&text, None).unwrap();
        assert_eq!(parsed, doc, "{name}");
        let built = parsed.load().unwrap();
        assert_eq!(built.h.algebra(), e.h.algebra(), "{name}");
        assert_eq!(built.metric.omega(), e.metric.omega(), "{name}");
        let again = export(&name, &built, &e.expect.flags).unwrap();
        assert_eq!(again.to_json(), text, "{name}");
    }
}

#[test]
fn dimension_must_be_a_multiple_of_four() {
    let err = parse_input(r#"{"name": "x", "dimension": 6, "structure_equations": []}"#, None).unwrap_err();
    assert!(err.to_string().contains("dimension must be a multiple of 4"), "{err}");
    let p = tmp("dim6.json", r#"{"name": "x", "dimension": 6, "structure_equations": []}"#);
    let out = hha(&["check", p.to_str().unwrap()]);
    assert_eq!(out.status, 2);
    assert!(out.stderr.contains("dimension must be a multiple of 4"));
}

#[test]
fn zero_denominator_is_a_parse_error() {
    let text = r#"{"name": "x", "dimension": 4, "structure_equations": [{"k": 1, "i": 1, "j": 2, "c": "1/0"}]}"#;
    let err = parse_input(text, None).unwrap_err().to_string();
    assert!(err.contains("structure_equations[0].c") && err.contains("parse error"), "{err}");
}

#[test]
fn schema_violations_are_reported() {
    let cases = [
        (r#"{"name": "x", "dimension": 4}"#, "exactly one of brackets or structure_equations"),
        (r#"{"name": "x", "dimension": 4, "brackets": [], "structure_equations": []}"#, "exactly one of brackets or structure_equations"),
        (r#"{"name": "x", "dimension": 4, "structure_equations": [], "colour": 1}"#, "unknown field"),
        (r#"{"name": "x", "dimension": 4, "structure_equations": [{"k": 5, "i": 1, "j": 2, "c": "1"}]}"#, "outside 1..=4"),
        (r#"{"name": "x", "dimension": 4, "structure_equations": [{"k": 1, "i": 2, "j": 2, "c": "1"}]}"#, "vanishes"),
        (r#"{"name": "x", "dimension": 4, "structure_equations": [], "metric": {"diagonal_unitary": ["1", "2"]}}"#, "expected 1 entries"),
        (r#"{"name": "x", "dimension": 4, "structure_equations": [], "hypercomplex": "twisted"}"#, "unknown structure"),
        (r#"{"name": "x", "dimension": 4, "scalar_field": "Q(sqrt(4))", "structure_equations": []}"#, "square-free"),
        (r#"{"name": "x", "dimension": 4, "structure_equations": [{"k": 1, "i": 1, "j": 2, "c": "sqrt(2)"}]}"#, "not rational"),
        (
            r#"{"name": "x", "dimension": 4, "structure_equations": [], "metric": {"omega": [{"i": 1, "j": 5, "re": "1"}]}}"#,
            "outside 1..=2",
        ),
        (r#"{"name": "x", "dimension": 4, "structure_equations": [] "#, "line 1"),
    ];
    for (text, needle) in cases {
        let err = parse_input(text, None).unwrap_err().to_string();
        assert!(err.contains(needle), "{text}: {err}");
    }
}

#[test]
fn load_time_validation_errors_exit_with_status_two() {
    let cases = [
        // ad(e1) acts on e4 but not as a derivation of the other brackets.
        (
            r#"{"name": "x", "dimension": 4, "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}, {"i": 2, "j": 3, "k": 1, "c": "1"}, {"i": 1, "j": 3, "k": 2, "c": "1"}, {"i": 1, "j": 4, "k": 4, "c": "1"}]}"#,
            "Jacobi identity fails",
        ),
        (r#"{"name": "x", "dimension": 4, "structure_equations": [{"k": 4, "i": 1, "j": 3, "c": "1"}]}"#, "not integrable"),
        (r#"{"name": "x", "dimension": 4, "structure_equations": [], "metric": {"diagonal_unitary": ["-1"]}}"#, "not positive"),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let p = tmp(&format!("invalid{i}.json"), text);
        let out = hha(&["check", p.to_str().unwrap()]);
        assert_eq!(out.status, 2, "{text}: {}", out.stdout);
        assert!(out.stderr.contains(needle), "{}", out.stderr);
    }
}

#[test]
fn default_field_comes_from_the_environment() {
    let text = r#"{"name": "x", "dimension": 4, "structure_equations": [], "metric": {"diagonal_unitary": ["sqrt(2)"]}}"#;
    assert!(parse_input(text, None).is_err());
    let doc = parse_input(text, Some("Q(sqrt(2))")).unwrap();
    assert_eq!(doc.scalar_field.as_deref(), Some("Q(sqrt(2))"));
    let p = tmp("sqrt2.json", text);
    let bin = env!("CARGO_BIN_EXE_hha");
    let without = Command::new(bin).env_remove("HHA_DEFAULT_FIELD").args(["check", p.to_str().unwrap()]).output().unwrap();
    assert_eq!(without.status.code(), Some(2));
    let with = Command::new(bin).env("HHA_DEFAULT_FIELD", "Q(sqrt(2))").args(["check", p.to_str().unwrap()]).output().unwrap();
    assert_eq!(with.status.code(), Some(0), "{}", String::from_utf8_lossy(&with.stderr));
}

#[test]
fn classify_qbal12_and_its_swapped_pair() {
    let p = exported("qbal12");
    let f = p.to_str().unwrap();
    let out = hha(&["classify", f, "--format", "json"]);
    assert_eq!(out.status, 0);
    let v = json(&out);
    assert_eq!(v["flags"]["q_balanced"], Value::Bool(true));
    assert_eq!(v["provenance"]["library_version"], Value::String(hha::VERSION.into()));
    assert_eq!(v["provenance"]["input_sha256"].as_str().unwrap().len(), 64);
    let swapped = hha(&["classify", f, "--pair", "0,1,0;1,0,0", "--format", "json"]);
    assert_eq!(swapped.status, 0, "{}", swapped.stderr);
    let w = json(&swapped);
    assert_eq!(w["flags"]["q_balanced"], Value::Bool(true));
    assert_eq!(w["provenance"]["pair"], Value::String("0,1,0;1,0,0".into()));
}

#[test]
fn swapped_pair_on_qsg12_breaks_the_stored_expectation() {
    let p = exported("qsg12");
    let out = hha(&["classify", p.to_str().unwrap(), "--pair", "0,1,0;1,0,0"]);
    assert_eq!(out.status, 1);
    assert!(out.stderr.contains("q_strongly_gauduchon expected true, got false"), "{}", out.stderr);
    let v = parse_text_verdicts(&out.stdout);
    assert!(v.contains(&("q_balanced".into(), false)));
    assert!(v.contains(&("q_gauduchon".into(), true)));
}

#[test]
fn json_output_is_byte_stable_and_matches_text_verdicts() {
    for name in ["qbal12", "qsg12", "qgau8", "solv_third", "joyce_su2", "abelian8"] {
        let p = exported(name);
        let f = p.to_str().unwrap();
        let a = hha(&["classify", f, "--format", "json"]);
        let b = hha(&["classify", f, "--format", "json"]);
        assert_eq!(a.stdout, b.stdout, "{name}");
        let text = hha(&["classify", f]);
        assert_eq!(parse_text_verdicts(&text.stdout), json_flags(&json(&a)), "{name}");
    }
    let a = hha(&["catalog", "all", "--format", "json"]);
    let b = hha(&["catalog", "run", "all", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

fn random_document(rng: &mut ChaCha8Rng, base: &InputDocument) -> InputDocument {
    let mut doc = base.clone();
    let n = doc.n();
    doc.expect.clear();
    doc.metric = Some(if rng.gen_bool(0.5) {
        hha_cli::input::MetricSpec::DiagonalUnitary((0..n).map(|_| format!("{}/{}", rng.gen_range(1..=9), rng.gen_range(1..=9))).collect())
    } else {
        // Id + M^T M for a random right-multiplication block matrix.
        let q: Vec<Scalar> = (0..4 * n * n).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect();
        let m = hha::audit::metric_from_quaternions(n, &q).unwrap();
        let built = Built { h: base.load().unwrap().h, metric: m };
        let gram = built.metric.input_gram(&built.h).unwrap();
        hha_cli::input::MetricSpec::Gram(gram.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect())
    });
    doc
}

#[test]
fn randomized_documents_give_stable_consistent_reports() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let bases: Vec<InputDocument> = ["qbal12", "qsg12", "qgau8", "solv_rank1", "joyce_su2xsu2"]
        .iter()
        .map(|n| parse_input(&std::fs::read_to_string(exported(n)).unwrap(), None).unwrap())
        .collect();
    for case in 0..20 {
        let base = &bases[case % bases.len()];
        let doc = random_document(&mut rng, base);
        let p = tmp(&format!("random{case}.json"), &doc.to_json());
        let f = p.to_str().unwrap();
        let a = hha(&["classify", f, "--format", "json"]);
        assert_eq!(a.status, 0, "{}", a.stderr);
        let b = hha(&["classify", f, "--format", "json"]);
        assert_eq!(a.stdout, b.stdout);
        let text = hha(&["classify", f]);
        assert_eq!(parse_text_verdicts(&text.stdout), json_flags(&json(&a)));
        // Pair independence of the quaternionic balanced and Gauduchon verdicts.
        let swapped = json(&hha(&["classify", f, "--pair", "3/5,4/5,0;-4/5,3/5,0", "--format", "json"]));
        let v = json(&a);
        assert_eq!(swapped["flags"]["q_balanced"], v["flags"]["q_balanced"]);
        assert_eq!(swapped["flags"]["q_gauduchon"], v["flags"]["q_gauduchon"]);
    }
}

#[test]
fn brackets_and_structure_equations_agree() {
    let eqs = r#"{"name": "h", "dimension": 12, "structure_equations": [
        {"k": 9, "i": 1, "j": 5, "c": "1"}, {"k": 10, "i": 1, "j": 6, "c": "1"},
        {"k": 11, "i": 1, "j": 7, "c": "1"}, {"k": 12, "i": 1, "j": 8, "c": "1"}]}"#;
    let br = r#"{"name": "h", "dimension": 12, "brackets": [
        {"i": 1, "j": 5, "k": 9, "c": "-1"}, {"i": 1, "j": 6, "k": 10, "c": "-1"},
        {"i": 1, "j": 7, "k": 11, "c": "-1"}, {"i": 6, "j": 1, "k": 10, "c": "0"}, {"i": 8, "j": 1, "k": 12, "c": "1"}]}"#;
    let a = parse_input(eqs, None).unwrap().load().unwrap();
    let b = parse_input(br, None).unwrap().load().unwrap();
    assert_eq!(a.h.algebra(), b.h.algebra());
    assert_eq!(a.h.algebra(), get_example("qbal12").unwrap().h.algebra());
}

fn matrix_json(m: &[Vec<Scalar>]) -> String {
    let rows: Vec<String> =
        m.iter().map(|r| format!("[{}]", r.iter().map(|x| format!("\"{x}\"")).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

#[test]
fn explicit_structure_matches_the_rotated_pair() {
    let qsg = std::fs::read_to_string(exported("qsg12")).unwrap();
    let mut doc: Value = serde_json::from_str(&qsg).unwrap();
    let std = HypercomplexStructure::standard(3);
    // Swap I and J and drop the Omega metric: the unitary Gram matrix 2 Id is given explicitly.
    let i = matrix_json(std.j());
    let j = matrix_json(std.i());
    doc["hypercomplex"] = serde_json::from_str(&format!(r#"{{"I": {i}, "J": {j}}}"#)).unwrap();
    let two_id: Vec<Vec<String>> = (0..12).map(|r| (0..12).map(|c| if r == c { "2".into() } else { "0".into() }).collect()).collect();
    doc["metric"] = serde_json::json!({ "gram": two_id });
    doc.as_object_mut().unwrap().remove("expect");
    let p = tmp("qsg12-swapped.json", &serde_json::to_string_pretty(&doc).unwrap());
    let explicit = json(&hha(&["classify", p.to_str().unwrap(), "--format", "json"]));
    let rotated = json(&hha(&["classify", exported("qsg12").to_str().unwrap(), "--pair", "0,1,0;1,0,0", "--format", "json"]));
    assert_eq!(explicit["flags"], rotated["flags"]);
    assert_eq!(explicit["flags"]["q_strongly_gauduchon"], Value::Bool(false));
    // Non-standard structures export as explicit matrices with a Gram matrix and round-trip.
    let parsed = parse_input(&std::fs::read_to_string(&p).unwrap(), None).unwrap();
    let built = parsed.load().unwrap();
    let again = export("qsg12-swapped", &built, &[]).unwrap();
    assert!(matches!(again.metric, Some(hha_cli::input::MetricSpec::Gram(_))));
    let rebuilt = parse_input(&again.to_json(), None).unwrap().load().unwrap();
    assert_eq!(rebuilt.metric.omega(), built.metric.omega());
}

#[test]
fn float_rendering_is_opt_in() {
    let p = exported("solv_rank1");
    let exact = json(&hha(&["classify", p.to_str().unwrap(), "--format", "json"]));
    assert_eq!(exact["einstein"]["lambda"], Value::String("-1/2".into()));
    let float = json(&hha(&["classify", p.to_str().unwrap(), "--format", "json", "--float"]));
    assert_eq!(float["einstein"]["lambda"], serde_json::json!(-0.5));
}

#[test]
fn catalog_commands() {
    let list = hha(&["catalog", "list"]);
    assert_eq!(list.status, 0);
    assert_eq!(list.stdout.lines().count(), names().len());
    let all = hha(&["catalog", "all"]);
    assert_eq!(all.status, 0, "{}", all.stdout);
    assert!(all.stdout.ends_with(&format!("{0}/{0} entries passed\n", names().len())));
    let run = json(&hha(&["catalog", "run", "qsg12", "--format", "json"]));
    assert_eq!(run["passed"], Value::Bool(true));
    assert_eq!(run["report"]["flags"]["q_strongly_gauduchon"], Value::Bool(true));
    let unknown = hha(&["catalog", "run", "nope"]);
    assert_eq!(unknown.status, 2);
    assert!(unknown.stderr.contains("unknown catalog entry"));
}

#[test]
fn certify_qbal_accepts_and_rejects() {
    let qsg = exported("qsg12");
    let ok = hha(&["certify-qbal", qsg.to_str().unwrap(), "--witness", "2*z5"]);
    assert_eq!(ok.status, 0, "{}", ok.stdout);
    assert!(ok.stdout.contains("accepted"));
    let qbal = exported("qbal12");
    let bad = hha(&["certify-qbal", qbal.to_str().unwrap(), "--witness", "2*z5"]);
    assert_eq!(bad.status, 1);
    let malformed = hha(&["certify-qbal", qsg.to_str().unwrap(), "--witness", "2*z5^z6"]);
    assert_eq!(malformed.status, 2);
}

#[test]
fn search_reports_witnesses() {
    let qbal = exported("qbal12");
    let found = json(&hha(&["search", qbal.to_str().unwrap(), "--predicate", "q_balanced", "--height", "1", "--format", "json"]));
    assert!(found["witness"].is_string());
    let qgau = exported("qgau12");
    let none = json(&hha(&["search", qgau.to_str().unwrap(), "--predicate", "q_strongly_gauduchon", "--height", "2", "--format", "json"]));
    assert!(none["witness"].is_null());
    assert_eq!(none["symbolic"]["never_zero"], Value::Bool(true));
    let bad = hha(&["search", qgau.to_str().unwrap(), "--predicate", "kahler"]);
    assert_eq!(bad.status, 2);
}

#[test]
fn construct_recipes_produce_loadable_documents() {
    let an = hha(&["construct", "an", "qbal12", "qbal12", "--e1", "2", "--e2", "2"]);
    assert_eq!(an.status, 0, "{}", an.stderr);
    let doc = parse_input(&an.stdout, None).unwrap();
    assert_eq!(doc.dimension, 28);
    let p = tmp("an.json", &an.stdout);
    let v = json(&hha(&["classify", p.to_str().unwrap(), "--format", "json"]));
    assert_eq!(v["flags"]["q_balanced"], Value::Bool(true));
    let derived = hha(&["construct", "an", "qbal12", "qbal12", "--e1", "9", "--e2", "2"]);
    assert_eq!(derived.status, 2);
    assert!(derived.stderr.contains("derived"), "{}", derived.stderr);

    let joyce = hha(&["construct", "joyce", "su2"]);
    assert_eq!(joyce.status, 0);
    assert!(joyce.stderr.contains("lambda: 1"));
    let jp = tmp("joyce-su2.json", &joyce.stdout);
    let m = "-1/2*sqrt(2)";
    let quats = format!("0,0,0,0;0,{m},0,0;0,0,{m},0;0,0,0,{m}");
    let bf = hha(&["construct", "bf", jp.to_str().unwrap(), "--quaternions", &quats]);
    assert_eq!(bf.status, 0, "{}", bf.stderr);
    assert!(bf.stderr.contains("pullback: alpha true beta true ric_chern true ric_bismut true"));
    let bp = tmp("bf.json", &bf.stdout);
    let v = json(&hha(&["classify", bp.to_str().unwrap(), "--format", "json"]));
    assert_eq!(v["flags"]["strong_hkt"], Value::Bool(true));
    let not_hom = hha(&["construct", "bf", jp.to_str().unwrap(), "--quaternions", "0,0,0,0;0,1,0,0;0,0,1,0;0,0,0,0"]);
    assert_eq!(not_hom.status, 2);
    let su3 = hha(&["construct", "joyce", "su3"]);
    assert!(parse_input(&su3.stdout, None).unwrap().scalar_field.as_deref() == Some("Q(sqrt(3))"));
}

#[test]
fn audit_command_passes_on_catalog_documents() {
    for name in ["qsg12", "joyce_su2", "solv_third"] {
        let out = hha(&["audit", exported(name).to_str().unwrap()]);
        assert_eq!(out.status, 0, "{name}: {}", out.stdout);
    }
}

#[test]
fn usage_errors_exit_with_status_two() {
    let bin = env!("CARGO_BIN_EXE_hha");
    let out = Command::new(bin).args(["classify"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["catalog", "list"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let missing = Command::new(bin).args(["check", "/nonexistent/file.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}
