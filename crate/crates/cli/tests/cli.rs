use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use omegaq::simplicial::{point, SimplicialSetJson};
use omegaq::SimplicialMap;
use serde_json::Value;

fn omegaq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omegaq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = omegaq(&a);
    assert!(o.status.success(), "{args:?}: {}", stdout(&o));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("omegaq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn pretty_homology(v: &Value) -> Vec<String> {
    v["homology"].as_array().unwrap().iter().map(|h| h["pretty"].as_str().unwrap().to_string()).collect()
}

#[test]
fn homology_rp2_table() {
    let o = omegaq(&["homology", "--space", "rp2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("H0  ℤ\n") && text.contains("H1  ℤ/2\n") && text.contains("H2  0\n"), "{text}");
    assert_eq!(pretty_homology(&json_of(&["homology", "--space", "rp2"])), ["ℤ", "ℤ/2", "0"]);
}

#[test]
fn homology_with_coefficients() {
    let q = json_of(&["homology", "--space", "rp2", "--coeffs", "q"]);
    assert_eq!(pretty_homology(&q), ["ℤ", "0", "0"]);
    let z2 = json_of(&["homology", "--space", "rp2", "--coeffs", "zmod:2"]);
    assert_eq!(pretty_homology(&z2), ["ℤ/2", "ℤ/2", "ℤ/2"]);
}

#[test]
fn pi1_rp2() {
    let v = json_of(&["pi1", "--space", "rp2", "--tc-budget", "100"]);
    assert_eq!(v["order"], 2);
    assert_eq!(v["abelianization_pretty"], "ℤ/2");
    let text = stdout(&omegaq(&["pi1", "--space", "rp2", "--tc-budget", "100"]));
    assert!(text.contains("order  2"), "{text}");
}

#[test]
fn pi1_higman_is_inconclusive_not_an_error() {
    let v = json_of(&["pi1", "--space", "higman", "--tc-budget", "200"]);
    assert!(v["order"].is_null());
    assert_eq!(v["abelianization_pretty"], "0");
}

#[test]
fn detect_flagship() {
    let v = json_of(&["detect", "--map", "collapse:binary-icosahedral", "--up-to", "2", "--tc-budget", "10000"]);
    assert_eq!(v["outcome"]["status"], "not_weak_equivalence");
    let ws = v["outcome"]["witnesses"].as_array().unwrap();
    assert!(ws.iter().any(|w| w["kind"] == "Pi1Invariant" && w["source"] == "120" && w["target"] == "1"));
    assert!(ws.iter().any(|w| w["kind"] == "LocalHomology" && w["degree"] == 2 && w["target"]["free_rank"] == 0));
    assert!(!ws.iter().any(|w| w["kind"] == "OrdinaryHomology"));
    for t in v["transcript"].as_array().unwrap() {
        assert_eq!(t["inputs_hash"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn detect_identity_is_consistent() {
    let v = json_of(&["detect", "--map", "identity:torus", "--up-to", "2"]);
    assert_eq!(v["outcome"]["status"], "consistent_up_to");
    assert_eq!(v["outcome"]["depth"], 2);
}

#[test]
fn detect_from_map_file() {
    let x = Arc::new(omegaq::corpus::space("rp2").unwrap().into_data());
    let f = SimplicialMap::collapse(x, &point());
    let p = scratch("collapse_rp2.json", &serde_json::to_string(&f.to_json()).unwrap());
    let v = json_of(&["detect", "--map", p.to_str().unwrap(), "--up-to", "2"]);
    let ws = v["outcome"]["witnesses"].as_array().unwrap();
    assert!(ws.iter().any(|w| w["kind"] == "OrdinaryHomology" && w["degree"] == 1));
}

#[test]
fn local_homology_regular_and_file_module() {
    let v = json_of(&["local-homology", "--space", "p3", "--module", "regular"]);
    assert_eq!(pretty_homology(&v), ["ℤ", "0", "ℤ²"]);
    let sign = scratch("sign.json", r#"{"rank": 1, "action": {"a": {"rows": 1, "cols": 1, "entries": [[0, 0, "-1"]]}}}"#);
    let v = json_of(&["local-homology", "--space", "rp2", "--module", sign.to_str().unwrap()]);
    assert_eq!(pretty_homology(&v), ["ℤ/2", "0", "ℤ"]);
}

#[test]
fn export_round_trips_every_corpus_space() {
    for name in omegaq::corpus::names() {
        let o = omegaq(&["space", "export", "--space", name]);
        assert!(o.status.success());
        let text = stdout(&o);
        let j: SimplicialSetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(&j.to_data().unwrap(), omegaq::corpus::space(name).unwrap().data());
        let p = scratch(&format!("{name}.json"), &text);
        let from_file = json_of(&["homology", "--space", p.to_str().unwrap()]);
        assert_eq!(from_file, json_of(&["homology", "--space", name]), "{name}");
    }
}

#[test]
fn golden_outputs_are_stable() {
    for name in omegaq::corpus::names() {
        let a = stdout(&omegaq(&["homology", "--space", name]));
        let b = stdout(&omegaq(&["homology", "--space", name]));
        assert_eq!(a, b);
    }
    let a = json_of(&["detect", "--map", "collapse:p3", "--up-to", "2"]);
    let b = json_of(&["detect", "--map", "collapse:p3", "--up-to", "2"]);
    assert_eq!(a, b);
}

#[test]
fn listing_show_cobar_and_bar() {
    let list = json_of(&["space", "list"]);
    assert_eq!(list.as_array().unwrap().len(), omegaq::corpus::names().len());
    let show = json_of(&["space", "show", "--space", "torus"]);
    assert_eq!(show["euler_characteristic"], 0);
    let cb = json_of(&["cobar", "--space", "rp2", "--up-to", "2", "--max-len", "3"]);
    assert_eq!(cb["generators"][1]["differential"], "-2[a] - [a|a]");
    assert!(cb["d_squared"]["generator_failures"].as_array().unwrap().is_empty());
    let bar = json_of(&["bar", "--space", "rp2"]);
    assert_eq!(bar["square_zero_where_closed"], true);
    assert_eq!(bar["degrees"][0]["homology"]["free_rank"], 1);
}

#[test]
fn rejection_exits_one_with_error_object() {
    let o = omegaq(&["local-homology", "--space", "higman", "--tc-budget", "100"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "infinite_group");
    let o = omegaq(&["homology", "--space", "klein"]);
    assert_eq!(o.status.code(), Some(1));
    let bad = scratch("bad_module.json", r#"{"rank": 1, "action": {"a": {"rows": 1, "cols": 1, "entries": [[0, 0, "2"]]}}}"#);
    let o = omegaq(&["local-homology", "--space", "rp2", "--module", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_input_exits_two() {
    let garbage = scratch("garbage.json", "{ not json");
    for args in [
        vec!["homology", "--space", garbage.to_str().unwrap()],
        vec!["detect", "--map", garbage.to_str().unwrap()],
        vec!["homology", "--space", "rp2", "--coeffs", "zmod:x"],
        vec!["homology"],
        vec!["frobnicate"],
    ] {
        assert_eq!(omegaq(&args).status.code(), Some(2), "{args:?}");
    }
    let o = omegaq(&["homology", "--space", garbage.to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "malformed_input");
}
