use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).expect("stdout is JSON")
    }
}

fn krull(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_krull"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn krull");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn req(args: &[&str], v: &Value) -> Run {
    krull(args, &v.to_string())
}

fn z4_chain() -> Value {
    json!({ "ring": {"ring": "Zmod", "n": 4}, "chain": [{"J": [], "U": ["2"]}, {"J": ["2"], "U": ["1"]}] })
}

fn z_pair() -> Value {
    json!({ "ring": {"ring": "Z"}, "chain": [{"J": [], "U": ["2"]}, {"J": ["2"], "U": ["3"]}, {"J": ["3"], "U": ["1"]}] })
}

fn gaussian() -> Value {
    json!({ "base": {"ring": "Z"}, "monic": "Y^2+1" })
}

fn sqrt2() -> Value {
    json!({ "base": {"ring": "Z"}, "monic": "Y^2-2" })
}

#[test]
fn collapse_of_two_in_z4_is_true() {
    let r = req(&["collapse"], &z4_chain());
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["v"], 1);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 1);
}

#[test]
fn tampered_certificate_is_invalid() {
    let r = req(&["certify"], &z_pair());
    assert_eq!(r.code, 0);
    let mut v = r.json();
    let levels = v["certificates"][0]["certificate"]["levels"].as_array_mut().unwrap();
    let (k, c) = levels
        .iter()
        .flat_map(|l| l["cof"].as_object().unwrap().iter())
        .find(|(_, c)| c.as_str() != Some("0"))
        .map(|(k, c)| (k.clone(), c.as_str().unwrap().parse::<i64>().unwrap()))
        .expect("a nonzero cofactor");
    for l in levels.iter_mut() {
        if let Some(x) = l["cof"].get_mut(&k) {
            if x.as_str() != Some("0") {
                *x = json!((c + 1).to_string());
                break;
            }
        }
    }
    let bad = req(&["verify"], &v);
    assert_eq!(bad.code, 1, "{}", bad.stdout);
    assert_eq!(bad.json()["verdict"], false);
}

#[test]
fn spec_of_three_element_chain_has_two_points() {
    let r = req(&["lattice", "spec"], &json!({ "presentation": {"gens": ["a"], "axioms": []} }));
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["result"]["count"], 2);
    assert_eq!(v["result"]["points"].as_array().unwrap().len(), 2);
}

#[test]
fn malformed_json_reports_a_position() {
    let r = krull(&["collapse"], "{\"ring\": {\"ring\": \"Z\"},\n  \"chain\": [");
    assert_eq!(r.code, 2);
    let v = r.json();
    assert_eq!(v["error"]["kind"], "Json");
    let msg = v["error"]["message"].as_str().unwrap();
    assert!(msg.contains("line 2") && msg.contains("column"), "{msg}");
    assert!(r.stderr.contains("line 2"));
}

#[test]
fn unknown_fields_and_versions_are_rejected() {
    let mut v = z4_chain();
    v["colour"] = json!("blue");
    assert_eq!(req(&["collapse"], &v).code, 2);
    let mut v = z4_chain();
    v["chain"][0]["W"] = json!([]);
    assert_eq!(req(&["collapse"], &v).code, 2);
    let mut v = z4_chain();
    v["v"] = json!(2);
    assert_eq!(req(&["collapse"], &v).code, 2);
    v["v"] = json!(1);
    assert_eq!(req(&["collapse"], &v).code, 0);
    let bad_ring = json!({ "ring": {"ring": "Poly", "coeff": {"Fp": 4}, "vars": ["X"]}, "chain": [{"J": [], "U": ["X"]}] });
    let r = req(&["collapse"], &bad_ring);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"]["kind"], "InvalidDescriptor");
}

#[test]
fn caps_are_parsed_and_enforced() {
    assert_eq!(req(&["collapse", "--caps", "bogus=1"], &z4_chain()).code, 2);
    let p = json!({ "presentation": {"gens": ["a", "b", "c"], "axioms": []} });
    let r = req(&["lattice", "spec", "--caps", "lattice=2"], &p);
    assert_eq!(r.code, 3);
    assert_eq!(r.json()["error"]["kind"], "CapExceeded");
    let r = req(&["lattice", "bool", "--caps", "elements=3"], &json!({ "presentation": {"gens": ["a"], "axioms": []} }));
    assert_eq!(r.code, 3);
}

#[test]
fn verdict_false_exits_one() {
    let r = req(&["collapse"], &json!({ "ring": {"ring": "Poly", "coeff": "Q", "vars": ["X"]}, "chain": [{"J": [], "U": ["X"]}, {"J": ["X"], "U": ["1"]}] }));
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["verdict"], false);
    let r = req(&["certify"], &json!({ "ring": {"ring": "Z"}, "chain": [{"J": [], "U": ["2"]}, {"J": ["2"], "U": ["1"]}] }));
    assert_eq!(r.code, 1);
}

/// Requests whose responses carry certificates, one per command family.
fn certified_requests() -> Vec<(Vec<&'static str>, Value)> {
    vec![
        (vec!["collapse"], z4_chain()),
        (vec!["certify"], z_pair()),
        (vec!["pseudo-regular"], json!({ "ring": {"ring": "Z"}, "seq": ["2", "3"] })),
        (vec!["dim-le"], json!({ "ring": {"ring": "Poly", "coeff": "Q", "vars": ["X"]}, "ell": 1, "count": 4 })),
        (vec!["dim-le"], json!({ "ring": {"ring": "Zmod", "n": 12}, "ell": 0, "testset": [["2"], ["3"], ["5"]] })),
        (vec!["saturate-member"], json!({ "ring": {"ring": "Z"}, "prime": {"J": ["0"], "U": ["2"]}, "x": "4", "side": "monoid" })),
        (vec!["zar", "entails"], json!({ "ring": {"ring": "Poly", "coeff": "Q", "vars": ["X", "Y"]}, "U": ["X+Y"], "J": ["X", "Y"] })),
        (vec!["zar", "bridge"], z4_chain()),
        (vec!["zar", "dim-le"], json!({ "ring": {"ring": "Zmod", "n": 12}, "ell": 0, "testset": [["2"], ["3"], ["6"]] })),
        (vec!["lattice", "dim"], json!({ "presentation": {"gens": ["a"], "axioms": []}, "d": 1 })),
        (vec!["ext", "above"], json!({ "extension": gaussian(), "x": "1+Y" })),
        (vec!["ext", "lying-over"], json!({ "extension": gaussian(), "prime": {"J": ["2"], "U": ["2"]} })),
        (vec!["ext", "going-up"], json!({ "extension": gaussian(), "c2": [{"J": [], "U": ["2"]}, {"J": ["2"], "U": ["3"]}, {"J": ["3"], "U": ["1"]}] })),
        (
            vec!["ext", "going-down"],
            json!({ "extension": sqrt2(), "prime": {"J": ["2"], "U": ["3"]}, "u0": "3", "v1": "2*Y", "decomposition": [{"i": "2", "b": "3*Y"}] }),
        ),
        (
            vec!["ext", "going-down"],
            json!({ "ring": {"ring": "Z"}, "vars": ["X"], "prime": {"J": ["2"], "U": ["1"]}, "u0": "2", "v1": "-2*X", "decomposition": [{"i": "4", "b": "X"}] }),
        ),
    ]
}

#[test]
fn every_certificate_round_trips_through_verify() {
    for (args, v) in certified_requests() {
        let r = req(&args, &v);
        assert!(r.code == 0 || r.code == 1, "{args:?}: {}", r.stdout);
        let out = r.json();
        let n = out["certificates"].as_array().unwrap().len();
        assert!(n > 0, "{args:?} emitted no certificate");
        let back = krull(&["verify"], &r.stdout);
        assert_eq!(back.code, 0, "{args:?}: {}", back.stdout);
        assert_eq!(back.json()["result"]["checked"], n);
        for c in out["certificates"].as_array().unwrap() {
            assert_eq!(req(&["verify"], c).code, 0, "{args:?} record {c}");
        }
    }
}

#[test]
fn identical_requests_give_identical_bytes() {
    for (args, v) in certified_requests() {
        let a = req(&args, &v);
        let b = req(&args, &v);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.code, b.code);
    }
    let gen = json!({ "ring": {"ring": "Poly", "coeff": {"Fp": 5}, "vars": ["X", "Y"]}, "ell": 2, "count": 5 });
    let a = req(&["dim-le", "--seed", "7"], &gen);
    let b = req(&["dim-le", "--seed", "7"], &gen);
    let c = req(&["dim-le", "--seed", "8"], &gen);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.json()["result"]["entries"], c.json()["result"]["entries"]);
}

#[test]
fn verify_rejects_empty_and_unknown_records() {
    assert_eq!(req(&["verify"], &json!({ "certificates": [] })).code, 2);
    assert_eq!(req(&["verify"], &json!({ "kind": "mystery" })).code, 2);
    let rec = json!({ "kind": "membership", "ring": {"ring": "Z"}, "ideal": ["4", "6"], "x": "2", "exponent": 1, "cofactors": ["-1", "1"] });
    assert_eq!(req(&["verify"], &rec).code, 0);
    let mut wrong = rec.clone();
    wrong["cofactors"] = json!(["1", "1"]);
    assert_eq!(req(&["verify"], &wrong).code, 1);
}

#[test]
fn lattice_commands() {
    let chain3 = json!({"gens": ["a"], "axioms": []});
    let r = req(&["lattice", "dim"], &json!({ "presentation": chain3, "d": 0 }));
    assert_eq!(r.code, 1);
    let r = req(&["lattice", "leq"], &json!({ "presentation": chain3, "x": [["a"]], "y": [[]] }));
    assert_eq!(r.code, 0);
    let r = req(&["lattice", "leq"], &json!({ "presentation": chain3, "x": [[]], "y": [["a"]] }));
    assert_eq!(r.code, 1);
    let r = req(&["lattice", "bool"], &json!({ "presentation": chain3 }));
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["result"]["size"], 4);
    let r = req(&["lattice", "close"], &json!({ "presentation": {"gens": ["a", "b"], "axioms": [{"lhs": ["a"], "rhs": ["b"]}]} }));
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["result"]["minimal_sequents"], json!([{"lhs": ["a"], "rhs": ["b"]}]));
    let r = req(&["lattice", "kr"], &json!({ "presentation": chain3, "ell": 0 }));
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["result"]["presentation"]["gens"], json!(["a@0"]));
}

#[test]
fn extension_refusals() {
    let r = req(&["ext", "lying-over"], &json!({ "extension": gaussian(), "prime": {"J": ["2"], "U": ["3"]} }));
    assert_eq!(r.code, 1);
    let r = req(
        &["ext", "going-down"],
        &json!({ "ring": {"ring": "Z"}, "vars": ["X"], "prime": {"J": ["6"], "U": ["1"]}, "u0": "3", "v1": "2*X", "decomposition": [{"i": "-6", "b": "X"}] }),
    );
    assert_eq!(r.code, 1);
    let r = req(
        &["ext", "going-down"],
        &json!({ "extension": sqrt2(), "prime": {"J": ["2"], "U": ["3"]}, "u0": "3", "v1": "2*Y", "decomposition": [{"i": "3", "b": "2*Y"}] }),
    );
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"]["kind"], "MalformedWitness");
    let r = req(&["ext", "above"], &json!({ "extension": {"base": {"ring": "Z"}, "monic": "Y^2+1"}, "x": [1, 1] }));
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["diagnostics"]["ladder_rungs"], 2);
}

#[test]
fn text_format_leads_with_the_verdict() {
    let r = req(&["collapse", "--format", "text"], &z4_chain());
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("command: collapse\nverdict: true\n"), "{}", r.stdout);
}

#[test]
fn requests_can_come_from_a_file() {
    let dir = std::env::temp_dir().join(format!("krull-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("req.json");
    std::fs::write(&path, z4_chain().to_string()).unwrap();
    let r = krull(&["collapse", "--file", path.to_str().unwrap()], "");
    assert_eq!(r.code, 0);
    let r = krull(&["collapse", "--file", dir.join("missing.json").to_str().unwrap()], "");
    assert_eq!(r.code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
