use std::process::Command;

use klr::{CartanData, LaurentPoly};
use serde_json::Value;

fn klr(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_klr")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, stdout, stderr) = klr(&all);
    assert_eq!(code, 0, "{stderr}");
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["schema"], "klr/1");
    doc
}

fn poly(v: &Value) -> LaurentPoly {
    let p: LaurentPoly = serde_json::from_value(v["terms"].clone()).unwrap();
    assert_eq!(p.to_string(), v["text"].as_str().unwrap());
    p
}

#[test]
fn graded_pair_prints_the_polynomial() {
    let (code, stdout, _) = klr(&["gdim", "--cartan", "A1~", "--weight", "1,2", "--nu", "2,1", "--nuprime", "2,1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "1+2q^2+2q^4+q^6\n");
    let doc = json(&["gdim", "--cartan", "A1~", "--weight", "1,2", "--nu", "2,1", "--nuprime", "2,1"]);
    assert_eq!(poly(&doc["gdim"]), "q^6+2q^4+2q^2+1".parse().unwrap());
}

#[test]
fn all_pairs_table() {
    let (code, stdout, _) = klr(&["dim", "--cartan", "A2", "--weight", "1,1", "--beta", "1,1", "--all-pairs"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[1], "(1,2)\t2\t1");
    assert_eq!(lines[2], "(2,1)\t1\t2");
    assert_eq!(lines[3], "total\t6");
    let doc = json(&["dim", "--cartan", "A2", "--weight", "1,1", "--beta", "1,1", "--all-pairs"]);
    assert_eq!(doc["table"], serde_json::json!([[2, 1], [1, 2]]));
    assert_eq!(doc["tuples"], serde_json::json!([[1, 2], [2, 1]]));
    assert_eq!(doc["total"], 6);
}

#[test]
fn verify_oracle_on_one_weight() {
    let (code, stdout, _) = klr(&["verify", "--suite", "oracle", "--max-n", "3", "--cartan", "A2", "--weight", "1,1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("OK: 3/3 β-blocks, 0 mismatches"), "{stdout}");
    let doc = json(&["verify", "--suite", "all", "--max-n", "2", "--cartan", "C2", "--max-level", "2"]);
    assert_eq!(doc["passed"], true);
    let report: klr::VerifyReport = serde_json::from_value(doc).unwrap();
    assert_eq!(report.suites.len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(klr(&["dim", "--cartan", "A2", "--weight", "1,1", "--nu", "1", "--frobnicate"]).0, 2);
    assert_eq!(klr(&["frobnicate"]).0, 2);
    assert_eq!(klr(&["dim", "--cartan", "A2", "--nu", "1"]).0, 2);
    let (code, _, stderr) = klr(&["dim", "--cartan", "A2", "--weight", "1,-1", "--nu", "1"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("NotDominant"));
    let (code, stdout, _) = klr(&["tilde", "--cartan", "A2", "--weight", "1,1", "--nu", "1,2,1", "--format", "json"]);
    assert_eq!(code, 1);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["error"]["kind"], "NotTildeForm");
    assert_eq!(klr(&["--help"]).0, 0);
}

#[test]
fn cartan_from_file() {
    let dir = std::env::temp_dir().join(format!("klr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("b2.json");
    std::fs::write(&good, r#"{"matrix": [[2, -2], [-1, 2]], "labels": [0, 5]}"#).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"matrix": [[2, -1, -1], [-1, 2, -1], [-2, -1, 2]]}"#).unwrap();
    let good = good.to_str().unwrap();
    let doc = json(&["dim", "--cartan", good, "--weight", "5=2", "--nu", "5,0,5"]);
    assert_eq!(doc["weight"], serde_json::json!([0, 2]));
    assert_eq!(doc["nu"], serde_json::json!([5, 0, 5]));
    let cartan = CartanData::from_json(&doc["cartan"].to_string()).unwrap();
    assert_eq!(cartan.labels(), &[0, 5]);
    let (code, _, stderr) = klr(&["dim", "--cartan", bad.to_str().unwrap(), "--weight", "1,1,1", "--nu", "1"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("NotSymmetrizable"), "{stderr}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn every_command_round_trips_and_repeats() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["dim", "--cartan", "A2", "--weight", "3,2", "--nu", "1,2,1"],
        vec!["gdim", "--cartan", "C2", "--weight", "1,1", "--beta", "1,1", "--all-pairs"],
        vec!["block", "--cartan", "G2", "--weight", "1,1", "--beta", "1,1"],
        vec!["algebra", "--cartan", "A1~", "--weight", "1,2", "--n", "2"],
        vec!["nonzero", "--cartan", "A2", "--weight", "1,1", "--nu", "1,2,2"],
        vec!["basis", "--cartan", "A2", "--weight", "2,1", "--nu", "2,1,1", "--order", "1,2"],
        vec!["reduce", "--cartan", "A2", "--weight", "2,1", "--beta", "2,1"],
        vec!["reduce", "--cartan", "A2", "--weight", "2,1", "--split", "1,0+1,1", "--nu", "1,2,1", "--graded"],
        vec!["tilde", "--cartan", "A2", "--weight", "2,1", "--nu", "1,1,2"],
        vec!["verify", "--suite", "basis", "--cartan", "A2", "--weight", "2,1", "--max-n", "3"],
    ];
    for args in commands {
        let first = json(&args);
        let mut again = args.clone();
        again.extend(["--format", "json"]);
        let (_, a, _) = klr(&again);
        again.extend(["--threads", "4"]);
        let (_, b, _) = klr(&again);
        assert_eq!(a, b, "{args:?}");
        assert_eq!(serde_json::from_str::<Value>(&a).unwrap(), first);
        let (code, t1, _) = klr(&args);
        let (_, t2, _) = klr(&args);
        assert_eq!(code, 0);
        assert_eq!(t1, t2);
    }
}

#[test]
fn command_specific_fields() {
    let doc = json(&["algebra", "--cartan", "A1~", "--weight", "1,2", "--n", "2"]);
    assert_eq!(poly(&doc["gdim"]), "2q^6+5q^4+6q^2+4+q^-2".parse().unwrap());
    assert_eq!(doc["dim"], 18);

    let doc = json(&["basis", "--cartan", "A2", "--weight", "2,1", "--nu", "2,1,1", "--order", "1,2"]);
    assert_eq!(doc["tilde"], serde_json::json!([1, 1, 2]));
    assert_eq!(doc["bounds"], serde_json::json!([1, 2, 1]));
    assert_eq!(doc["d_mu"], serde_json::json!([3, 1, 2]));
    let elements = doc["elements"].as_array().unwrap();
    assert_eq!(elements.len() as u64, doc["cardinality"].as_u64().unwrap());
    assert_eq!(elements[0], serde_json::json!({ "w": [3, 1, 2], "r": [0, 0, 0] }));

    let doc = json(&["nonzero", "--cartan", "A2", "--weight", "1,1", "--nu", "1,2,1"]);
    assert_eq!(doc["nonzero"], true);
    let methods: Vec<&str> =
        doc["verdicts"].as_array().unwrap().iter().map(|v| v["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["direct", "divided", "shuffle"]);

    let doc = json(&["reduce", "--cartan", "A1", "--weight", "2", "--nu", "1", "--graded"]);
    assert_eq!(doc["agree"], true);
    assert_ne!(poly(&doc["graded_reduced"]), poly(&doc["graded_direct"]));

    let doc = json(&["tilde", "--cartan", "A2", "--weight", "2,1", "--nu", "1,1,2"]);
    assert_eq!(doc["dim"], 12);
    assert_eq!(
        doc["blocks"],
        serde_json::json!([{ "letter": 1, "size": 2, "n": 2 }, { "letter": 2, "size": 1, "n": 3 }])
    );
}

#[test]
fn time_budget_aborts_with_partial_result() {
    let (code, _, stderr) =
        klr(&["dim", "--cartan", "A1", "--weight", "12", "--nu", "1,1,1,1,1,1,1,1,1,1,1,1", "--time-budget", "0.05"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("TimeBudget") && stderr.contains("permutations summed"), "{stderr}");
    let (code, _, _) = klr(&["dim", "--cartan", "A1", "--weight", "3", "--nu", "1,1", "--time-budget", "10"]);
    assert_eq!(code, 0);
}
