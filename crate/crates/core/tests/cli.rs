use gamma0::cli::dispatch;
use gamma0::gens::{verify_system, Expectation, GeneratingSystem};
use gamma0::polygon::{grow_maximal, LabeledPolygon, Strategy};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = dispatch(std::iter::once("gamma0").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn polygon_text_and_json() {
    let out = ok(&["polygon", "8"]);
    assert!(out.contains("1/4"), "{out}");
    let p: LabeledPolygon = serde_json::from_str(&ok(&["polygon", "8", "--json"])).unwrap();
    assert_eq!(p, grow_maximal(8, Strategy::Leftmost).unwrap());
    assert_eq!(p.denominator_sequence(), [0, 1, 4, 3, 2, 1]);
    let p: LabeledPolygon = serde_json::from_str(&ok(&["polygon", "8", "--strategy", "rightmost", "--json"])).unwrap();
    assert_eq!(p.sigma(), [1, 3, 3, 2, 2, 1]);
}

#[test]
fn polygon_json_rejects_tampering() {
    let mut v: Value = serde_json::from_str(&ok(&["polygon", "17", "--strategy", "optimal", "--json"])).unwrap();
    v["labels"][2] = Value::from(9);
    assert!(serde_json::from_value::<LabeledPolygon>(v.clone()).is_err());
    v["labels"][2] = Value::from(1);
    assert!(serde_json::from_value::<LabeledPolygon>(v).is_err());
}

#[test]
fn generators_round_trip() {
    for (n, expect) in [(17, Expectation::Optimal), (41, Expectation::Optimal), (143, Expectation::Twin { p: 11, q: 13 })] {
        let text = ok(&["generators", &n.to_string(), "--json"]);
        let sys: GeneratingSystem = serde_json::from_str(&text).unwrap();
        assert_eq!(sys.n, n);
        verify_system(&sys, expect).unwrap();
        assert_eq!(serde_json::to_string(&sys).unwrap(), text.trim());
    }
    let out = ok(&["generators", "17", "--verify"]);
    assert_eq!(out.lines().count(), 6, "{out}");
    assert!(out.lines().last().unwrap().starts_with("verified"));
}

#[test]
fn generators_verify_generic() {
    for n in ["12", "60", "300"] {
        assert!(ok(&["generators", n, "--verify"]).contains("verified"));
    }
}

#[test]
fn triples_and_cashew() {
    let report: Value = serde_json::from_str(&ok(&["triples", "41"])).unwrap();
    assert_eq!(report["n"], 41);
    assert_eq!(report["triples"].as_array().unwrap().len(), 2);
    let all: Vec<Value> = serde_json::from_str(&ok(&["cashew", "41", "--all-certificates"])).unwrap();
    assert_eq!(all[0], serde_json::json!({"s": 5, "t": 3, "a": 7, "b": 2}));
    assert!(all.iter().all(|c| c["a"].as_u64().unwrap() > c["t"].as_u64().unwrap()));
}

#[test]
fn bounds_json() {
    let v: Value = serde_json::from_str(&ok(&["bounds", "41", "--exact", "--json"])).unwrap();
    assert_eq!(v, serde_json::json!({"lower": 6, "lower_is_exact": false, "upper": 7, "exact": 7}));
    let v: Value = serde_json::from_str(&ok(&["bounds", "37", "--json"])).unwrap();
    assert_eq!(v["lower_is_exact"], true);
    assert_eq!(v["exact"], Value::Null);
}

#[test]
fn svg_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g8.svg");
    ok(&["polygon", "8", "--svg", path.to_str().unwrap()]);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="arc""#).count(), 4);

    let bad = dir.path().join("missing").join("x.svg");
    let (code, _, err) = call(&["polygon", "8", "--svg", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn sweep_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    ok(&["sweep", "2", "60", "--filter", "primes", "--output", csv.to_str().unwrap()]);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 17);

    let seq = ok(&["sweep", "2", "200", "--format", "json", "--sequential", "--exact-budget", "20"]);
    let par = ok(&["sweep", "2", "200", "--format", "json", "--exact-budget", "20"]);
    assert_eq!(seq, par);
    let rows: Vec<Value> = serde_json::from_str(&seq).unwrap();
    assert_eq!(rows.len(), 199);
    let r41 = &rows[39];
    assert_eq!((r41["n"].as_u64(), r41["m_exact"].as_u64()), (Some(41), Some(7)));
}

#[test]
fn usage_errors() {
    for args in [
        &["polygon"][..],
        &["polygon", "-4"],
        &["polygon", "1"],
        &["polygon", "12", "--strategy", "twin"],
        &["triples", "12"],
        &["sweep", "10", "5"],
        &["sweep", "2", "10", "--filter", "odd"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty() && !err.is_empty(), "{args:?}");
    }
    let (code, out, _) = call(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("gamma0"));
}
