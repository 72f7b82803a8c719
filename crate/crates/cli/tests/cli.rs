use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn spec(name: &str) -> String {
    root().join("specs").join(name).to_string_lossy().into_owned()
}

fn dpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpd"))
        .args(args)
        .output()
        .expect("dpd runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dpd(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.push("--json");
    serde_json::from_str(&stdout(&args)).expect("valid JSON")
}

/// Exit code and the error name printed on stderr.
fn failure(args: &[&str]) -> (i32, String) {
    let out = dpd(args);
    let err = String::from_utf8(out.stderr).unwrap();
    let name = err
        .strip_prefix("error: ")
        .and_then(|e| e.split(':').next())
        .unwrap_or("")
        .to_string();
    (out.status.code().unwrap(), name)
}

fn temp_file(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("dpd-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn classify_danielewski() {
    let r = json(&["classify", &spec("danielewski.spec")]);
    assert_eq!(r["ml"], "polynomial_ring");
    assert_eq!(r["grading"], "hyperbolic");
    assert_eq!(r["lnd"]["positive"]["e_min"], 2);
    assert_eq!(r["lnd"]["negative"]["empty"], true);
    let text = stdout(&["classify", &spec("danielewski.spec")]);
    assert!(text.contains("translation:    t -> t + 1"), "{text}");
}

#[test]
fn every_sample_spec_classifies() {
    let mut names: Vec<_> = std::fs::read_dir(root().join("specs"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    names.sort();
    assert!(names.len() >= 9);
    for path in names {
        let r = json(&["classify", path.to_str().unwrap()]);
        assert!(r["ml"].is_string(), "{path:?}");
    }
}

#[test]
fn apply_on_bertin() {
    let text = stdout(&[
        "apply",
        &spec("bertin.spec"),
        "--degree",
        "3",
        "--element",
        "t",
        "--times",
        "4",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "x = t");
    assert_eq!(lines[2], "∂^1(x) = ((2)/(t))*u^3");
    assert_eq!(lines[3], "∂^2(x) = ((2)/(t^3))*u^6");
    assert_eq!(lines[4], "∂^3(x) = 0");
    assert_eq!(lines[5], "steps: 3");
}

#[test]
fn apply_stops_when_asked() {
    let r = json(&[
        "apply",
        "catalog:danielewski:2",
        "--degree",
        "2",
        "--element",
        "(t^2+t)*u^-2",
        "--times",
        "2",
    ]);
    assert_eq!(r["iterates"].as_array().unwrap().len(), 2);
    assert_eq!(r["steps"], Value::Null);
}

#[test]
fn verify_quadric() {
    let text = stdout(&["verify", &spec("quadric.spec"), "--window", "8"]);
    assert!(text.lines().all(|l| !l.contains("FAIL")), "{text}");
    assert!(text.ends_with(
        "stabilization: PASS for e ∈ {1..10} ∩ admissible; oracle agrees with closed form\n"
    ));
}

#[test]
fn verify_separates_admissible_degrees() {
    let r = json(&["verify", "catalog:conic_complement", "--window", "4"]);
    assert_eq!(r["agrees"], true);
    for c in r["checks"].as_array().unwrap() {
        let odd = c["e"].as_i64().unwrap() % 2 == 1;
        assert_eq!(c["admissible"], odd);
        assert_eq!(c["witness"], odd);
    }
    let r = json(&["verify", &spec("parabolic-5-2.spec"), "--window", "4"]);
    assert_eq!(r["agrees"], true);
    let passing: Vec<i64> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["witness"] == true)
        .map(|c| c["e"].as_i64().unwrap())
        .collect();
    assert_eq!(passing, [3, 8]);
}

#[test]
fn lnd_and_kernel() {
    let r = json(&["lnd", &spec("danielewski.spec"), "--degree", "2"]);
    assert_eq!(r["degree"], 2);
    assert_eq!(r["kernel"], "u^1");
    let text = stdout(&["kernel", &spec("toric-5-2.spec"), "--negative"]);
    assert!(text.ends_with("kernel:     C[t^5]\n"), "{text}");
    let text = stdout(&["lnd", &spec("conic.spec")]);
    assert!(text.starts_with("positive degrees: e ≡ 1 (mod 2), e >= 1"), "{text}");
}

#[test]
fn invariants() {
    assert_eq!(stdout(&["mm", &spec("conic.spec")]), "MM_h: 4\n");
    assert_eq!(stdout(&["ml", &spec("torus-line.spec")]), "ML: C[v, v^-1]\n");
    let r = json(&["recognize", &spec("veronese5.spec")]);
    assert_eq!(r["toric"]["d"], 5);
    assert_eq!(r["toric"]["e_prime"], 1);
}

#[test]
fn fibers_of_dihedral() {
    let text = stdout(&["fibers", &spec("dihedral3.spec")]);
    assert!(text.contains("ruling divisor: 3·[0]"), "{text}");
    assert!(text.contains("singular point over 0 of order 3"), "{text}");
    // `--at` takes a point of the input coordinate
    let text = stdout(&["fibers", &spec("quadric.spec"), "--at", "-1"]);
    assert!(text.contains("fiber over 0:"), "{text}");
}

#[test]
fn equation_round_trip() {
    let emitted = stdout(&["equation", "--poly", "t^2+t", "--degree", "2"]);
    let path = temp_file("eq.spec", &emitted);
    let text = stdout(&["equation", &path]);
    assert!(text.starts_with("u^2 v = "), "{text}");
}

#[test]
fn reports_feed_back_in() {
    for name in ["bertin.spec", "conic.spec", "dihedral3.spec", "veronese5.spec"] {
        let report = stdout(&["classify", &spec(name), "--json"]);
        let path = temp_file(name, &report);
        assert_eq!(stdout(&["classify", &path, "--json"]), report, "{name}");
    }
    let entry = stdout(&["catalog", "bertin", "3", "2", "--json"]);
    let path = temp_file("entry.json", &entry);
    assert_eq!(
        stdout(&["classify", &path]),
        stdout(&["classify", "catalog:bertin:3,2"])
    );
}

#[test]
fn catalog_listing() {
    let text = stdout(&["catalog"]);
    for name in ["danielewski", "bertin", "veronese", "quadric", "conic_complement", "dihedral", "toric"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
    let entries = json(&["catalog"]);
    assert!(entries.as_array().unwrap().len() >= 7);
}

#[test]
fn family_identity() {
    let r = json(&["family", "--poly", "t^2+t", "--alpha", "1/2"]);
    assert_eq!(r["in_ring"], true);
    assert_eq!(r["identity"], true);
}

#[test]
fn domain_errors_exit_one_with_their_name() {
    let cases: [(&[&str], &str); 6] = [
        (&["classify", "/nonexistent/x.spec"], "IoError"),
        (&["classify", "catalog:nope"], "UnknownName"),
        (&["lnd", &spec("danielewski.spec"), "--degree", "1"], "InadmissibleDegree"),
        (
            &["apply", &spec("conic.spec"), "--degree", "1", "--element", "t^-1"],
            "NotInRing",
        ),
        (&["equation", &spec("toric-5-2.spec")], "Unsupported"),
        (&["verify", &spec("toric-5-2.spec")], "Unsupported"),
    ];
    for (args, name) in cases {
        assert_eq!(failure(args), (1, name.to_string()), "{args:?}");
    }
    let bad = temp_file("bad.spec", "{\"hyperbolic\": ]");
    assert_eq!(failure(&["classify", &bad]), (1, "ParseError".into()));
    let small = temp_file("small.spec", r#"{"hyperbolic":{"d_plus":[["0","1"]],"d_minus":[["0","-1/2"]]}}"#);
    assert_eq!(failure(&["classify", &small]), (1, "PositiveSum".into()));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dpd(&["bogus"]).status.code(), Some(2));
    assert_eq!(failure(&["lnd", &spec("conic.spec"), "--degree", "x"]).0, 2);
    assert_eq!(
        failure(&["kernel", &spec("conic.spec")]),
        (2, "Usage".into())
    );
    assert_eq!(failure(&["equation"]), (2, "Usage".into()));
}
