use virapath::cli::{run, EXIT_CAP, EXIT_FALSIFIED, EXIT_PASS, EXIT_USAGE};

fn call(args: &str) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("virapath").chain(args.split_whitespace());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn char_all_methods_agree() {
    let (code, out) = call("char --p 3 --pp 4 --r 1 --trunc 4");
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("bosonic: 1 + q^2 + q^3 + 2q^4 + O(q^(4))"), "{out}");
    assert!(out.contains("paths: 1 + q^2 + q^3 + 2q^4"), "{out}");
    assert!(out.contains("agree: PASS"));
}

#[test]
fn char_json_is_structured() {
    let (code, out) = call("char --p 3 --pp 5 --r 2 --trunc 4 --format json");
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"]["ok"], true);
    assert_eq!(v["cap_reached"], false);
    for m in ["bosonic", "fermionic", "paths"] {
        assert_eq!(v["series"][m]["terms"][0][0], "3/4", "{m}");
    }
}

#[test]
fn single_length_char() {
    let (code, out) = call("char --p 3 --pp 7 --r 1 --L 2 --trunc 4 --method paths");
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("q^2 + q^3 + 2q^4"), "{out}");
}

#[test]
fn bad_model_is_a_usage_error() {
    assert_eq!(call("char --p 4 --pp 6 --r 1 --trunc 4").0, EXIT_USAGE);
    assert_eq!(call("char --p 3 --pp 4 --r 5 --trunc 4").0, EXIT_USAGE);
    assert_eq!(call("enumerate --p 3").0, EXIT_USAGE);
    assert_eq!(call("frobnicate").0, EXIT_USAGE);
}

#[test]
fn enumerate_formats() {
    let (code, out) = call("enumerate --p 3 --pp 7 --L 2 --r 1 --max-degree 3");
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("1,2,1;0,0  degree=2"), "{out}");
    assert!(out.contains("2 paths"), "{out}");

    let (_, csv) = call("enumerate --p 3 --pp 7 --L 2 --r 1 --max-degree 3 --format csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines, ["r_seq,sigma_seq,degree", "\"1,2,1\",\"0,0\",2/1", "\"1,2,1\",\"1,0\",3/1"]);

    let (_, json) = call("enumerate --p 3 --pp 7 --L 2 --r 1 --max-degree 3 --format json");
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[0]["sigma"], serde_json::json!([0, 0]));

    // Odd length cannot end at r = 1.
    let (code, out) = call("enumerate --p 3 --pp 7 --L 1 --r 1 --max-degree 20");
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("0 paths"), "{out}");
}

#[test]
fn verify_suites_pass() {
    assert_eq!(call("verify gauss --l 1 --mu -2 --trunc 10").0, EXIT_PASS);
    assert_eq!(call("verify fk --k 2 --mu 0 --trunc 10").0, EXIT_PASS);
    assert_eq!(call("verify main --p 3 --pp 5 --trunc 10").0, EXIT_PASS);
    assert_eq!(call("verify char-rec --p 3 --pp 7 --L 4 --trunc 12").0, EXIT_PASS);
    let (code, out) = call("verify moves --p 3 --pp 7 --L 4");
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("PASS"), "{out}");
}

#[test]
fn bijection_outside_its_domain_is_falsified() {
    assert_eq!(call("verify bijection --p 5 --pp 7 --L 4").0, EXIT_FALSIFIED);
}

#[test]
fn length_cap_reports_cap() {
    let (code, out) = call("verify main --p 3 --pp 4 --r 1 --trunc 30 --l-cap 4");
    assert_eq!(code, EXIT_CAP);
    assert!(out.contains("CAP"), "{out}");
}

#[test]
fn orbit_traces_and_stops() {
    let (code, out) = call("orbit --p 3 --pp 7 --path 1,2,1;0,0 --apply +1,+1,-1,-1,-1");
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("+1: 1,2,1;0,1  degree=4  m(P)=1  lambda=(2)"), "{out}");
    assert!(out.contains("move 5: UNDEFINED (-1 on 1,2,1;0,0)"), "{out}");

    let (_, json) = call("orbit --p 3 --pp 7 --path 1,2,1;0,0 --apply +1 --format json");
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
    assert!(v["undefined"].is_null());

    assert_eq!(call("orbit --p 3 --pp 7 --path 1,3,1;0,0").0, EXIT_USAGE);
}
