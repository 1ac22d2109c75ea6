use residuegf::cli::run;
use residuegf::GASolution;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = std::iter::once("residuegf")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&args, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str, args: &[&str]) {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    let expected = std::fs::read_to_string(&path).unwrap();
    let (code, out, err) = invoke(args);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, expected, "golden mismatch for {name}");
}

const FAIR: &str = r#"{"faces":[{"value":-1,"prob":"1/3"},{"value":0,"prob":"1/3"},{"value":1,"prob":"1/3"}]}"#;

#[test]
fn golden_text_output() {
    golden("ga_trinomial_k4.txt", &["ga", "-P", "x^-1+1+x", "-k", "4"]);
    golden("gas_trinomial_k10.txt", &["gas", "-P", "x^-1+1+x", "-k", "10"]);
    golden("euler_tale.txt", &["euler-tale"]);
    golden("dice_fair_k2.txt", &["dice", "--faces", FAIR, "-k", "2", "-n", "4"]);
}

#[test]
fn ga_json_round_trips_against_sum() {
    let p = "2*x^-2 - x + 3";
    let k = 5;
    let (code, out, _) = invoke(&["ga", "-P", p, "-k", "5", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let sol: GASolution = serde_json::from_value(v["result"].clone()).unwrap();
    for a in 0..k {
        let series = sol.series(a, 20);
        for (n, term) in series.iter().enumerate() {
            let (code, out, _) = invoke(&[
                "sum", "-P", p, "-k", "5", "-a", &a.to_string(), "-n", &n.to_string(),
            ]);
            assert_eq!(code, 0);
            assert_eq!(out.trim(), residuegf::rational::format(term), "a = {a}, n = {n}");
        }
    }
}

#[test]
fn ga_and_gas_are_byte_identical() {
    for fmt in ["text", "json"] {
        for k in ["1", "2", "7", "10"] {
            let full = invoke(&["ga", "-P", "x^-2+x^-1+1+x+x^2", "-k", k, "--format", fmt]);
            let half = invoke(&["gas", "-P", "x^-2+x^-1+1+x+x^2", "-k", k, "--format", fmt]);
            assert_eq!(full, half);
        }
    }
}

#[test]
fn json_is_deterministic() {
    let a = invoke(&["ga", "-P", "x^-1+1+x", "-k", "6", "--format", "json"]);
    let b = invoke(&["ga", "-P", "x^-1+1+x", "-k", "6", "--format", "json"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["inputs"]["P"], "x^-1 + 1 + x");
    assert_eq!(v["result"]["k"], 6);
    assert!(v["result"]["common_den"].is_array());
}

#[test]
fn series_and_coeff() {
    let (code, out, _) = invoke(&["series", "-P", "x^-1+1+x", "-k", "3", "-a", "0", "-N", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1, 1, 3, 9, 27");
    let (code, out, _) = invoke(&["coeff", "-P", "x^-1+1+x", "-n", "4", "-j", "-2"]);
    assert_eq!((code, out.trim()), (0, "10"));
}

#[test]
fn verify_george_reports_equal() {
    let (code, out, _) = invoke(&["verify-george", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["rigorous_equal"], true);
    assert_eq!(v["result"]["window_agrees"], true);
}

#[test]
fn tale_outcomes() {
    let (code, out, _) = invoke(&[
        "tale", "-P", "1+x", "-k", "10", "-a", "0", "--fit-window", "8", "--horizon", "40", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["outcome"], "found");
    assert_eq!(v["result"]["tale"]["first_failure_n"], 10);
    let (code, out, _) = invoke(&[
        "tale", "-P", "x^-1+1+x", "-k", "2", "-a", "0", "--fit-window", "10", "--horizon", "40",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("none"), "{out}");
}

#[test]
fn error_exit_codes() {
    let cases: &[(&[&str], i32, &str)] = &[
        (&["ga", "-P", "x^(", "-k", "3"], 1, "-P"),
        (&["ga", "-P", "x", "-k", "abc"], 1, "-k"),
        (&["ga", "-P", "x", "-k", "-3"], 2, "-k"),
        (&["ga", "-P", "0", "-k", "3"], 2, "-P"),
        (&["gas", "-P", "x", "-k", "3"], 2, "-P"),
        (&["series", "-P", "x", "-k", "3", "-a", "-1", "-N", "4"], 2, "-a"),
        (&["series", "-P", "x", "-k", "3", "-a", "0", "-N", "-4"], 2, "-N"),
        (&["dice", "--faces", "[", "-k", "3"], 1, "--faces"),
        (&["dice", "--faces", r#"{"faces":[{"value":1,"prob":"-1"}]}"#, "-k", "3"], 2, "--faces"),
        (&["dice", "--faces", FAIR, "-k", "2001"], 2, "-k"),
        (&["tale", "-P", "x", "-k", "3", "-a", "0", "--fit-window", "2", "--horizon", "9"], 2, "--fit-window"),
        (&["frobnicate"], 1, ""),
        (&[], 1, ""),
    ];
    for (args, code, needle) in cases {
        let (got, _, err) = invoke(args);
        assert_eq!(got, *code, "{args:?}: {err}");
        assert!(err.contains(needle), "{args:?}: {err}");
    }
    let (code, out, _) = invoke(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}
