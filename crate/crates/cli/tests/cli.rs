use std::process::Command;

use twistk::catalog::Computation;

fn twistk(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twistk"))
        .args(args)
        .output()
        .expect("run twistk");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn sphere_json() {
    let (code, out, _) = twistk(&[
        "compute", "--space", "sphere", "--n", "3", "--N", "4", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["K0"]["rank"], 0);
    assert_eq!(v["K0"]["torsion"], serde_json::json!([]));
    assert_eq!(v["K1"]["torsion"], serde_json::json!([4]));
    assert_eq!(v["twist"], serde_json::json!({"degree": 7, "class": [4]}));
    assert_eq!(v["method"], "mayer_vietoris");
}

#[test]
fn json_round_trips_byte_identically() {
    let cases: [&[&str]; 4] = [
        &[
            "compute", "--space", "su", "--n", "4", "--N", "3", "--format", "json", "--trace",
        ],
        &[
            "compute", "--space", "lens", "--n", "2", "--p", "5", "--N", "7", "--format", "json",
        ],
        &[
            "compute",
            "--space",
            "su2bundle",
            "--euler",
            "2",
            "--L",
            "4",
            "--N",
            "6",
            "--format",
            "json",
        ],
        &[
            "compute", "--space", "product", "--m", "1", "--n", "2", "--N", "-9", "--format", "json",
        ],
    ];
    for args in cases {
        let (code, out, err) = twistk(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        let parsed: Computation = serde_json::from_str(out.trim_end()).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), out.trim_end());
    }
}

#[test]
fn untwisted_su3() {
    let (code, out, _) = twistk(&["compute", "--space", "su", "--n", "3", "--N", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("K^0 = Z^2") && out.contains("K^1 = Z^2"), "{out}");
}

#[test]
fn exit_codes() {
    let (code, _, err) = twistk(&["compute", "--space", "su", "--n", "5", "--degree", "5", "--N", "3"]);
    assert_eq!(code, 3);
    assert!(err.contains("higher-differential-unknown"));
    assert_eq!(twistk(&["compute", "--space", "sphere"]).0, 2);
    assert_eq!(twistk(&["compute", "--space", "torus", "--n", "1"]).0, 2);
    assert_eq!(twistk(&["frobnicate"]).0, 2);
    // degree 3 of RP^5 holds no integral classes
    assert_eq!(
        twistk(&["compute", "--space", "rp", "--n", "2", "--degree", "3", "--N", "1"]).0,
        3
    );
    assert_eq!(
        twistk(&["compute", "--space", "su", "--n", "3", "--N", "2", "--method", "mv"]).0,
        3
    );
}

#[test]
fn trace_prints_pages() {
    let (code, out, _) = twistk(&["compute", "--space", "su", "--n", "3", "--N", "5", "--trace"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("E_2") && out.contains("E_6") && out.contains("d_5 : E^0 -> E^5"),
        "{out}"
    );
}

#[test]
fn table_filters_rows() {
    let (code, out, _) = twistk(&["table", "--rows", "rp", "--verbose"]);
    assert_eq!(code, 0);
    assert!(out.lines().filter(|l| l.starts_with("ok")).all(|l| l.contains("RP^")));
    assert!(out.contains("36 rows, 36 match, 0 differ"));
}

#[test]
fn su2bundle_table_reports_the_difference() {
    let (code, out, _) = twistk(&["table", "--rows", "su2bundle"]);
    assert_eq!(code, 1);
    assert!(out.contains("DIFF"));
}

#[test]
fn check_subset_and_determinism() {
    let (code, out, _) = twistk(&["check", "--only", "kunneth-vs-ahss"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1);
    let a = twistk(&["check", "--only", "snf-fuzz", "--fuzz", "500", "--seed", "7"]);
    let b = twistk(&["check", "--only", "snf-fuzz", "--fuzz", "500", "--seed", "7"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    assert_eq!(twistk(&["check", "--only", "nope"]).0, 2);
}
