use disknorm::cli::{
    read_sweep_csv, run, SweepSummary, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_OK, EXIT_REFUTED,
};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("disknorm").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out, err) = invoke(&all);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}"));
    (code, v)
}

#[test]
fn norm_small_p_constant() {
    for p in ["0.1", "0.25", "0.4"] {
        let (code, v) = json(&[
            "norm",
            "--space",
            "bergman",
            "--p",
            p,
            "--expr",
            "(1+z)^(4/p)",
        ]);
        assert_eq!(code, EXIT_OK);
        assert!((v["value_p"].as_f64().unwrap() - 10.0 / 3.0).abs() < 1e-6);
        assert_eq!(v["converged"], true);
    }
}

#[test]
fn norm_json_keys_and_text_output() {
    let (code, v) = json(&[
        "norm",
        "--space",
        "hardy",
        "--p",
        "0.5",
        "--expr",
        "(1+z)/(1-z)",
    ]);
    assert_eq!(code, EXIT_OK);
    for key in [
        "space",
        "p",
        "value_p",
        "value",
        "abs_err_est",
        "converged",
        "evaluations",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["space"], "hardy");
    let (code, text, _) = invoke(&["norm", "--p", "0.5", "--expr", "(1+z)/(1-z)"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("value_p"));
}

#[test]
fn norm_parameters_and_explicit_singularities() {
    let (_, a) = json(&[
        "norm",
        "--p",
        "0.5",
        "--expr",
        "(1-z)^(-alpha)",
        "--alpha",
        "0.5",
    ]);
    let (_, b) = json(&[
        "norm",
        "--p",
        "0.5",
        "--expr",
        "(1-z)^(-alpha)",
        "--param",
        "alpha=0.5",
    ]);
    let (_, c) = json(&[
        "norm",
        "--p",
        "0.5",
        "--expr",
        "(1-z)^(-1/2)",
        "--singular",
        "0",
    ]);
    let va = a["value_p"].as_f64().unwrap();
    assert_eq!(va, b["value_p"].as_f64().unwrap());
    assert!((va - c["value_p"].as_f64().unwrap()).abs() < 1e-9);
}

#[test]
fn divergent_norm_is_inconclusive() {
    let (code, v) = json(&["norm", "--p", "1", "--expr", "1/(1-z)"]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert_eq!(v["hint"], "divergent");
}

#[test]
fn input_errors_exit_three() {
    for args in [
        vec!["norm", "--p", "-1", "--expr", "z"],
        vec!["norm", "--p", "1", "--expr", "z+"],
        vec!["norm", "--p", "1", "--expr", "w"],
        vec!["verify", "--case", "no-such-case", "--p", "0.5"],
        vec!["verify", "--case", "lemma-cv", "--p", "1"],
        vec![
            "verify",
            "--case",
            "ap-large-p",
            "--p",
            "0.75",
            "--eps",
            "0.9",
        ],
        vec!["membership", "--alpha", "0", "--p", "1"],
        vec![
            "sweep", "--case", "lemma-cv", "--p-min", "0.1", "--p-max", "0.9", "--steps", "3",
        ],
        vec!["bogus"],
    ] {
        let (code, _, err) = invoke(&args);
        assert_eq!(code, EXIT_INPUT, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_exit_codes() {
    let (code, v) = json(&["verify", "--case", "hp-counterexample", "--p", "0.5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["verdict"], "Confirmed");
    assert!(v["sub_results"]
        .as_array()
        .unwrap()
        .iter()
        .any(|s| s["name"] == "norm_sum"));

    let (code, v) = json(&[
        "verify",
        "--case",
        "lemma-elem",
        "--a",
        "2",
        "--b",
        "1",
        "--q",
        "2",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["claim"], "at_least");

    let (code, v) = json(&[
        "verify",
        "--case",
        "means-monotone",
        "--p",
        "1",
        "--expr",
        "1+z",
    ]);
    assert_eq!(code, EXIT_OK, "{v}");

    let (code, v) = json(&[
        "verify",
        "--case",
        "hp-counterexample",
        "--p",
        "0.5",
        "--max-evals",
        "400",
    ]);
    assert_eq!(code, EXIT_INCONCLUSIVE, "{v}");
    assert_eq!(v["verdict"], "Inconclusive");
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn zero_margin_equality_is_refuted_by_rounding() {
    let (code, v) = json(&[
        "verify",
        "--case",
        "hp-equality",
        "--p",
        "0.3",
        "--kappa",
        "0",
    ]);
    assert_ne!(v["defect"].as_f64().unwrap(), 0.0);
    assert_eq!(v["verdict"], "Refuted");
    assert_eq!(code, EXIT_REFUTED);
}

#[test]
fn too_few_radii_is_inconclusive() {
    let (code, v) = json(&[
        "verify", "--case", "lemma-ap", "--alpha", "1", "--p", "1", "--radii", "0.5,0.6",
    ]);
    assert_eq!(code, EXIT_INCONCLUSIVE, "{v}");
}

#[test]
fn membership_output() {
    let (code, v) = json(&["membership", "--alpha", "4", "--p", "0.5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["classification"], "boundary");
    assert_eq!(v["evidence"].as_array().unwrap().len(), 11);
    assert_eq!(v["diagnostic"], "divergent_log");
    let (_, v) = json(&["membership", "--alpha", "1", "--p", "1", "--rule-only"]);
    assert_eq!(v["classification"], "member");
    assert!(v["evidence"].as_array().unwrap().is_empty());
}

#[test]
fn sweep_csv_round_trip_and_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let plot = dir.path().join("plot.csv");
    let (code, _, err) = invoke(&[
        "sweep",
        "--case",
        "ap-large-p",
        "--p-min",
        "0.3",
        "--p-max",
        "0.9",
        "--steps",
        "4",
        "--out",
        out.to_str().unwrap(),
        "--emit-plot-data",
        plot.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("p,eps,norm_f_p,norm_g_p,norm_sum_p,defect,margin,verdict,reason"));
    assert!(text
        .trim_end()
        .ends_with("Confirmed=3 Refuted=0 Inconclusive=0 SKIPPED=1"));
    let rows = read_sweep_csv(&text).unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0].verdict, "SKIPPED");
    assert!(rows[0].defect.is_none());
    assert_eq!(rows[3].p, 0.9);
    let summary = SweepSummary::of(&rows);
    assert_eq!((summary.confirmed, summary.skipped), (3, 1));

    let plot = std::fs::read_to_string(&plot).unwrap();
    let mut lines = plot.lines();
    assert_eq!(lines.next(), Some("p,defect"));
    let pts: Vec<(f64, f64)> = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(pts.len(), 3);
    for (pt, row) in pts.iter().zip(&rows[1..]) {
        assert_eq!(pt.0, row.p);
        assert_eq!(Some(pt.1), row.defect);
    }
}

#[test]
fn sweep_json_and_fixed_eps() {
    let (code, v) = json(&[
        "sweep",
        "--case",
        "ap-large-p",
        "--p-min",
        "0.6",
        "--p-max",
        "0.7",
        "--steps",
        "2",
        "--eps",
        "0.7",
    ]);
    assert_eq!(code, EXIT_OK, "{v}");
    assert_eq!(v["case"], "ap-large-p");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(v["summary"]["confirmed"], 2);
}
