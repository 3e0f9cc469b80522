use std::process::Command;

use folia::corpus;
use folia::form::{form_text, parse_form};
use folia::Chart;
use folia_algebra::ring::qf;
use folia_cli::{run, Output};
use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    let mut argv = vec!["folia".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    run(&argv)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = cli(&a);
    assert!(out.stderr.is_empty(), "{}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).unwrap())
}

#[test]
fn jouanolou_inflection() {
    let (code, v) = json(&["inflection", "--corpus", "jouanolou", "--d", "3"]);
    assert_eq!(code, 0);
    let r = &v["results"];
    assert_eq!(r["reduced"], true);
    assert_eq!(r["divisor_degree"], 9);
    assert_eq!(r["divisor"], "(x^7*z^2 - 3*x^3*y^3*z^3 + x^2*y^7 + y^2*z^7)");
    assert_eq!(r["invariant"], "1");
}

#[test]
fn f1_isotropy_dimension() {
    let (code, v) = json(&["iso-dim", "--corpus", "f1", "--d", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["iso_dim"], 2);
}

#[test]
fn certify_p3() {
    let (code, v) = json(&["certify", "--poly", "p3", "--lambda", "3/2", "--samples", "100", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["zeros"], 100);
    assert_eq!(v["results"]["f2_value"], "-50625");
    assert_eq!(v["inputs"]["seed"], 7);
    assert_eq!(v["status"], "ok");
}

#[test]
fn rationals_are_strings() {
    let (_, v) = json(&["xi", "--corpus", "f0", "--d", "2", "--param", "lambda=3/2"]);
    assert_eq!(v["inputs"]["lambda"], "3/2");
    let coords: Vec<&str> = v["results"]["coordinates"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coords, ["0", "0", "0", "0", "2", "0", "2", "0", "0", "3", "0", "0", "0", "0", "0"]);
    let (_, v) = json(&["invariants", "--form", "x*dy - 2*y*dx + y^2*dy @ z=1"]);
    assert_eq!(v["results"]["singular_points"][0]["bb"], "9/2");
}

#[test]
fn exit_codes() {
    // parse and usage errors
    assert_eq!(cli(&["analyze", "--form", "x*dy +"]).code, 3);
    assert_eq!(cli(&["frobnicate"]).code, 3);
    assert_eq!(cli(&["certify", "--poly", "p3", "--lambda", "1"]).code, 3);
    assert_eq!(cli(&["certify", "--poly", "p3", "--lambda", "0", "--seed", "1"]).code, 3);
    let out = cli(&["analyze", "--form", "x*dx + x*dy"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("common factor x"), "{}", out.stderr);
    // a proven obstruction
    let (code, v) = json(&["degenerate", "--corpus", "jouanolou", "--d", "2", "--target", "f1"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["absence"], "obstruction");
    // infeasible fit
    let (code, v) = json(&["fit-qd", "--degree", "6", "--seed", "3", "--budget", "20", "--held-out", "50"]);
    assert_eq!(code, 2);
    assert_eq!(v["results"]["fitted"], false);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn degenerate_certificate() {
    let (code, v) = json(&["degenerate", "--corpus", "h12", "--d", "3", "--target", "h12"]);
    assert_eq!(code, 0);
    let c = &v["results"]["certificate"];
    assert_eq!(c["replay"], true);
    assert_eq!(c["chained"].as_array().unwrap().len(), 2);
    // F1 is convex, so it has no transverse flex to send onto F2
    let (code, v) = json(&["degenerate", "--form", "y^2*dx + x^2*(x*dy - y*dx)", "--target", "f2"]);
    assert_eq!(code, 1);
    assert!(v["results"]["reason"].as_str().unwrap().contains("deg I_tr = 0"));
}

#[test]
fn closure_verdicts() {
    let (code, v) = json(&["closure", "--lambda", "-1/2", "--d", "3", "--seed", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["verdict"], "closed");
    let (_, v) = json(&["closure", "--lambda", "5", "--d", "4", "--samples", "20", "--seed", "0"]);
    assert_eq!(v["results"]["verdict"], "closed");
    assert!(v["results"]["reason"].as_str().unwrap().contains("P4"));
}

#[test]
fn file_input() {
    let path = std::env::temp_dir().join(format!("folia-cli-test-{}.txt", std::process::id()));
    std::fs::write(&path, "y^3*dx + x^3*(x*dy - y*dx)\n").unwrap();
    let (code, v) = json(&["convex", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 0);
    assert_eq!(v["results"]["convex"], true);
    assert_eq!(cli(&["convex", "--form", "dx", "--corpus", "f1"]).code, 3);
}

#[test]
fn corpus_command() {
    let (_, v) = json(&["corpus", "--name", "g", "--d", "2", "--param", "gamma=2"]);
    assert_eq!(v["results"]["gamma"], "2");
    assert_eq!(v["results"]["degree"], 2);
    let (_, v) = json(&["corpus", "--list"]);
    assert_eq!(v["results"]["entries"].as_object().unwrap().len(), corpus::NAMES.len());
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["analyze", "--corpus", "h12", "--d", "2"][..],
        &["certify", "--poly", "p4", "--lambda", "-2/3", "--samples", "20", "--seed", "5"],
        &["fit-qd", "--degree", "6", "--seed", "4"],
    ] {
        let a = cli(args);
        let b = cli(args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn binary_matches_library() {
    let args = ["certify", "--poly", "p3", "--lambda", "2", "--samples", "10", "--seed", "1", "--format", "json"];
    let out = Command::new(env!("CARGO_BIN_EXE_folia")).args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), cli(&args).stdout);
    let out = Command::new(env!("CARGO_BIN_EXE_folia")).args(["xi", "--form", "x*"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn grammar_round_trip_on_the_corpus() {
    for (name, _) in corpus::NAMES {
        for d in 2..7u32 {
            let e = corpus::entry(name, d, Some(qf(3, 2))).unwrap();
            let f = parse_form(&e.text, &e.params).unwrap();
            // homogeneous and affine canonical texts both read back
            for chart in [None, Some(Chart::Z)] {
                let text = form_text(&f, chart);
                let g = parse_form(&text, &[]).unwrap();
                assert_eq!(g, f, "{name} d={d} {text}");
                assert_eq!(form_text(&g, chart), text);
            }
        }
    }
}
