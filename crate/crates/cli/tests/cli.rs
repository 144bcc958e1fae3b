use std::fs;
use std::process::{Command, Output};

use cambrian::export::TreeListing;
use cambrian::{IndexPair, Instance, Signature};
use serde_json::Value;

const FIG9: [&str; 6] = [
    "--signature",
    "-++-+--+",
    "--black",
    "0,1,2,4,5,7,8",
    "--white",
    "3,6,9",
];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cambrian"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn with(head: &[&'static str], tail: &[&'static str]) -> Vec<&'static str> {
    head.iter().chain(tail).copied().collect()
}

#[test]
fn enumerate_counts() {
    let out = run(&["enumerate", "--signature", "---", "--full"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["count"], 5);
    let out = run(&["enumerate", "--signature", "-", "--black", "0", "--white", "1"]);
    assert_eq!(json(&out)["count"], 1);
}

#[test]
fn enumerate_matches_library_on_worked_instance() {
    let out = run(&with(&["enumerate"], &FIG9));
    let listing: TreeListing = serde_json::from_slice(&out.stdout).unwrap();
    let (inst, trees) = listing.instance().unwrap();
    let sig: Signature = "-++-+--+".parse().unwrap();
    let pair = IndexPair::new(vec![0, 1, 2, 4, 5, 7, 8], vec![3, 6, 9]).unwrap();
    assert_eq!(trees, Instance::new(&sig, pair).unwrap().enumerate_trees());
    assert_eq!(inst.signature(), &sig);
}

#[test]
fn verify_passes() {
    let out = run(&with(&["verify", "lattice"], &FIG9));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "pass");
    let out = run(&["verify", "regularity", "--lift", "sqrt", "--signature", "-++-+--+"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["walls"], 5005);
    for what in ["interval", "triangulation"] {
        let out = run(&["verify", what, "--signature", "-+-+", "--black", "0,2,3", "--white", "2,4,5"]);
        assert_eq!(out.status.code(), Some(0), "{what}");
    }
}

#[test]
fn verify_tropical_coordinates() {
    let out = run(&with(&["verify", "tropical"], &FIG9));
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let point = |k: &Value| -> Vec<f64> {
        report["points"][k.as_u64().unwrap() as usize]["decimal"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_str().unwrap().parse().unwrap())
            .collect()
    };
    let close = |p: &[f64], x: f64, y: f64| (p[0] - x).abs() < 1e-9 && (p[1] - y).abs() < 1e-9;
    let (s2, s3) = (2f64.sqrt(), 3f64.sqrt());
    assert!(close(&point(&report["t_min"]), -1.0, s3 - 1.0));
    assert!(close(&point(&report["t_max"]), s2 - s3, -s2));
    let n = report["points"].as_array().unwrap().len();
    assert!((0..n).any(|k| close(&point(&Value::from(k)), s3 - s2, s3 - 1.0)));
}

#[test]
fn probe_conjecture() {
    let out = run(&[
        "probe-conjecture", "--signature", "-+-", "--black", "0,1", "--white", "2,3",
        "--outer-black", "0,1", "--outer-white", "2,3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"][0]["result"], "interval");
    let out = run(&[
        "probe-conjecture", "--signature", "-+-", "--black", "0,1", "--white", "2,3",
        "--outer-black", "0", "--outer-white", "2,3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["probe-conjecture", "--random", "4", "--trials", "1000", "--seed", "0", "--jobs", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["intervals"], 1000);
}

#[test]
fn exports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["dot", "svg-lattice", "svg-mixed", "svg-tropical", "json"] {
        let a = dir.path().join(format!("{format}.a"));
        let b = dir.path().join(format!("{format}.b"));
        for path in [&a, &b] {
            let mut args = with(&["export", format], &FIG9);
            let p = path.to_str().unwrap().to_string();
            args.push("--output");
            let out = Command::new(env!("CARGO_BIN_EXE_cambrian")).args(&args).arg(&p).output().unwrap();
            assert!(out.status.success(), "{format}");
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{format}");
    }
    let dot = fs::read_to_string(dir.path().join("dot.a")).unwrap();
    assert_eq!(dot.matches(" [label=").count(), 12);
    assert_eq!(dot.matches("leaving=").count(), 16);
    let svg = fs::read_to_string(dir.path().join("svg-tropical.a")).unwrap();
    assert!(svg.contains("H7• is at infinity"));
    assert_eq!(svg.matches("is degenerate").count(), 2);
    let listing: TreeListing =
        serde_json::from_str(&fs::read_to_string(dir.path().join("json.a")).unwrap()).unwrap();
    assert_eq!(listing.count, 12);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["export", "svg-mixed", "--signature", "---"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--signature", "-x-"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--signature", "--", "--black", "0"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--signature", "-------------"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "bogus", "--signature", "-"]).status.code(), Some(2));
}
