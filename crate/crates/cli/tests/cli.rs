use std::path::PathBuf;
use std::process::{Command, Output};

use dgares_cli::report::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use tempfile::TempDir;

const HEXAGON: &str = "# six-cycle edge ideal\nx1*x2\nx2*x3\nx3*x4\nx4*x5\nx5*x6\nx6*x1\n";
const PATH: &str = "x1*x2\nx2*x3\nx3*x4\nx4*x5\nx5*x6\n";
const THREE: &str = "vars: 3\n[2,0,0]\nx1*x2\nx_1*x_3\n";

fn dgares(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgares")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Self(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }
}

/// Parses the JSON and checks that printing it again gives the same bytes.
fn round_trip<T: Serialize + DeserializeOwned>(json: &str) -> T {
    let value: T = serde_json::from_str(json).expect("output parses");
    assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", json);
    value
}

#[test]
fn hexagon_betti_totals() {
    let f = Files::new();
    let hex = f.write("hex.txt", HEXAGON);
    let o = dgares(&["betti", &hex]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("total betti numbers: 1 6 9 6 2\n"));
    let o = dgares(&["--json", "betti", &hex]);
    let r: BettiReport = round_trip(&stdout(&o));
    assert_eq!(r.totals, vec![1, 6, 9, 6, 2]);
    assert_eq!(r.entries.iter().map(|e| e.rank).sum::<usize>(), 24);
    assert!(r.entries.iter().any(|e| e.i == 4 && e.degree == vec![1; 6] && e.rank == 2));
}

#[test]
fn text_and_json_agree() {
    let f = Files::new();
    let hex = f.write("hex.txt", HEXAGON);
    let text = stdout(&dgares(&["betti", &hex]));
    let r: BettiReport = serde_json::from_str(&stdout(&dgares(&["betti", &hex, "--json"]))).unwrap();
    assert_eq!(r.text(), text);
}

#[test]
fn cone_fvector_check() {
    let o = dgares(&["fvector", "cone", "--vector", "1,6,9,6,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not a cone f-vector"));
    let o = dgares(&["fvector", "cone", "--vector", "1,4,5,2"]);
    assert_eq!(o.status.code(), Some(0));
    // Two tetrahedra need at least seven triangles.
    let o = dgares(&["fvector", "check", "--vector", "1,6,9,6,2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = dgares(&["fvector", "check", "--vector", "1,4,5,2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = dgares(&["fvector", "check", "--vector", "1,2,2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = dgares(&["fvector", "check", "--vector", "1,x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 3"));
}

#[test]
fn all_examples_pass() {
    let o = dgares(&["examples", "run", "all", "--jobs", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r: ExamplesReport = round_trip(&stdout(&dgares(&["--json", "examples", "run", "all"])));
    assert_eq!(r.regressions.len(), 7);
    assert!(r.passes());
    let o = dgares(&["examples", "run", "4.3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hexagon-betti"));
    assert_eq!(dgares(&["examples", "run", "9.9"]).status.code(), Some(2));
}

#[test]
fn seeded_scans_are_reproducible() {
    let f = Files::new();
    let ideal = f.write("i.txt", THREE);
    let run = |seed: &str| stdout(&dgares(&["dga", "solve", &ideal, "--seed", seed, "--samples", "6"]));
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
    let o = dgares(&["--json", "--seed", "7", "dga", "solve", &ideal]);
    let r: SolveReport = round_trip(&stdout(&o));
    assert_eq!(r.seed, 7);
    assert_eq!(r.dimension, 1);
}

#[test]
fn json_round_trips() {
    let f = Files::new();
    let three = f.write("three.txt", THREE);
    let path = f.write("path.txt", PATH);
    let json = |args: &[&str]| {
        let mut v = vec!["--json"];
        v.extend_from_slice(args);
        stdout(&dgares(&v))
    };
    let r: ResolveReport = round_trip(&json(&["resolve", &three, "--show-transfer"]));
    assert!(r.resolution && r.minimal && r.transfer.is_some());
    let r: TaylorReport = round_trip(&json(&["taylor", &three, "--with-multiplication"]));
    assert_eq!(r.complex.ranks, vec![1, 3, 3, 1]);
    assert!(r.products.unwrap().iter().any(|p| p.scalar == "1" && p.exponent == vec![1, 0, 0]));
    let _: ScarfReport = round_trip(&json(&["scarf", &path]));
    let _: LyubeznikReport = round_trip(&json(&["lyubeznik", &path, "--order", "1,2,3,4,5"]));
    let _: MultiplicationReport = round_trip(&json(&["dga", "transfer", &path]));
    let _: VerifyReport = round_trip(&json(&["dga", "verify", &path]));
    let _: ScaleReport = round_trip(&json(&["dga", "scale", &three]));
    let _: LaurentReport = round_trip(&json(&["dga", "laurent", &three]));
    let _: SupportiveReport = round_trip(&json(&["dga", "supportive", &three]));
    let _: FVectorReport = round_trip(&json(&["fvector", "cone", "--vector", "1,4,5,2"]));
}

#[test]
fn nonassociative_product_is_a_check_failure() {
    let f = Files::new();
    let path = f.write("path.txt", PATH);
    let o = dgares(&["dga", "verify", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("associativity: no\n  witness (g_a, g_c, g_e)"));
    assert_eq!(dgares(&["dga", "transfer", &path]).status.code(), Some(0));
    assert_eq!(dgares(&["dga", "scale", &path]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    let f = Files::new();
    let bad = f.write("bad.txt", "x1\nx2 + x3\n");
    let o = dgares(&["betti", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 4"), "{}", stderr(&o));
    let nonminimal = f.write("nm.txt", "x1\nx1*x2\n");
    assert_eq!(dgares(&["betti", &nonminimal]).status.code(), Some(2));
    assert_eq!(dgares(&["betti", "/nonexistent/ideal.txt"]).status.code(), Some(2));
    let hex = f.write("hex.txt", HEXAGON);
    let o = dgares(&["--max-gens", "5", "betti", &hex]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--max-gens"));
    assert_eq!(dgares(&["lyubeznik", &hex, "--order", "1,2"]).status.code(), Some(2));
    assert_eq!(dgares(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn construct_then_resolve() {
    let f = Files::new();
    let cone = f.write("cone.txt", "# two triangles sharing the apex edge\n{1,2,3}\n1 3 4\n");
    let o = dgares(&["construct", "from-complex", &cone]);
    assert_eq!(o.status.code(), Some(0));
    let ideal = f.write("built.txt", &stdout(&o));
    let r: BettiReport = serde_json::from_str(&stdout(&dgares(&["--json", "betti", &ideal]))).unwrap();
    assert_eq!(r.totals, vec![1, 4, 5, 2]);
    let not_cone = f.write("path.txt", "1 2\n2 3\n3 4\n");
    assert_eq!(dgares(&["construct", "from-complex", &not_cone]).status.code(), Some(2));
}

#[test]
fn relabel_along_lattice_isomorphism() {
    let f = Files::new();
    let a = f.write("a.txt", "x1^2*x2\nx2^3\n");
    let b = f.write("b.txt", "x1*x3\nx3^2\n");
    assert_eq!(dgares(&["relabel", &a, "--target", &b]).status.code(), Some(0));
    let c = f.write("c.txt", "x1\nx2\nx3\n");
    let o = dgares(&["relabel", &a, "--target", &c]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not isomorphic"));
}
