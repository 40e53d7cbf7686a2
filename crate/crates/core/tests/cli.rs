// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chatelet::cli::exit;
use chatelet::count::CountReport;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chatelet"));
    cmd.env("CHATELET_THREADS", "1");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> u8 {
    o.status.code().unwrap() as u8
}

fn spec_file(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_reports_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = spec_file(dir.path(), "good.json", r#"{"a":-1,"f":[0,1,0,1,0]}"#);
    let o = run(&["validate", s(&good)]);
    assert_eq!(code(&o), exit::OK);
    let out = stdout(&o);
    assert!(out.contains("valid") && out.contains("disc f   -4") && out.contains("degree   3"), "{out}");

    let square = spec_file(dir.path(), "square.json", r#"{"a":9,"f":[1,0,0,0,1]}"#);
    let o = run(&["validate", s(&square)]);
    assert_eq!(code(&o), exit::HYPOTHESIS);
    assert!(stdout(&o).contains("rejected"));

    let repeated = spec_file(dir.path(), "rep.json", r#"{"a":-1,"f":[0,1,-1,0,0]}"#);
    assert_eq!(code(&run(&["validate", s(&repeated)])), exit::HYPOTHESIS);

    let malformed = spec_file(dir.path(), "bad.json", r#"{"a":-1,"g":[0,1,0,1,0]}"#);
    let o = run(&["validate", s(&malformed)]);
    assert_eq!(code(&o), exit::PARSE);
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing field `f`"));

    assert_eq!(code(&run(&["validate", "/nonexistent/spec.json"])), exit::IO);
}

#[test]
fn rank_table() {
    let dir = tempfile::tempdir().unwrap();
    for (body, rho) in
        [(r#"{"a":-1,"f":[1,0,3,0,2]}"#, 3), (r#"{"a":-1,"f":[0,1,0,-1,0]}"#, 2), (r#"{"a":-1,"f":[1,0,5,0,4]}"#, 4)]
    {
        let p = spec_file(dir.path(), "r.json", body);
        let o = run(&["rank", s(&p)]);
        assert_eq!(code(&o), exit::OK);
        let out = stdout(&o);
        assert!(out.contains(&format!("rho {rho}")), "{out}");
    }
    let p = spec_file(dir.path(), "r.json", r#"{"a":-1,"f":[1,0,3,0,2]}"#);
    let out = stdout(&run(&["rank", s(&p)]));
    assert!(out.contains("x^2 + 1\t1\ttrue\tconsistent with member"), "{out}");
    assert!(out.contains("x^2 + 2\t1\tfalse\tnonmember (p = 3)"), "{out}");
}

#[test]
fn count_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let p = spec_file(dir.path(), "s.json", r#"{"a":-1,"f":[0,1,0,1,0],"label":"x3+x"}"#);

    let o = run(&["count", s(&p), "--B", "1", "--oracle"]);
    assert_eq!(code(&o), exit::OK);
    let out = stdout(&o);
    assert!(out.starts_with("B,N,T,ratio,beta_secant\n1,6,24,"), "{out}");

    assert_eq!(code(&run(&["count", s(&p), "--B", "10^9"])), exit::BUDGET);

    let (csv, json) = (dir.path().join("out.csv"), dir.path().join("out.json"));
    let o = run(&["count", s(&p), "--grid", "2^4..2^6", "--oracle", "--csv", s(&csv), "--json", s(&json)]);
    assert_eq!(code(&o), exit::OK);
    let table = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().count(), 4);
    let report: CountReport = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!((report.rho, report.norm.as_str()), (3, "sup"));
    assert_eq!(report.surface.label.as_deref(), Some("x3+x"));
    assert_eq!(report.to_csv(), table);

    // identical inputs give identical bytes
    let again = dir.path().join("again.csv");
    run(&["count", s(&p), "--grid", "2^4..2^6", "--csv", s(&again)]);
    assert_eq!(std::fs::read(&again).unwrap(), table.as_bytes());

    let pos = spec_file(dir.path(), "pos.json", r#"{"a":2,"f":[0,1,0,1,0]}"#);
    assert_eq!(code(&run(&["count", s(&pos), "--B", "10"])), exit::REGIME);
    assert_eq!(code(&run(&["count", s(&p), "--grid", "8,4"])), exit::PARSE);
    assert_eq!(code(&run(&["count", s(&p)])), exit::PARSE);
}

#[test]
fn sieve_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let p = spec_file(dir.path(), "s.json", r#"{"a":-1,"f":[0,1,0,1,0]}"#);
    assert_eq!(stdout(&run(&["sieve", s(&p), "--sum", "1", "1"])), "S(1,1) = 4\n");

    let q = spec_file(dir.path(), "q.json", r#"{"a":-1,"f":[1,0,3,0,2]}"#);
    let out = stdout(&run(&["sieve", s(&q), "--euler", "2"]));
    assert!(out.lines().all(|l| l.contains("(2) = 1 ~ 1.00000000000000e0")), "{out}");

    let out = stdout(&run(&["sieve", s(&p), "--filter-stats", "100"]));
    let frac = |key: &str| -> f64 {
        let line = out.lines().find(|l| l.starts_with(key)).unwrap();
        line.split('(').nth(1).unwrap().trim_end_matches(')').parse().unwrap()
    };
    let (killed, unsolvable) = (frac("theta_zero"), frac("locally_unsolvable"));
    assert!((0.0..=1.0).contains(&killed) && (0.0..=1.0).contains(&unsolvable) && killed <= unsolvable);
    assert!(out.contains("theta_zero_subset_of_unsolvable true"));

    assert_eq!(code(&run(&["sieve", s(&p)])), exit::PARSE);
    let out = stdout(&run(&["sieve", s(&p), "--dyadic", "64"]));
    assert!(out.starts_with("i,j,block_sum,s_bound\n"));
}
