use std::process::Command;

use pipedreams::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("pipedreams").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn enumerate_counts() {
    assert_eq!(run(&["pd", "enumerate", "--omega", "1432", "--count"]), (0, "5\n".into(), String::new()));
    let (code, out, _) = run(&["--format", "json", "pd", "enumerate", "--omega", "1432"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().all(|l| l.starts_with(r#"{"n":4"#)));
}

#[test]
fn insert_and_sweep_agree() {
    let a = run(&["--format", "json", "pd", "insert", "--omega", "561324", "--pi", "513264"]);
    let b = run(&["--format", "json", "pd", "sweep", "--omega", "561324", "--pi", "513264", "--columns"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    let (code, _, err) = run(&["pd", "insert", "--omega", "1432", "--pi", "4321"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = run(&["pd", "verify", "theorem-a", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out, "checked 24 permutations of size 4: 0 failures\n");
    for check in ["nu", "canopy", "rewrite", "algorithms"] {
        assert_eq!(run(&["pd", "verify", check, "--n", "4"]).0, 0, "{check}");
    }
}

#[test]
fn quotient_writes_dot() {
    let dir = std::env::temp_dir().join(format!("pipedreams-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q.dot");
    let (code, out, _) = run(&["pd", "quotient", "--omega", "14325", "--dot", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("\"omega\""));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 5);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn coxeter_group_summary() {
    let (code, out, _) = run(&["--format", "json", "cox", "group", "--type", "H3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["order"], 120);
    assert_eq!(v["positive_roots"], 15);
    assert_eq!(run(&["cox", "roots", "--type", "A2"]).1, "(1, 0)\n(0, 1)\n(1, 1)\n");
    assert_eq!(run(&["cox", "group", "--type", "E6"]).0, 2);
    assert_eq!(run(&["cox", "group", "--type", "Z9"]).0, 2);
}

#[test]
fn subword_commands() {
    let base = ["--type", "A2", "--word", "1,2,1,2,1,2", "--omega", "w0"];
    let (code, out, _) = run(&[&["sc", "facets"][..], &base[..]].concat());
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 8);
    assert_eq!(out.lines().filter(|l| !l.contains("acyclic")).count(), 2);
    let (_, out, _) = run(&[&["sc", "sweep"][..], &base[..], &["--pi", "e"][..]].concat());
    assert_eq!(out, "{1,2,3}\n");
    let (_, out, _) = run(&[&["sc", "extensions"][..], &base[..], &["--facet", "1,2,3"][..]].concat());
    assert_eq!(out, "e\n");
    let (code, out, _) = run(&[&["sc", "quotient"][..], &base[..]].concat());
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn non_congruence_is_a_counterexample() {
    let (code, out, _) = run(&["sc", "quotient", "--type", "A3", "--word", "1,2,3,2,1,2,3,2,1", "--omega", "w0"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"congruence\":false"));
}

#[test]
fn theorem_checks() {
    let (code, out, _) = run(&["sc", "verify", "thm-b", "--type", "B2", "--max-len", "5"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("0 failures\n"));
    let single = ["--type", "A3", "--word", "2,3,1,3,2,1,2,3,1", "--omega", "3421"];
    assert_eq!(run(&[&["sc", "verify", "thm-c"][..], &single[..]].concat()).0, 0);
    let unsorted = ["--type", "A3", "--word", "1,2", "--omega", "e"];
    assert_eq!(run(&[&["sc", "verify", "thm-c"][..], &unsorted[..]].concat()).0, 2);
}

#[test]
fn scans_are_deterministic_and_resumable() {
    let full = run(&["sc", "scan", "both", "--type", "B2"]);
    assert_eq!(full.0, 0);
    assert!(full.2.starts_with("no counterexample within scanned space (9 words"));
    assert_eq!(full, run(&["--threads", "1", "sc", "scan", "both", "--type", "B2"]));
    let tail = run(&["sc", "scan", "conj-a", "--type", "B2", "--resume-from", "2,1,2"]);
    assert!(full.1.ends_with(&tail.1));
    let a = run(&["--seed", "5", "sc", "scan", "conj-b", "--type", "B3", "--samples", "20"]);
    assert_eq!(a, run(&["--seed", "5", "sc", "scan", "conj-b", "--type", "B3", "--samples", "20"]));
    assert_eq!(a.0, 0);
}

#[test]
fn large_scans_are_gated() {
    let (code, _, err) = run(&["sc", "scan", "conj-a", "--type", "H3", "--max-len", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("--large-scan"));
    assert_eq!(run(&["sc", "scan", "conj-a", "--type", "H3", "--max-len", "2", "--large-scan"]).0, 0);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["pd", "enumerate"]).0, 2);
    assert_eq!(run(&["--cap", "0", "pd", "enumerate", "--omega", "12"]).0, 2);
    assert_eq!(run(&["--cap", "2", "pd", "enumerate", "--omega", "1432"]).0, 2);
    assert_eq!(run(&["pd", "enumerate", "--omega", "1134"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_pipedreams");
    let ok = Command::new(bin).args(["pd", "enumerate", "--omega", "1432", "--count"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "5\n");
    let bad = Command::new(bin).args(["pd", "bogus"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let capped = Command::new(bin).env("PIPEDREAMS_CAP", "2").args(["pd", "enumerate", "--omega", "1432"]).output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
}
