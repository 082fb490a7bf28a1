use std::process::{Command, Output};

fn selfref(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfref")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn encode_zero_eq_zero() {
    let o = selfref(&["encode", "0 = 0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("code: 2430"));
}

#[test]
fn decode_non_code() {
    let o = selfref(&["decode", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("NotACode"));
    let o = selfref(&["decode", "2430"]);
    assert!(stdout(&o).contains("formula: 0 = 0"), "{}", stdout(&o));
}

#[test]
fn diagonalize_verifies() {
    let o = selfref(&["diagonalize", "~Pr[PA](x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified: yes"));
}

#[test]
fn gl_reflection_has_countermodel() {
    let o = selfref(&["gl", "prove", "[]p -> p"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("refuted"), "{out}");
    assert!(out.contains("smallest countermodel (1 worlds)"), "{out}");
    let o = selfref(&["gl", "prove", "[]([]p -> p) -> []p"]);
    assert!(stdout(&o).starts_with("proved"));
}

#[test]
fn fixpoint_of_goedel_formula() {
    let o = selfref(&["fixpoint", "~[]p"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("D = ~[]#F"), "{out}");
    assert!(out.contains("proved"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(selfref(&["encode", "0 = "]).status.code(), Some(2));
    assert_eq!(selfref(&["fixpoint", "p"]).status.code(), Some(2));
    assert_eq!(selfref(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(selfref(&["--format", "json", "paper-suite"]).status.code(), Some(2));
}

#[test]
fn scheme_check_reports_mismatch() {
    let dir = std::env::temp_dir().join(format!("selfref-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(
        &good,
        "instance g2 scheme II backend modal context PA A \"~[]#F\" B \"~[](#T -> ~[]#F)\" expect Counterexample\n",
    )
    .unwrap();
    let o = selfref(&["scheme", "check", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("classification=Counterexample"));

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "instance t scheme I backend modal context PA A \"#T\" B \"#T\" expect Counterexample\n").unwrap();
    let o = selfref(&["scheme", "check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));

    let broken = dir.join("broken.txt");
    std::fs::write(&broken, "instance t scheme XI backend modal context PA A \"#T\" B \"#T\"\n").unwrap();
    assert_eq!(selfref(&["scheme", "check", broken.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn paper_suite_is_reproducible() {
    let a = selfref(&["paper-suite"]);
    let b = selfref(&["paper-suite"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("invalid schemes: 6 of 8"));
}
