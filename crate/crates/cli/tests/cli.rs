//! Each subcommand's output is compared with the library call it wraps.

use std::path::PathBuf;
use std::process::{Command, Output};

use dyncalc::completeness_corpus::{derive, AxiomId, Params};
use dyncalc::proof_kernel::{check, save_script};
use dyncalc::rule_catalog::catalog;
use dyncalc::syntax::{parse_sequent, Signature};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyncalc"))
        .args(args)
        .env_remove("DYNCALC_OMEGA_BOUND")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    String::from_utf8(o.stdout).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn translate_diamond() {
    assert_eq!(stdout(&["translate", "<a>p"]), "a wtri1 p\n");
}

#[test]
fn parse_normalizes() {
    assert_eq!(
        stdout(&["parse", "--kind", "opterm", "a ;3 (b+)"]),
        "a ;3 b+\n"
    );
    assert_eq!(
        stdout(&[
            "parse",
            "--atoms",
            "props = x ; acts = go",
            "go fbox1 x |- x"
        ]),
        "go fbox1 x |- x\n"
    );
    assert!(!run(&["parse", "z |- z"]).status.success());
}

#[test]
fn derive_matches_library_and_checks() {
    let proof = derive(AxiomId::BoxTestLR, &Params::default()).unwrap();
    assert_eq!(stdout(&["derive", "BoxTest_LR"]), save_script(&proof));

    let path = tmp("boxtest.proof");
    let file = path.to_str().unwrap();
    stdout(&["derive", "BoxTest_LR", "--out", file, "--latex"]);
    assert!(tmp("boxtest.proof.tex").is_file());
    let verdict = check(&proof, 6).to_string();
    assert_eq!(stdout(&["check", file]), format!("{verdict}\n"));
    assert!(verdict.starts_with("ok"));
}

#[test]
fn check_rejects_a_tampered_script() {
    let original = stdout(&["derive", "K"]);
    let text = original.replace("\"rule\":\"fbox_R1\"", "\"rule\":\"fbox_R0\"");
    assert_ne!(text, original);
    let path = tmp("tampered.proof");
    std::fs::write(&path, text).unwrap();
    let o = run(&["check", path.to_str().unwrap()]);
    assert!(!o.status.success());
}

#[test]
fn omega_bound_from_environment() {
    let path = tmp("induction.proof");
    let file = path.to_str().unwrap();
    stdout(&[
        "derive",
        "BoxInduction",
        "--omega-bound",
        "2",
        "--out",
        file,
    ]);
    let with_env = Command::new(env!("CARGO_BIN_EXE_dyncalc"))
        .args(["check", file])
        .env("DYNCALC_OMEGA_BOUND", "2")
        .output()
        .unwrap();
    let with_flag = stdout(&["check", file, "--omega-bound", "2"]);
    assert_eq!(String::from_utf8(with_env.stdout).unwrap(), with_flag);
}

#[test]
fn model_eval() {
    let path = tmp("model.txt");
    std::fs::write(
        &path,
        "atoms: props = p ; acts = a\nworlds: 2\na: (0,1)\np: 1\n",
    )
    .unwrap();
    let m = path.to_str().unwrap();
    assert_eq!(stdout(&["model-eval", m, "a fbox1 p |- p"]), "false\n");
    assert_eq!(stdout(&["model-eval", m, "p |- p"]), "true\n");
}

#[test]
fn fuzz_is_deterministic() {
    let args = ["fuzz", "--seed", "3", "--trials", "200"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    assert!(a.ends_with("0 counterexamples\n"), "{a}");
}

#[test]
fn display_reports_the_chain() {
    let text = stdout(&["display", "p , q |- r", "ant.1"]);
    let sig = Signature::new(["p", "q", "r"], Vec::<String>::new()).unwrap();
    let end = parse_sequent("q |- p > r", &sig).unwrap();
    assert!(text.contains(&end.to_string()), "{text}");
    assert!(text.ends_with("1 steps\n"));
}

#[test]
fn rules_dump_lists_the_catalogue() {
    let text = stdout(&["rules", "dump"]);
    let expected: String = catalog().iter().map(|r| format!("{r}\n")).collect();
    assert_eq!(text, expected);
}

#[test]
fn cutreduce_on_a_cut_free_script() {
    let path = tmp("k.proof");
    let file = path.to_str().unwrap();
    stdout(&["derive", "K", "--out", file]);
    assert_eq!(stdout(&["cutreduce", file]), "0 steps, 0 residual cuts\n");
}

#[test]
fn unknown_subcommand_fails() {
    assert!(!run(&["frobnicate"]).status.success());
    assert!(!run(&["derive", "NoSuchAxiom"]).status.success());
}
