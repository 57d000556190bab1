use std::process::Command;

use koszulator::{emit_certificate, parse_session, run_command, Certificate};

const CORPUS: &str = include_str!("../sessions/corpus.session");
const NON_CM: &str = include_str!("../sessions/non_cm.session");

fn args(a: &[&str]) -> Vec<String> {
    a.iter().map(|s| s.to_string()).collect()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_koszulator"))
}

fn session_file(text: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), text).unwrap();
    f
}

#[test]
fn roundtrip_on_corpus_complex() {
    let s = parse_session(CORPUS).unwrap();
    let c = run_command(&s, "roundtrip", &args(&["P", "fl"])).unwrap();
    assert!(c.passed());
    let euler = &c.outputs["report"]["euler"];
    assert!(euler.as_array().unwrap().iter().all(|v| v == 2));
}

#[test]
fn cm_check_and_k0() {
    let s = parse_session(NON_CM).unwrap();
    let c = run_command(&s, "cm-check", &[]).unwrap();
    assert_eq!(c.outputs["cm"]["depth"], 0);
    assert_eq!(c.outputs["cm"]["dimension"], 1);
    assert_eq!(c.outputs["cm"]["cohen_macaulay"], false);
    let s = parse_session(CORPUS).unwrap();
    assert_eq!(run_command(&s, "k0", &args(&["P"])).unwrap().outputs["euler"], 2);
}

#[test]
fn emitted_certificate_reparses() {
    let s = parse_session(CORPUS).unwrap();
    let c = run_command(&s, "koszul-cover", &args(&["W", "S"])).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    emit_certificate(&c, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let back = Certificate::from_json(&text).unwrap();
    assert_eq!(back, c);
    assert_eq!(back.to_canonical_json(), text);
}

#[test]
fn errors_carry_command_context() {
    let s = parse_session(CORPUS).unwrap();
    let e = run_command(&s, "hom-vanish", &args(&["P", "P"])).unwrap_err();
    assert!(e.to_string().starts_with("hom-vanish:"), "{e}");
    assert!(run_command(&s, "nonsense", &[]).is_err());
    assert!(run_command(&s, "k0", &args(&["nope"])).is_err());
}

#[test]
fn binary_exit_codes_and_determinism() {
    let f = session_file(CORPUS);
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let st = bin().args(["roundtrip", "W", "S", "--session"]).arg(f.path()).arg("--out").arg(out).output().unwrap().status;
        assert_eq!(st.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    // a different seed changes the digest
    let c = dir.path().join("c.json");
    bin().args(["roundtrip", "W", "S", "--seed", "99", "--session"]).arg(f.path()).arg("--out").arg(&c).output().unwrap();
    let ca = Certificate::from_json(&std::fs::read_to_string(&a).unwrap()).unwrap();
    let cc = Certificate::from_json(&std::fs::read_to_string(&c).unwrap()).unwrap();
    assert_ne!(ca.inputs_digest, cc.inputs_digest);
    assert_eq!(cc.seed, 99);

    let st = bin()
        .args(["k0", "P", "--session"])
        .arg(f.path())
        .args(["--out", "/nonexistent-dir/x/y.json"])
        .output()
        .unwrap()
        .status;
    assert_eq!(st.code(), Some(2));
    let bad = session_file("ring R = QQ[x]\ncomplex P = [R(-1) -(x)-> R(-1)]\n");
    let out = bin().args(["k0", "P", "--session"]).arg(bad.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
