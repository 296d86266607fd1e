use std::fs;
use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_quiverlab"));
    c.env_remove("QUIVERLAB_REGISTRY");
    c
}

#[test]
fn mutate_twice_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.txt");
    fs::write(&q, "4\n0 1 1\n1 2 1\n2 0 1\n2 3 2\n").unwrap();
    let out = bin().args(["mutate", "--at", "1", "--at", "1"]).arg(&q).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), fs::read_to_string(&q).unwrap());

    let out = bin().args(["mutate", "--at", "1", "--format", "matrix"]).arg(&q).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "[[0,-1,0,0],[1,0,-1,0],[0,1,0,2],[0,0,-2,0]]");
}

#[test]
fn verify_oracle_seven() {
    let out = bin().args(["verify", "--suite", "oracle", "--n", "7"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(text.starts_with("report v1 suite=oracle result=pass"));
    assert!(text.contains("check PASS D-tilde n=7 accepted checked=146 failures=0"));
}

#[test]
fn classify_with_saved_registry() {
    let dir = tempfile::tempdir().unwrap();
    let reg = dir.path().join("reg");
    let out = bin().args(["enumerate", "--family", "all", "--n", "6"]).arg("--out").arg(&reg).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("E n=6 members=67"), "{text}");

    let e6 = dir.path().join("e6.txt");
    fs::write(&e6, "6\n0 1 1\n2 1 1\n2 3 1\n4 3 1\n2 5 1\n").unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2\n0 0 1\n").unwrap();
    let out = bin().arg("classify").arg(&e6).arg(&bad).env("QUIVERLAB_REGISTRY", &reg).output().unwrap();
    assert!(!out.status.success());
    let lines: Vec<serde_json::Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["family"], "E");
    assert_eq!(lines[0]["method"], "registry-lookup");
    assert!(lines[0].get("certificate").is_none());
    assert!(lines[1]["error"].is_string());
}

#[test]
fn usage_errors_exit_nonzero() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert!(!out.status.success());
    let out = bin().args(["export", "--protocol", "nope", "--out", "x"]).output().unwrap();
    assert!(!out.status.success());
    let out = bin().args(["mutate", "--at", "5", "/nonexistent"]).output().unwrap();
    assert!(!out.status.success());
}
