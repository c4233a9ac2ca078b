//! End-to-end checks of the command-line surface: formats, exit codes,
//! determinism, and stdin handling.

use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tautilt"))
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("tautilt-cli-{name}-{}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

const KA2: &str = "vertices 1 2\narrow a1 1 2\nnilbound 2\n";
const KA3: &str = "vertices 1 2 3\narrow a1 1 2\narrow a2 2 3\nnilbound 3\n";
const KA3_REL: &str = "vertices 1 2 3\narrow a1 1 2\narrow a2 2 3\nrelation a1*a2\nnilbound 3\n";
const GLS_A2: &str = "vertices 1 2\narrow a 1 2\narrow e1 1 1\narrow e2 2 2\n\
relation e1*e1\nrelation e2*e2\nrelation e1*a - a*e2\nnilbound 4\n";

#[test]
fn sttilt_json_pentagon() {
    let f = write_temp("ka2", KA2);
    let out = bin().arg("sttilt").arg(&f).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 5);
    assert_eq!(json["hasse"].as_array().unwrap().len(), 5);
    for key in ["id", "gmatrix", "dim_vector", "support", "shifted"] {
        assert!(json["nodes"][0].get(key).is_some(), "missing field {key}");
    }
}

#[test]
fn sttilt_output_is_byte_stable() {
    let f = write_temp("gls", GLS_A2);
    let run = || bin().arg("sttilt").arg(&f).output().unwrap().stdout;
    assert_eq!(run(), run());
}

#[test]
fn sttilt_dot_output() {
    let f = write_temp("ka2dot", KA2);
    let out = bin()
        .args(["sttilt", "--format", "dot"])
        .arg(&f)
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches(" -> ").count(), 5);
}

#[test]
fn sttilt_cap_warns_but_exits_zero() {
    let f = write_temp("ka3cap", KA3);
    let out = bin()
        .args(["sttilt", "--cap", "3"])
        .arg(&f)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["complete"], serde_json::Value::Bool(false));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn sttilt_reads_stdin() {
    let mut child = bin()
        .args(["sttilt", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(KA2.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 5);
}

#[test]
fn check_tree_exit_codes() {
    let good = write_temp("good", GLS_A2);
    assert_eq!(
        bin().arg("check-tree").arg(&good).status().unwrap().code(),
        Some(0)
    );
    let bad = write_temp("bad", KA3_REL);
    let out = bin().arg("check-tree").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("(c) core paths survive: fail"));

    let two_cycle = write_temp(
        "cycle",
        "vertices 1 2\narrow a 1 2\narrow b 2 1\nrelation a*b\nrelation b*a\nnilbound 3\n",
    );
    let out = bin().arg("check-tree").arg(&two_cycle).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("(a) loop-free core is a tree: fail"));
}

#[test]
fn compare_exit_codes() {
    let gls = write_temp("cmp-gls", GLS_A2);
    let ka2 = write_temp("cmp-ka2", KA2);
    let ka3 = write_temp("cmp-ka3", KA3);
    let rel = write_temp("cmp-rel", KA3_REL);
    // Isomorphic pair.
    let out = bin()
        .arg("compare")
        .arg(&gls)
        .arg(&ka2)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("isomorphic"));
    // Non-isomorphic pair.
    assert_eq!(
        bin()
            .arg("compare")
            .arg(&rel)
            .arg(&ka3)
            .status()
            .unwrap()
            .code(),
        Some(1)
    );
    // Undecided under a tiny cap.
    let out = bin()
        .args(["compare", "--cap", "2"])
        .arg(&ka3)
        .arg(&ka2)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Self-comparison is always isomorphic.
    assert_eq!(
        bin()
            .arg("compare")
            .arg(&ka2)
            .arg(&ka2)
            .status()
            .unwrap()
            .code(),
        Some(0)
    );
}

#[test]
fn gls_emits_algebra_file() {
    let cartan = write_temp("cartan", "row 2 -1\nrow -1 2\nsymmetrizer 2 2\norientation 1 2\n");
    let out = bin().arg("gls").arg(&cartan).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("condition (S): holds"));
    // The emitted file feeds back into the pipeline.
    let alg_file = write_temp("gls-out", &String::from_utf8_lossy(&out.stdout));
    let sttilt = bin().arg("sttilt").arg(&alg_file).output().unwrap();
    let json: serde_json::Value = serde_json::from_slice(&sttilt.stdout).unwrap();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 5);
}

#[test]
fn gls_warns_when_condition_s_fails() {
    let cartan = write_temp(
        "cartan-b2",
        "row 2 -2\nrow -1 2\nsymmetrizer 1 2\norientation 1 2\n",
    );
    let out = bin().arg("gls").arg(&cartan).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("condition (S): fails"));
    assert!(!out.stdout.is_empty());
}

#[test]
fn gls_rejects_invalid_cartan() {
    let cartan = write_temp("cartan-bad", "row 2 1\nrow 1 2\nsymmetrizer 1 1\n");
    let out = bin().arg("gls").arg(&cartan).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn typea_counts() {
    for (n, count) in [(1u32, 2usize), (2, 5), (3, 14)] {
        let out = bin().arg("typea").arg(n.to_string()).output().unwrap();
        let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(json["nodes"].as_array().unwrap().len(), count);
    }
    let dot = bin().args(["typea", "2", "--format", "dot"]).output().unwrap();
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("digraph"));
}

#[test]
fn parse_errors_carry_positions() {
    let f = write_temp("syntax", "vertices 1 2\narrow a 1 9\nnilbound 2\n");
    let out = bin().arg("sttilt").arg(&f).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr was: {err}");
}
