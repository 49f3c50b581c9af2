use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn maghom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maghom")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn types_file() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/sq2-types.json")
        .to_string_lossy()
        .into_owned()
}

#[test]
fn compute_sq2_table() {
    let out = maghom(&["compute", "--graph", "sq2", "--l", "4", "--types", &types_file()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("graph sq2: 6 vertices, 8 edges\n"));
    assert!(text.contains("l = 4, kmax = 4, method = geometric\n"));
    assert!(text.contains("   3  Z^12\n   4  Z^112\n"));
    assert!(text.contains("  (a,d): MH_3 = Z^2\n"));
    assert!(text.contains(
        "   k    (a,a)    (a,b)    (a,c)    (a,d)    (b,b)    (b,c)    (b,f)    (b,e)\n\
         \x20  0        0        0        0        0        0        0        0        0\n\
         \x20  1        0        0        0        0        0        0        0        0\n\
         \x20  2        0        0        0        0        0        0        0        0\n\
         \x20  3        0        0        8        4        0        0        0        0\n\
         \x20  4       12       40        0        0       32        0       20        8\n"
    ));
}

#[test]
fn compute_structured_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..2).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    for (p, extra) in paths.iter().zip([None, Some("--sequential")]) {
        let mut args = vec!["compute", "--graph", "sq2", "--l", "3..4", "--format", "structured"];
        args.extend(extra);
        args.extend(["--out", p.to_str().unwrap()]);
        let out = maghom(&args);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let doc: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["results"].as_array().unwrap().len(), 2);
    assert_eq!(doc["results"][1]["totals"][3]["betti"], 12);
    assert_eq!(doc["tool"]["name"], "maghom");
}

#[test]
fn compute_tree_and_trivial_lengths() {
    let out = maghom(&["compute", "--graph", "random-tree:8:1", "--l", "5", "--method", "auto"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("method = tree"));
    assert!(text.contains("   4  0\n   5  Z^14\n"));

    let out = maghom(&["compute", "--graph", "path:3", "--l", "0"]);
    assert!(stdout(&out).contains("   0  Z^3\n"));
}

#[test]
fn compute_from_file_with_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.txt");
    std::fs::write(&path, "# a 4-cycle\nw x\nx y\ny z\nz w\n").unwrap();
    let out = maghom(&["compute", "--graph", path.to_str().unwrap(), "--l", "2", "--pair", "w,y"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("  (w,y): MH_2 = Z\n"));
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 7] = [
        &["compute", "--graph", "sq2"],
        &["compute", "--graph", "sq2", "--l", "x"],
        &["compute", "--graph", "nosuch", "--l", "3"],
        &["compute", "--graph", "cycle:4", "--l", "3", "--method", "tree"],
        &["compute", "--graph", "cycle:4", "--l", "2", "--method", "geometric"],
        &["compute", "--graph", "sq2", "--l", "3", "--pair", "a,q"],
        &["export", "--graph", "sq2", "--l", "2", "--pair", "a,a"],
    ];
    for args in cases {
        let out = maghom(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn check_passes_and_is_deterministic() {
    let args = ["check", "--trials", "12", "--seed", "9", "--format", "structured"];
    let first = maghom(&args);
    assert!(first.status.success(), "{}", stderr(&first));
    assert_eq!(first.stdout, maghom(&args).stdout);
    let doc: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["trials"].as_array().unwrap().len(), 12);
}

#[test]
fn check_zero_trials_warns() {
    let out = maghom(&["check", "--trials", "0"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning"));
}

#[test]
fn injected_fault_fails_with_counterexample() {
    let out = maghom(&["check", "--trials", "5", "--l", "3", "--seed", "2", "--inject-sign-fault"]);
    if cfg!(debug_assertions) {
        assert_eq!(out.status.code(), Some(4));
        let err = stderr(&out);
        let json = err.trim().strip_prefix("error: counterexample: ").unwrap();
        let c: Value = serde_json::from_str(json).unwrap();
        assert!(c["graph"]["vertices"].is_array());
        assert_eq!(c["mismatch"]["kind"], "chain");
        assert!(c["mismatch"]["relative_degree"].is_number());
    } else {
        assert_eq!(out.status.code(), Some(2));
    }
}

#[test]
fn export_formats() {
    let out = maghom(&["export", "--graph", "sq2", "--l", "4", "--pair", "a,a"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["maximal_simplices"].as_array().unwrap().len(), 8);

    let out = maghom(&["export", "--graph", "sq2", "--l", "4", "--pair", "a,d", "--format", "off"]);
    assert!(stdout(&out).starts_with("OFF\n"));

    let out = maghom(&["export", "--graph", "path:5", "--l", "3", "--pair", "0,4"]);
    assert!(stderr(&out).contains("notice"));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["simplices"].as_array().unwrap().is_empty());

    let out = maghom(&["export", "--graph", "path:2", "--l", "4", "--pair", "0,0", "--walk", "0,1,0,1,0"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["kind"], "delta_pair");

    let out = maghom(&["export", "--graph", "sq2", "--l", "4", "--pair", "a,a", "--walk", "a,b,a,b,a"]);
    assert_eq!(out.status.code(), Some(2));
}
