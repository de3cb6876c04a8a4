use std::io::Write;
use std::process::{Command, Output, Stdio};

fn sigcover(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sigcover"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const NECKLACE: &str = "\
# doubled triangle with one balanced negative pair
e a b -
e a b -
e b c +
e b c +
e c a +
e c a +
";

#[test]
fn analyze_single_negative_loop() {
    let o = sigcover(&["analyze", "-"], "e x x -\n");
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("flow_admissible: false"));
    assert!(s.contains("coloops: 0"));
}

#[test]
fn cover_of_necklace_from_file() {
    let dir = std::env::temp_dir().join(format!("sigcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("necklace.txt");
    std::fs::write(&path, NECKLACE).unwrap();
    let o = sigcover(&["--format", "json", "cover", "--k", "1", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let members = v["certificate"]["members"].as_array().unwrap();
    assert_eq!(members.len(), 3);
    for m in members {
        assert_eq!(m["kind"], "circuit");
        assert_eq!(m["edges"].as_array().unwrap().len(), 2);
        assert_eq!(m["multiplicity"], 1);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn theorem_sweep_passes() {
    let o = sigcover(&["sweep", "--property", "thm_6cover", "--max-v", "5", "--max-e", "8", "--jobs", "2"], "");
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("counterexamples: 0"));
    assert!(s.contains("result: pass"));
}

#[test]
fn false_property_saves_replayable_counterexamples() {
    let dir = std::env::temp_dir().join(format!("sigcover-save-{}", std::process::id()));
    let o = sigcover(
        &["sweep", "--property", "one_cover", "--max-v", "1", "--max-e", "2", "--save", dir.to_str().unwrap()],
        "",
    );
    assert_eq!(o.status.code(), Some(1));
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!files.is_empty());
    for f in &files {
        let replay = sigcover(&["lemma", "one_cover", f.to_str().unwrap()], "");
        assert_eq!(replay.status.code(), Some(1));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn input_errors_exit_two() {
    let o = sigcover(&["analyze", "-"], "e a b +\ne a\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("-:2:"));
    let o = sigcover(&["analyze", "/nonexistent/graph.txt"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn min_cover_and_decompose() {
    let o = sigcover(&["min-cover", "--max", "6", "-"], NECKLACE);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("min_cover: 1"));
    let o = sigcover(&["min-cover", "--max", "6", "-"], "e x x -\n");
    assert_eq!(o.status.code(), Some(1));
    let o = sigcover(&["--format", "json", "decompose", "--optimal", "-"], NECKLACE);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["decompositions"][0]["unbalanced"], 2);
}
