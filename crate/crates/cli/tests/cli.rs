use std::process::{Command, Output};

use serde_json::Value;

fn sumgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumgraph")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    format!("{}/../core/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn spurious_edges_exit_one() {
    let o = sumgraph(&["verify", "--graph", "C4", "--magma", "z", "--labels", "1,2,3,4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("spurious edge {0,2}: 1 (+) 3 = 4"));
}

#[test]
fn printed_z17_labelling_has_a_chord() {
    let o = sumgraph(&["--json", "verify", "--graph", "C7", "--magma", "z17", "--labels", "1,6,12,3,15,7,5"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["spurious_edges"][0]["u"], 4);
    assert_eq!(v["spurious_edges"][0]["w"], 6);
    assert_eq!(v["spurious_edges"][0]["sum"], "3");
}

#[test]
fn fixtures_verify() {
    let o = sumgraph(&["verify", "--fixture", "FIX-9.3-Q4-r24"]);
    assert!(o.status.success());
    let o = sumgraph(&["verify", "--fixture", "FIX-0-nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sumgraph(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sumgraph(&["verify", "--graph", "C4", "--magma", "q", "--labels", "1"]).status.code(), Some(2));
    assert_eq!(sumgraph(&["search", "--graph", "C4", "--domain", "mod:1"]).status.code(), Some(2));
    assert_eq!(sumgraph(&["claims", "run", "NOPE-1"]).status.code(), Some(2));
}

#[test]
fn count_row_as_json() {
    let o = sumgraph(&["--json", "count", "--file", &data("graphs5.g6"), "--radius-cap", "12"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["n"].as_u64(), v["isg"].as_u64(), v["risg"].as_u64()), (Some(5), Some(14), Some(18)));
}

#[test]
fn json_output_reads_back() {
    let dir = std::env::temp_dir().join(format!("sumgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z5.json");
    let o = sumgraph(&["--json", "verify", "--fixture", "FIX-4-C4-Z5"]);
    std::fs::write(&path, &o.stdout).unwrap();
    let back = sumgraph(&["verify", "--file", path.to_str().unwrap()]);
    assert!(back.status.success(), "{}", stdout(&back));
    let dot = sumgraph(&["convert", path.to_str().unwrap(), "--to", "dot"]);
    assert!(stdout(&dot).contains("\"1\" -- \"3\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn constructions() {
    let o = sumgraph(&["construct", "matching-harary", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("spurious edge {1,6}"));
    assert!(sumgraph(&["construct", "matching-li", "20"]).status.success());
    assert!(sumgraph(&["construct", "fibonacci", "z682", "1", "81", "15"]).status.success());
    assert!(sumgraph(&["construct", "c4-abelian", "z5xz5", "1,0"]).status.success());
    assert_eq!(sumgraph(&["construct", "c4l", "2"]).status.code(), Some(1));
}

#[test]
fn search_and_sweeps() {
    let o = sumgraph(&["search", "--graph", "C4", "--domain", "int:30"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("exhausted"));
    let o = sumgraph(&["--json", "mod-sweep", "--graph", "Q3", "--cap", "20"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["smallest_modulus"], 15);
    let o = sumgraph(&["--json", "sum-number", "--graph", "C4", "--max-isolated", "4", "--bound", "30"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 3);
}

#[test]
fn kernel_in_printed_basis() {
    let o = sumgraph(&["kernel", "--fixture", "FIX-9.3-Q4-sol2", "--u-basis"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("labels = (32, -5, -14) in u1, u2, u3"));
}

#[test]
fn claims_subset_runs() {
    let o = sumgraph(&["--json", "claims", "run", "T8"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["claims"].as_array().unwrap().len(), 7);
    assert_eq!(v["witnesses_recheck"], true);
}
