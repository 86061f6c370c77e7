use std::process::{Command, Output};

fn tgauss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tgauss")).args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_named_and_coded_diagrams() {
    let o = tgauss(&["eval", "--diagram", "right-trefoil"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
    for f in ["v3", "p02"] {
        let o = tgauss(&["eval", "--formula", f, "--diagram", "@"]);
        assert_eq!(stdout(&o).trim(), "0", "{f}");
    }
    let o = tgauss(&["eval", "--formula", "p02", "--diagram", "figure-eight", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], -1);
}

#[test]
fn exit_codes() {
    assert_eq!(tgauss(&["eval", "--diagram", "@ O1+ Q1+"]).status.code(), Some(2));
    assert_eq!(tgauss(&["eval", "--diagram", "@ O1+ U2+"]).status.code(), Some(3));
    assert_eq!(tgauss(&["cocycle", "--loop", "push:right-trefoil", "--a", "2"]).status.code(), Some(2));
    assert_eq!(tgauss(&["cocycle", "--loop", "nowhere:x"]).status.code(), Some(2));
    assert_eq!(tgauss(&["verify", "--suite", "everything"]).status.code(), Some(2));
}

#[test]
fn open_loop_file_is_refused() {
    let o = tgauss(&["loop", "--loop", "push:right-trefoil"]);
    let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    v["events"].as_array_mut().unwrap().pop();
    let path = std::env::temp_dir().join(format!("tgauss-open-{}.json", std::process::id()));
    std::fs::write(&path, v.to_string()).unwrap();
    let o = tgauss(&["cocycle", "--loop", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn loop_file_round_trip() {
    let o = tgauss(&["loop", "--loop", "push:left-trefoil"]);
    assert!(o.status.success());
    let path = std::env::temp_dir().join(format!("tgauss-loop-{}.json", std::process::id()));
    std::fs::write(&path, &o.stdout).unwrap();
    let from_file = tgauss(&["cocycle", "--loop", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    let direct = tgauss(&["cocycle", "--loop", "push:left-trefoil"]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, direct.stdout);
    assert!(stdout(&direct).starts_with("R = -1\n"));
}

#[test]
fn trefoil_audit() {
    let o = tgauss(&["cocycle", "--loop", "push:right-trefoil", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["R"], 1);
    let c = v["contributing_events"].as_array().unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!((c[0]["sign"].as_i64(), c[0]["W"].as_i64()), (Some(1), Some(1)));
}

#[test]
fn tetrahedron_selector_gives_zero() {
    let o = tgauss(&["cocycle", "--loop", "tetra:I:a,n-a,0"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("R = 0\n"));
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--suite", "invariance", "--seed", "11", "--count", "10"];
    let a = tgauss(&args);
    let b = tgauss(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).trim_end().ends_with("PASS"));
    let j = tgauss(&["verify", "--suite", "push-v3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v[0]["suite"], "push-v3");
    assert_eq!(v[0]["failures"].as_array().unwrap().len(), 0);
}
