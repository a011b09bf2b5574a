use std::io::Write;
use std::process::{Command, Output, Stdio};

fn tbn(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tbn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = tbn(args, None);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn gen_fig1_piped_into_solve() {
    let text = ok(&["gen", "fig1"]);
    let o = tbn(&["solve", "-"], Some(&text));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "stable_entropy: 3"));
}

#[test]
fn bound_values() {
    assert_eq!(ok(&["bound", "--d", "1", "--m", "2", "--a", "1"]), "6\n");
    assert_eq!(ok(&["bound", "polymer", "--d", "2", "--m", "2", "--a", "1"]), "1024\n");
    assert_eq!(ok(&["bound", "acyclic", "--d", "2", "--l", "3"]), "4\n");
    assert_eq!(ok(&["bound", "farkasK", "--a", "2", "--d", "2"]), "64\n");
    let j: serde_json::Value = serde_json::from_str(&ok(&["bound", "--json", "--d", "1", "--m", "1", "--a", "1"])).unwrap();
    assert_eq!(j["bound"], "4");
}

#[test]
fn translator_distance() {
    assert_eq!(ok(&["dist", "translator", "--n", "3", "--k", "2", "--predicate", "free:TERM"]), "2\n");
    let j: serde_json::Value =
        serde_json::from_str(&ok(&["dist", "translator", "--n", "3", "--k", "2", "--predicate", "free:TERM", "--json"]))
            .unwrap();
    assert_eq!(j["stable_entropy"], 7);
    assert_eq!(j["constrained_entropy"], 5);
    assert_eq!(j["distance"], 2);
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("t.tbn");
    let good = dir.path().join("good.cfg");
    let bad = dir.path().join("bad.cfg");
    let text = ok(&["gen", "translator", "--n", "2", "--k", "2", "--cfg", good.to_str().unwrap()]);
    std::fs::write(&net, text).unwrap();
    ok(&["gen", "translator", "--n", "2", "--k", "2", "--output", "1", "--cfg", bad.to_str().unwrap()]);
    let out = ok(&["check", net.to_str().unwrap(), good.to_str().unwrap()]);
    assert!(out.contains("stable: true"));
    let o = tbn(&["check", net.to_str().unwrap(), bad.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("stable: false"));
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(tbn(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(tbn(&["bound", "--d", "x"], None).status.code(), Some(2));
    let o = tbn(&["solve", "-"], Some("monomer x a\n"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(tbn(&["solve", "/nonexistent/file.tbn"], None).status.code(), Some(2));
    assert_eq!(tbn(&["solve", "fig1", "--threads", "0"], None).status.code(), Some(2));
}

#[test]
fn threads_do_not_change_output() {
    let one = ok(&["solve", "andtree", "--n", "3", "--inputs", "10", "--json"]);
    let four = ok(&["solve", "andtree", "--n", "3", "--inputs", "10", "--json", "--threads", "4"]);
    assert_eq!(one, four);
}

#[test]
fn generators_round_trip() {
    let cases: &[&[&str]] = &[
        &["gen", "fig1"],
        &["gen", "and2", "--inputs", "10"],
        &["gen", "translator", "--n", "2", "--k", "3"],
        &["gen", "andtree", "--depth", "2", "--n", "3", "--inputs", "1110"],
        &["gen", "treepoly", "--n", "3", "--k", "2"],
        &["gen", "counter", "--k", "2"],
    ];
    for args in cases {
        let text = ok(args);
        let (t, c) = tbn_core::parse_tbn(&text).unwrap();
        assert_eq!(tbn_core::write_tbn(&t, &c), text, "{args:?}");
        // the library agrees with the command line
        let o = tbn(&["solve", "-"], Some(&text));
        let want = tbn_core::solver::stable_entropy(&t, &c).unwrap().stable_entropy;
        assert!(stdout(&o).starts_with(&format!("stable_entropy: {want}\n")), "{args:?}");
    }
}

#[test]
fn enumerate_fig1() {
    let out = ok(&["enumerate", "fig1"]);
    assert!(out.starts_with("count: 9\n"));
    assert!(ok(&["enumerate", "fig1", "--filter", "saturated"]).starts_with("count: 4\n"));
    let j: serde_json::Value = serde_json::from_str(&ok(&["enumerate", "fig1", "--filter", "stable", "--json"])).unwrap();
    assert_eq!(j["count"], 1);
    let o = Command::new(env!("CARGO_BIN_EXE_tbn"))
        .args(["enumerate", "fig1"])
        .env("TBN_ENUM_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn energy() {
    assert_eq!(ok(&["energy", "--h", "2", "--size", "4", "--s", "3", "--l", "5"]), "-13.04\n");
    assert_eq!(ok(&["energy", "fig1", "--l", "5"]), "-13.04\n");
    let j: serde_json::Value = serde_json::from_str(&ok(&["energy", "--h", "0", "--size", "4", "--s", "4", "--json"])).unwrap();
    assert_eq!(j["delta_g"], 0.0);
}

#[test]
fn atam_commands() {
    let grid = ok(&["atam", "simulate", "--counter", "2"]);
    assert_eq!(grid.lines().count(), 2);
    assert_eq!(grid.lines().last().unwrap().split_whitespace().count(), 5);
    let random = ok(&["atam", "simulate", "--counter", "2", "--policy", "random", "--seed", "7"]);
    assert_eq!(grid, random);

    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("c.json");
    std::fs::write(&sys, ok(&["gen", "counter", "--k", "2", "--variant", "plain", "--json"])).unwrap();
    let o = tbn(&["atam", "check", sys.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("stable: false"));

    assert!(ok(&["atam", "check", "--counter", "3"]).contains("stable: true"));
    let o = tbn(&["atam", "check", "--counter", "3", "--variant", "plain", "--json"], None);
    assert_eq!(o.status.code(), Some(1));
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(j["stable_entropy"].as_u64().unwrap() >= 2);
    assert!(!j["self_saturating"].as_array().unwrap().is_empty());
    assert_eq!(tbn(&["atam", "check", "--counter", "4"], None).status.code(), Some(2));

    let cfg = dir.path().join("a.cfg");
    let dot = dir.path().join("a.dot");
    let text = ok(&["atam", "interpret", "--counter", "2", "--cfg", cfg.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    let (t, _) = tbn_core::parse_tbn(&text).unwrap();
    let a = tbn_core::parse_cfg(&std::fs::read_to_string(&cfg).unwrap(), &t).unwrap();
    assert_eq!(a.len(), 10);
    assert!(a.is_saturated());
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph"));
}
