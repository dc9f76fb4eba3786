use std::path::Path;
use std::process::{Command, Output};

fn hfk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const E8: &str = "[[-2,1,0,0,0,0,0,0],[1,-2,1,0,0,0,0,0],[0,1,-2,1,0,0,0,1],[0,0,1,-2,1,0,0,0],\
                  [0,0,0,1,-2,1,0,0],[0,0,0,0,1,-2,1,0],[0,0,0,0,0,1,-2,0],[0,0,1,0,0,0,0,-2]]";

#[test]
fn states_table() {
    let o = hfk(&["states", "3_1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut grades: Vec<(i64, i64)> = text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    grades.sort();
    assert_eq!(grades, vec![(-1, -2), (0, -1), (1, 0)]);
    assert!(text.contains("# alexander\tT - 1 + T^-1"));
    assert_eq!(stdout(&hfk(&["states", "unknot"])), "state\tA\tM\n-\t0\t0\n# states\t1\n# alexander\t1\n");
    assert_eq!(hfk(&["states", "9_99"]).status.code(), Some(2));
}

#[test]
fn hfk_tables_and_routes() {
    let f8 = stdout(&hfk(&["hfk", "4_1"]));
    assert_eq!(f8, "A\tM\trank\n1\t1\t1\n0\t0\t3\n-1\t-1\t1\n# route\talternating\n");
    let t34 = stdout(&hfk(&["hfk", "T(3,4)", "--lspace"]));
    assert_eq!(t34.lines().filter(|l| !l.starts_with(['A', '#'])).count(), 5);
    let refused = hfk(&["hfk", "8_20"]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("out of scope"));
}

#[test]
fn scalar_commands() {
    assert_eq!(stdout(&hfk(&["tau", "3_1"])), "1\n");
    assert_eq!(stdout(&hfk(&["genus", "unknot"])), "0\n");
    assert_eq!(stdout(&hfk(&["alexander", "T(2,5)"])), "T^2 - T + 1 - T^-1 + T^-2\n");
    assert_eq!(stdout(&hfk(&["det", "--pd", "X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)"])), "3\n");
    assert_eq!(stdout(&hfk(&["det", "--braid", "[1,-2,1,-2]", "--strands", "3"])), "5\n");
    assert_eq!(stdout(&hfk(&["dinv", "2", "1"])), "1/4, -1/4\n");
    assert_eq!(hfk(&["dinv", "4", "2"]).status.code(), Some(1));
    assert_eq!(hfk(&["alexander", "--pd", "X(1,2"]).status.code(), Some(2));
    assert_eq!(hfk(&["bogus"]).status.code(), Some(2));
}

#[test]
fn json_output() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&hfk(&["--json", "hfk", "3_1"]))).unwrap();
    assert_eq!(v["route"], "alternating");
    assert_eq!(v["groups"].as_array().unwrap().len(), 3);
    let d: serde_json::Value = serde_json::from_str(&stdout(&hfk(&["dinv", "2", "1", "--json"]))).unwrap();
    assert_eq!(d["d"], serde_json::json!(["1/4", "-1/4"]));
}

#[test]
fn obstruct_files() {
    let dir = tempfile::tempdir().unwrap();
    let e8 = write(dir.path(), "e8.json", E8);
    let d0 = write(dir.path(), "d0.json", r#"{"0": "0"}"#);
    let o = hfk(&["obstruct", &e8, &d0]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("OBSTRUCTED witness c=0"));
    assert_eq!(stdout(&hfk(&["obstruct", &e8, "d=2"])), "PASSES m(Q)=8\n");
    let diag: Vec<Vec<i64>> = (0..8).map(|i| (0..8).map(|j| if i == j { -1 } else { 0 }).collect()).collect();
    let diag = write(dir.path(), "diag8.json", &serde_json::to_string(&diag).unwrap());
    assert_eq!(stdout(&hfk(&["obstruct", &diag, &d0])), "PASSES m(Q)=0\n");
    let pos = write(dir.path(), "pos.json", "[[1]]");
    assert_eq!(hfk(&["obstruct", &pos, "d=0"]).status.code(), Some(1));
    assert_eq!(hfk(&["obstruct", "/nonexistent/gram.json", "d=0"]).status.code(), Some(2));
}

#[test]
fn check_runs() {
    let dir = tempfile::tempdir().unwrap();
    let bundled = include_str!("../corpus/knots.jsonl");
    let corrupted = bundled.replacen(r#""signature":0,"determinant":5"#, r#""signature":2,"determinant":5"#, 1);
    let path = write(dir.path(), "bad.jsonl", &corrupted);
    let o = hfk(&["check", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("4_1: signature"));
    let empty = write(dir.path(), "empty.jsonl", "");
    let o = hfk(&["check", &empty]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(hfk(&["check", "/nonexistent/corpus.jsonl"]).status.code(), Some(2));
}

#[test]
fn plots() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t34.svg");
    assert!(hfk(&["plot", "T(3,4)", "--lspace", "-o", out.to_str().unwrap()]).status.success());
    let svg = std::fs::read_to_string(&out).unwrap();
    for (a, m) in [(3, 0), (2, -1), (0, -2), (-2, -5), (-3, -6)] {
        assert!(svg.contains(&format!(r#"data-a="{a}" data-m="{m}" data-rank="1""#)), "missing dot ({a},{m})");
    }
    assert_eq!(svg.matches("<circle").count(), 5);
    let unknot = stdout(&hfk(&["plot", "unknot"]));
    assert_eq!(unknot.matches("<circle").count(), 1);
    assert!(unknot.contains(r#"data-a="0" data-m="0""#));
    let f8 = stdout(&hfk(&["plot", "4_1"]));
    assert!(f8.contains(r#"data-a="0" data-m="0" data-rank="3""#));
    assert!(f8.contains(r#"class="rank""#));
    assert_eq!(hfk(&["plot", "8_20"]).status.code(), Some(1));
}

#[test]
fn deterministic_output() {
    for args in [&["states", "8_19"][..], &["plot", "7_4"], &["check"], &["--json", "hfk", "6_3"]] {
        let a = stdout(&hfk(args));
        let b = stdout(&hfk(args));
        if args[0] == "check" {
            let strip = |s: &str| s.lines().map(|l| l.rsplit_once('\t').map_or(l, |p| p.0).to_string()).collect::<Vec<_>>();
            assert_eq!(strip(&a), strip(&b));
        } else {
            assert_eq!(a, b, "{args:?}");
        }
    }
}

#[test]
fn homology_command() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"generators":[{"name":"x1","grading":0},{"name":"x2","grading":-1},{"name":"x3","grading":0}],
                   "differential":[{"from":"x1","to":"x2"},{"from":"x3","to":"x2","coeff":-1}]}"#;
    let p = write(dir.path(), "g1.json", spec);
    let text = stdout(&hfk(&["homology", &p]));
    assert!(text.contains("hat\t{0:Z}\n"));
    assert!(text.contains("generator\t0\tx1 + x3\n"));
    assert!(text.contains("exact\ttrue\n"));
    assert!(stdout(&hfk(&["homology", &p, "--mod2"])).contains("hat\t{0:Z/2}\n"));
    let bad = write(dir.path(), "bad.json", r#"{"generators":[{"name":"a","grading":0}],"differential":[{"from":"a","to":"a"}]}"#);
    assert_eq!(hfk(&["homology", &bad]).status.code(), Some(1));
}
