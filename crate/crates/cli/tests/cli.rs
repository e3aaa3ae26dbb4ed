use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const EMU: &str = "nec emu -> bird\ndef bird => fly @ 1/100\ndef emu => ~fly @ 1/100\n";

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn plausible(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plausible"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lottery(n: usize) -> String {
    (1..=n)
        .map(|i| format!("def true => ~w{i} @ 1/100\n"))
        .collect()
}

#[test]
fn emu_is_consistent_with_empty_max_set() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "emu.kb", EMU);
    let o = plausible(&["check", kb.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict=consistent"));
    assert!(out.contains("I_max = {}"));
}

#[test]
fn lottery_with_possibility_is_consistent() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "lot.kb", &format!("poss true\n{}", lottery(10)));
    let o = plausible(&["check", kb.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict=consistent"));
}

#[test]
fn loose_default_is_a_precondition_error() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "bad.kb", "def a => b @ 2/3\n");
    let o = plausible(&["check", kb.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn missing_bound_is_a_precondition_error_unless_qualitative() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "q.kb", "def a => b\n");
    assert_eq!(
        plausible(&["check", kb.to_str().unwrap()]).status.code(),
        Some(3)
    );
    let o = plausible(&["check", "--qualitative", kb.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn syntax_errors_exit_two() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "broken.kb", "def a => \n");
    let o = plausible(&["check", kb.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":1:"));
    let kb = write(&d, "ok.kb", EMU);
    assert_eq!(
        plausible(&["query", kb.to_str().unwrap(), "def bird => ?"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(plausible(&["dualize", "def a =>"]).status.code(), Some(2));
}

#[test]
fn emu_things_are_not_emus() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "emu.kb", EMU);
    let o = plausible(&["query", kb.to_str().unwrap(), "def true => ~emu ?"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict=consequence bound_num=1 bound_den=50 vacuous=false"));
    assert!(out.contains("bound: delta = 1/50"));
}

#[test]
fn ten_ticket_lottery() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "lot.kb", &lottery(10));
    let goal: Vec<String> = (1..=10).map(|i| format!("~w{i}")).collect();
    let q = format!("def true => {} ?", goal.join(" & "));
    let o = plausible(&["query", kb.to_str().unwrap(), &q]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bound_num=1 bound_den=10"));
}

#[test]
fn likelihood_complement_rejected_with_countermodel() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "one.kb", "lik true ~> a @ 1/2\n");
    let o = plausible(&["query", kb.to_str().unwrap(), "lik true ~> ~a ?"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict=not-consequence"));
    assert!(!stdout(&o).contains("countermodel"));
    let o = plausible(&[
        "query",
        "--oracle",
        kb.to_str().unwrap(),
        "lik true ~> ~a ?",
    ]);
    let out = stdout(&o);
    assert!(out.contains("oracle verdict: not-consequence"));
    assert!(out.contains("countermodel: p(a) = 1"));
    assert!(out.contains("oracle_used=true"));
}

#[test]
fn json_and_text_agree() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "emu.kb", EMU);
    for q in [
        "def bird => ~emu ?",
        "def ~emu => bird ?",
        "consistent?",
        "poss bird ?",
    ] {
        let text = stdout(&plausible(&["query", kb.to_str().unwrap(), q]));
        let json: serde_json::Value = serde_json::from_str(&stdout(&plausible(&[
            "query",
            "--json",
            kb.to_str().unwrap(),
            q,
        ])))
        .unwrap();
        let verdict = json["verdict"].as_str().unwrap();
        assert!(text.contains(&format!("verdict={verdict} ")), "{q}");
        let num = json["bound_num"].as_str().unwrap_or("-");
        let den = json["bound_den"].as_str().unwrap_or("-");
        assert!(
            text.contains(&format!("bound_num={num} bound_den={den} ")),
            "{q}"
        );
    }
}

#[test]
fn explicit_oracle_over_budget_exits_four() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "emu.kb", EMU);
    let o = plausible(&[
        "check",
        "--oracle",
        "--max-atoms",
        "2",
        kb.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn mixed_kinds_over_budget_are_undecided() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "mixed.kb", "def a => b @ 1/100\nlik c ~> d @ 1/10\n");
    let o = plausible(&[
        "query",
        "--max-atoms",
        "2",
        kb.to_str().unwrap(),
        "poss a ?",
    ]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stdout(&o).contains("verdict=undecided"));
    let o = plausible(&["query", kb.to_str().unwrap(), "poss a ?"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict=not-consequence"));
}

#[test]
fn trace_file_written_beside_kb() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "emu.kb", EMU);
    let o = plausible(&[
        "query",
        "--trace",
        kb.to_str().unwrap(),
        "def bird => ~emu ?",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let path = d.path().join("emu.kb.trace");
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("I_max"));
    assert!(body.contains("sat[1]"));
    assert!(stdout(&o).contains(&format!("trace_path={}", path.display())));
}

#[test]
fn improper_flag_changes_mode() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "d.kb", "def a => b @ 1/100\n");
    let o = plausible(&["query", kb.to_str().unwrap(), "def a => b ?"]);
    assert!(stdout(&o).contains("verdict=consequence"));
    let o = plausible(&["query", "--improper", kb.to_str().unwrap(), "def a => b ?"]);
    let out = stdout(&o);
    assert!(out.contains("verdict=not-consequence"));
    assert!(out.contains("mode=quantitative,improper"));
}

#[test]
fn theorem_queries() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "empty.kb", "");
    let o = plausible(&[
        "query",
        kb.to_str().unwrap(),
        "theorem def a => b and def b => c -> def a => c",
    ]);
    assert!(stdout(&o).contains("verdict=not-consequence"));
    let o = plausible(&[
        "query",
        kb.to_str().unwrap(),
        "theorem def c => a and def c => ~a -> nec ~c",
    ]);
    assert!(stdout(&o).contains("verdict=consequence"));
}

#[test]
fn dualize_prints_and_involutes() {
    let o = plausible(&["dualize", "def c => a and def c => b -> def c => a & b"]);
    assert_eq!(o.status.code(), Some(0));
    let dual = stdout(&o).trim().to_string();
    assert_eq!(dual, "(lik c ~> ~a | ~b) -> (lik c ~> ~a) or (lik c ~> ~b)");
    let back = stdout(&plausible(&["dualize", &dual])).trim().to_string();
    assert_eq!(back, "(def c => a) and (def c => b) -> (def c => a & b)");
    let o = plausible(&["dualize", "nec a -> poss a"]);
    assert_eq!(stdout(&o).trim(), "(nec ~a) -> (poss ~a)");
}

#[test]
fn dualize_needs_an_implication() {
    assert_eq!(plausible(&["dualize", "nec a"]).status.code(), Some(3));
}

#[test]
fn selftest_passes() {
    let o = plausible(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn output_is_deterministic() {
    let d = TempDir::new().unwrap();
    let kb = write(&d, "emu.kb", EMU);
    let a = stdout(&plausible(&[
        "query",
        "--oracle",
        kb.to_str().unwrap(),
        "def ~emu => bird ?",
    ]));
    let b = stdout(&plausible(&[
        "query",
        "--oracle",
        kb.to_str().unwrap(),
        "def ~emu => bird ?",
    ]));
    assert_eq!(a, b);
}
