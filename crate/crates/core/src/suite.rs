//! Built-in checks: the default schemata and their likelihood duals, the
//! independence sentences, and the emu and lottery scenarios.

use crate::kernel::{
    default_consequence, symbolic::lottery_bound, theorem_check, Answer, Bound, Options, Verdict,
};
use crate::modal::{dualize, to_clausal, Rational, Sentence};
use crate::oracle::{oracle_valid, OracleConfig};
use crate::propcore::Formula;
use crate::surface::{parse_formula, parse_kb, parse_sentence};

/// Default schemata, unsubscripted.
pub const DEFAULT_ROWS: [&str; 4] = [
    "def c => a and def c => ~a -> nec ~c",
    "def c => a and def c => b -> def c => a & b",
    "def c => a -> (def c & a => b -> def c => b)",
    "def a | b => c -> def a => c or def b => c",
];

/// The same schemata with premises at 1/100 and the propagated conclusion
/// error where one is needed.
pub const QUANTITATIVE_ROWS: [&str; 4] = [
    "def c => a @ 1/100 and def c => ~a @ 1/100 -> nec ~c",
    "def c => a @ 1/100 and def c => b @ 1/100 -> def c => a & b @ 1/50",
    "def c => a @ 1/100 -> (def c & a => b @ 1/100 -> def c => b @ 1/50)",
    "def a | b => c @ 1/100 -> def a => c @ 1/50 or def b => c @ 1/50",
];

/// Pure likelihood form of the fourth dual.
pub const DUAL_ROW_FOUR: &str = "lik a ~> c and lik b ~> c -> lik a | b ~> c";

pub const INDEPENDENCE: &str =
    "((def b => c) -> (def a & b => c)) -> ((def a => b) and (def b => c) -> def a => c)";
pub const TRANSITIVITY: &str = "def a => b and def b => c -> def a => c";
pub const STRENGTHENING: &str = "def b => c -> def a & b => c";

pub const EMU_KB: &str = "\
nec emu -> bird
def bird => fly @ 1/100
def emu => ~fly @ 1/100
";

/// `n` tickets, each a loser by default with error `eps`.
pub fn lottery_kb(n: usize, eps: &str) -> String {
    (1..=n)
        .map(|i| format!("def true => ~w{i} @ {eps}\n"))
        .collect()
}

/// `~w1 & … & ~wn`.
pub fn lottery_goal(n: usize) -> Formula {
    Formula::conjunction((1..=n).map(|i| Formula::not(Formula::atom(format!("w{i}")))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn item(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> SuiteItem {
    SuiteItem {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn sentence(text: &str) -> Sentence {
    parse_sentence(text).expect("built-in sentence parses")
}

fn describe(v: &Verdict) -> String {
    let mut s = v.answer.to_string();
    if let Some(b) = &v.bound {
        s.push_str(&format!(", {b}"));
    }
    if v.oracle_used {
        s.push_str(", oracle");
    }
    if let Some(r) = &v.reason {
        s.push_str(&format!(" ({r})"));
    }
    s
}

fn expect_theorem(name: &str, text: &str, want: Answer, opts: &Options) -> SuiteItem {
    match theorem_check(&sentence(text), opts) {
        Ok(v) => item(name, v.answer == want, describe(&v)),
        Err(e) => item(name, false, e.to_string()),
    }
}

fn expect_delta(name: &str, kb: &str, c: &Formula, b: &Formula, delta: Rational) -> SuiteItem {
    let kb = to_clausal(&parse_kb(kb).expect("built-in kb parses").to_conjunction())
        .expect("homogeneous");
    match default_consequence(&kb, c, b, &Options::default()) {
        Ok(v) => {
            let ok = v.answer == Answer::Consequence && v.bound == Some(Bound::Delta(delta));
            item(name, ok, describe(&v))
        }
        Err(e) => item(name, false, e.to_string()),
    }
}

pub fn run_suite() -> Vec<SuiteItem> {
    let opts = Options::default();
    let mut out = Vec::new();
    for (i, row) in DEFAULT_ROWS.iter().enumerate() {
        out.push(expect_theorem(
            &format!("row {} (qualitative)", i + 1),
            row,
            Answer::Consequence,
            &opts,
        ));
    }
    for (i, row) in QUANTITATIVE_ROWS.iter().enumerate() {
        out.push(expect_theorem(
            &format!("row {} (quantitative)", i + 1),
            row,
            Answer::Consequence,
            &opts,
        ));
        let name = format!("dual row {}", i + 1);
        let dual = match dualize(&sentence(row)) {
            Ok(d) => d,
            Err(e) => {
                out.push(item(name, false, e.to_string()));
                continue;
            }
        };
        let cfg = OracleConfig {
            max_atoms: 3,
            ..OracleConfig::default()
        };
        out.push(match oracle_valid(&dual, &cfg) {
            Ok(e) => item(
                name,
                e.holds,
                format!(
                    "{dual}: {}",
                    if e.holds {
                        "valid"
                    } else {
                        "countermodel found"
                    }
                ),
            ),
            Err(e) => item(name, false, e.to_string()),
        });
    }
    out.push(expect_theorem(
        "dual row 4 (kernel)",
        DUAL_ROW_FOUR,
        Answer::Consequence,
        &opts,
    ));
    out.push(expect_theorem(
        "independence sentence accepted",
        INDEPENDENCE,
        Answer::Consequence,
        &opts,
    ));
    out.push(expect_theorem(
        "transitivity rejected",
        TRANSITIVITY,
        Answer::NotConsequence,
        &opts,
    ));
    out.push(expect_theorem(
        "antecedent strengthening rejected",
        STRENGTHENING,
        Answer::NotConsequence,
        &opts,
    ));

    let f = |s: &str| parse_formula(s).expect("built-in formula parses");
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    out.push(expect_delta(
        "emu: birds are typically not emus",
        EMU_KB,
        &f("bird"),
        &f("~emu"),
        r(1, 50),
    ));
    out.push(expect_delta(
        "emu: things are typically not emus",
        EMU_KB,
        &Formula::True,
        &f("~emu"),
        r(1, 50),
    ));
    out.push(expect_delta(
        "lottery of 10",
        &lottery_kb(10, "1/100"),
        &Formula::True,
        &lottery_goal(10),
        r(1, 10),
    ));
    let b = lottery_bound(1_000_000);
    let eps = r(1, 1_000_000);
    out.push(item(
        "lottery of 1000000 is vacuous",
        b.vacuous_at(&eps),
        format!("delta = {b} = {} at eps = {eps}", b.at(&eps)),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_item_passes() {
        for i in run_suite() {
            assert!(i.passed, "{}: {}", i.name, i.detail);
        }
    }

    #[test]
    fn duals_have_the_expected_shape() {
        let d = dualize(&sentence(DEFAULT_ROWS[1])).unwrap();
        assert_eq!(
            d.to_string(),
            "(lik c ~> ~a | ~b) -> (lik c ~> ~a) or (lik c ~> ~b)"
        );
    }
}
