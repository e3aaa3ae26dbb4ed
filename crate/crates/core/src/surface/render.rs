//! Canonical text output. Everything printed here parses back to an equal
//! value; parentheses are emitted only where precedence requires them.

use std::fmt;

use super::{KbDocument, Query, QueryKind};
use crate::modal::{Conditional, ModalAtom, Rational, Sentence};
use crate::propcore::Formula;

fn formula_prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(_) => 5,
        _ => 6,
    }
}

fn write_formula(out: &mut fmt::Formatter<'_>, f: &Formula, min: u8) -> fmt::Result {
    let p = formula_prec(f);
    if p < min {
        write!(out, "(")?;
    }
    match f {
        Formula::True => write!(out, "true")?,
        Formula::False => write!(out, "false")?,
        Formula::Atom(a) => write!(out, "{a}")?,
        Formula::Not(a) => {
            write!(out, "~")?;
            write_formula(out, a, 5)?;
        }
        Formula::And(a, b) => {
            write_formula(out, a, 4)?;
            write!(out, " & ")?;
            write_formula(out, b, 5)?;
        }
        Formula::Or(a, b) => {
            write_formula(out, a, 3)?;
            write!(out, " | ")?;
            write_formula(out, b, 4)?;
        }
        Formula::Implies(a, b) => {
            write_formula(out, a, 3)?;
            write!(out, " -> ")?;
            write_formula(out, b, 2)?;
        }
        Formula::Iff(a, b) => {
            write_formula(out, a, 1)?;
            write!(out, " <-> ")?;
            write_formula(out, b, 2)?;
        }
    }
    if p < min {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0)
    }
}

/// `p/q`, or a bare integer for 0 and 1.
pub fn render_rational(r: &Rational) -> String {
    r.to_string()
}

fn write_conditional(f: &mut fmt::Formatter<'_>, c: &Conditional, arrow: &str) -> fmt::Result {
    write!(f, "{} {arrow} {}", c.antecedent, c.consequent)?;
    if let Some(b) = &c.bound {
        write!(f, " @ {}", render_rational(b))?;
    }
    Ok(())
}

impl fmt::Display for ModalAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModalAtom::Necessity(x) => write!(f, "nec {x}"),
            ModalAtom::Possibility(x) => write!(f, "poss {x}"),
            ModalAtom::Default(c) => {
                write!(f, "def ")?;
                write_conditional(f, c, "=>")
            }
            ModalAtom::Likelihood(c, n) => {
                write!(f, "lik ")?;
                write_conditional(f, c, "~>")?;
                if *n != 1 {
                    write!(f, " ^{n}")?;
                }
                Ok(())
            }
        }
    }
}

fn sentence_prec(s: &Sentence) -> u8 {
    match s {
        Sentence::Iff(..) => 1,
        Sentence::Implies(..) => 2,
        Sentence::Or(..) => 3,
        Sentence::And(..) => 4,
        Sentence::Not(_) => 5,
        Sentence::Atom(_) => 6,
    }
}

/// Atoms inside a compound sentence are always parenthesised so that the
/// formula arguments cannot absorb a sentence-level arrow.
fn write_sentence(out: &mut fmt::Formatter<'_>, s: &Sentence, min: u8) -> fmt::Result {
    if let Sentence::Atom(m) = s {
        return if min > 0 {
            write!(out, "({m})")
        } else {
            write!(out, "{m}")
        };
    }
    let p = sentence_prec(s);
    if p < min {
        write!(out, "(")?;
    }
    match s {
        Sentence::Atom(_) => unreachable!(),
        Sentence::Not(a) => {
            write!(out, "not ")?;
            write_sentence(out, a, 5)?;
        }
        Sentence::And(a, b) => {
            write_sentence(out, a, 4)?;
            write!(out, " and ")?;
            write_sentence(out, b, 5)?;
        }
        Sentence::Or(a, b) => {
            write_sentence(out, a, 3)?;
            write!(out, " or ")?;
            write_sentence(out, b, 4)?;
        }
        Sentence::Implies(a, b) => {
            write_sentence(out, a, 3)?;
            write!(out, " -> ")?;
            write_sentence(out, b, 2)?;
        }
        Sentence::Iff(a, b) => {
            write_sentence(out, a, 1)?;
            write!(out, " <-> ")?;
            write_sentence(out, b, 2)?;
        }
    }
    if p < min {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sentence(f, self, 0)
    }
}

impl fmt::Display for KbDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{}", s.atom)?;
        }
        Ok(())
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            QueryKind::Consistent => write!(f, "consistent?")?,
            QueryKind::Theorem => write!(
                f,
                "theorem {}",
                self.theorem.as_ref().expect("theorem query")
            )?,
            _ => {
                for (i, g) in self.goals.iter().enumerate() {
                    if i > 0 {
                        write!(f, " or ")?;
                    }
                    write!(f, "{g} ?")?;
                }
            }
        }
        for (on, name) in [
            (self.flags.improper, "improper"),
            (self.flags.qualitative, "qualitative"),
            (self.flags.oracle, "oracle"),
        ] {
            if on {
                write!(f, " --{name}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_formula, parse_kb, parse_query, parse_sentence};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn formula_round_trip_spacing() {
        assert_eq!(
            parse_formula("emu->bird").unwrap().to_string(),
            "emu -> bird"
        );
    }

    #[test]
    fn minimal_parentheses() {
        for text in [
            "(a | b) & ~(c -> d)",
            "a -> b -> c",
            "(a -> b) -> c",
            "a | b & c",
        ] {
            assert_eq!(parse_formula(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn default_with_bound() {
        let m = ModalAtom::def(
            "a".into(),
            "b".into(),
            Some(Rational::new(1.into(), 3.into())),
        );
        assert_eq!(m.to_string(), "def a => b @ 1/3");
    }

    #[test]
    fn emu_file_round_trip() {
        let doc = parse_kb("nec emu -> bird\ndef emu => ~flies @ 1/100\ndef bird => flies @ 1/100")
            .unwrap();
        assert_eq!(parse_kb(&doc.to_string()).unwrap(), doc);
    }

    #[test]
    fn query_round_trip() {
        for text in [
            "consistent?",
            "def bird => ~emu ? --improper",
            "lik true ~> w1 ? or lik true ~> w2 ?",
            "theorem (def c => a) and (def c => ~a) -> (nec ~c) --qualitative",
        ] {
            let q = parse_query(text).unwrap();
            assert_eq!(q.to_string(), text);
        }
    }

    #[test]
    fn dual_row_renders_with_atom_parentheses() {
        let s = parse_sentence("lik c ~> a | b -> lik c ~> a or lik c ~> b").unwrap();
        assert_eq!(
            s.to_string(),
            "(lik c ~> a | b) -> (lik c ~> a) or (lik c ~> b)"
        );
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            4 => prop::sample::select(vec!["a", "b", "c", "x_1", "w10"]).prop_map(Formula::atom),
            1 => Just(Formula::True),
            1 => Just(Formula::False),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
            ]
        })
    }

    fn arb_bound() -> impl Strategy<Value = Option<Rational>> {
        prop_oneof![
            1 => Just(None),
            4 => (1u32..=50).prop_flat_map(|d| (0..=d, Just(d)))
                .prop_map(|(n, d)| Some(Rational::new(n.into(), d.into()))),
        ]
    }

    fn arb_atom() -> impl Strategy<Value = ModalAtom> {
        prop_oneof![
            arb_formula().prop_map(ModalAtom::Necessity),
            arb_formula().prop_map(ModalAtom::Possibility),
            (arb_formula(), arb_formula(), arb_bound())
                .prop_map(|(a, b, e)| ModalAtom::def(a, b, e)),
            (arb_formula(), arb_formula(), arb_bound(), 1u32..4)
                .prop_map(|(a, b, e, n)| { ModalAtom::Likelihood(Conditional::new(a, b, e), n) }),
        ]
    }

    fn arb_sentence() -> impl Strategy<Value = Sentence> {
        arb_atom()
            .prop_map(Sentence::Atom)
            .prop_recursive(3, 12, 2, |inner| {
                prop_oneof![
                    inner.clone().prop_map(Sentence::not),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Sentence::and(a, b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Sentence::or(a, b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Sentence::implies(a, b)),
                    (inner.clone(), inner)
                        .prop_map(|(a, b)| Sentence::Iff(Box::new(a), Box::new(b))),
                ]
            })
    }

    proptest! {
        #[test]
        fn formulas_round_trip(f in arb_formula()) {
            prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }

        #[test]
        fn documents_round_trip(atoms in prop::collection::vec(arb_atom(), 0..8)) {
            let doc = KbDocument::from_atoms(atoms);
            prop_assert_eq!(parse_kb(&doc.to_string()).unwrap(), doc);
        }

        #[test]
        fn sentences_round_trip(s in arb_sentence()) {
            prop_assert_eq!(parse_sentence(&s.to_string()).unwrap(), s);
        }
    }
}
