//! Propositional formulas, satisfiability and entailment.

mod cnf;
mod formula;
mod sat;

use std::collections::BTreeSet;

use thiserror::Error;

pub use cnf::{to_cnf, Clause, Cnf, CnfBuilder, Lit, Var, VarInfo};
pub use formula::{Assignment, Formula};
pub use sat::Solver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropError {
    #[error("atom `{0}` is not covered by the assignment")]
    Vocabulary(String),
}

/// Decides whether the conjunction of `fs` has a model. On success the
/// witness covers exactly the atoms occurring in `fs`.
pub fn satisfiable(fs: &[Formula]) -> Option<Assignment> {
    let mut atoms = BTreeSet::new();
    for f in fs {
        f.collect_atoms(&mut atoms);
    }
    let mut builder = CnfBuilder::new();
    builder.declare_atoms(&atoms);
    for f in fs {
        builder.assert(f);
    }
    let cnf = builder.finish();
    sat::solve(&cnf).map(|model| cnf.project(&model))
}

pub fn is_satisfiable(fs: &[Formula]) -> bool {
    satisfiable(fs).is_some()
}

/// `premises ⊨ goal`, i.e. `premises ∧ ¬goal` has no model.
pub fn entails(premises: &[Formula], goal: &Formula) -> bool {
    let mut fs = premises.to_vec();
    fs.push(Formula::not(goal.clone()));
    !is_satisfiable(&fs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        crate::surface::parse_formula(s).unwrap()
    }

    #[test]
    fn atom_and_negation_unsat() {
        assert!(satisfiable(&[f("a"), f("~a")]).is_none());
    }

    #[test]
    fn flightless_emu_chain_unsat() {
        let fs = [f("emu -> bird"), f("emu"), f("bird -> flies"), f("~flies")];
        assert!(satisfiable(&fs).is_none());
    }

    #[test]
    fn witness_has_bird() {
        let fs = [f("emu -> bird"), f("bird")];
        let w = satisfiable(&fs).unwrap();
        assert_eq!(w.get("bird"), Some(true));
        for x in &fs {
            assert!(x.eval(&w).unwrap());
        }
    }

    #[test]
    fn witness_omits_aux_variables() {
        let w = satisfiable(&[f("(a | b) & (c <-> ~a)")]).unwrap();
        let names: Vec<_> = w.iter().map(|(k, _)| k.to_string()).collect();
        assert_eq!(names, vec!["a", "b", "c"]);
    }

    #[test]
    fn entailment_examples() {
        assert!(entails(&[], &f("a | ~a")));
        assert!(entails(&[f("~emu"), f("~bird")], &f("~emu")));
        assert!(!entails(&[f("a")], &f("b")));
    }
}
