//! Sentences over necessity, possibility, default and likelihood atoms.
//!
//! Defaults and likelihoods are improper: both hold whenever the antecedent
//! has probability zero. Negation therefore carries an explicit possibility
//! guard (see [`negate_modal`]).

mod clausal;
mod normal;

use std::collections::BTreeSet;

use num_rational::BigRational;
use thiserror::Error;

use crate::propcore::Formula;

pub use clausal::{
    to_clausal, validate_bounds, validate_bounds_with_count, BoundViolation, ClausalKb,
    ConditionalKind,
};
pub use normal::{dnf_split, dualize, negate_modal, normalize, sequents, Literal, Sequent};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModalError {
    #[error("defaults and likelihoods cannot share one clausal form")]
    MixedKind,
    #[error("only an implication can be dualized")]
    NotAnImplication,
}

/// A conditional `A ⇒ B` or `A ≈ B`; `bound` is `None` in qualitative
/// sentences, where subscripts are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conditional {
    pub antecedent: Formula,
    pub consequent: Formula,
    pub bound: Option<Rational>,
}

impl Conditional {
    pub fn new(antecedent: Formula, consequent: Formula, bound: Option<Rational>) -> Self {
        Conditional {
            antecedent,
            consequent,
            bound,
        }
    }

    /// The material counterpart `A → B`.
    pub fn material(&self) -> Formula {
        Formula::implies(self.antecedent.clone(), self.consequent.clone())
    }

    pub fn without_bound(&self) -> Self {
        Conditional {
            bound: None,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalAtom {
    Necessity(Formula),
    Possibility(Formula),
    /// `A ⇒_ε B`: Pr(B|A) ≥ 1 − ε, or Pr(A) = 0.
    Default(Conditional),
    /// `A ≈_e^n B`: Pr(B|A) > e, or Pr(A) = 0.
    Likelihood(Conditional, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomKind {
    Necessity,
    Possibility,
    Default,
    Likelihood,
}

impl ModalAtom {
    pub fn def(a: Formula, b: Formula, bound: Option<Rational>) -> Self {
        ModalAtom::Default(Conditional::new(a, b, bound))
    }

    pub fn lik(a: Formula, b: Formula, bound: Option<Rational>) -> Self {
        ModalAtom::Likelihood(Conditional::new(a, b, bound), 1)
    }

    pub fn kind(&self) -> AtomKind {
        match self {
            ModalAtom::Necessity(_) => AtomKind::Necessity,
            ModalAtom::Possibility(_) => AtomKind::Possibility,
            ModalAtom::Default(_) => AtomKind::Default,
            ModalAtom::Likelihood(..) => AtomKind::Likelihood,
        }
    }

    pub fn conditional(&self) -> Option<&Conditional> {
        match self {
            ModalAtom::Default(c) | ModalAtom::Likelihood(c, _) => Some(c),
            _ => None,
        }
    }

    pub fn bound(&self) -> Option<&Rational> {
        self.conditional().and_then(|c| c.bound.as_ref())
    }

    pub fn is_conditional(&self) -> bool {
        self.conditional().is_some()
    }

    /// Same atom with any subscript replaced.
    pub fn with_bound(&self, bound: Option<Rational>) -> Self {
        match self {
            ModalAtom::Default(c) => ModalAtom::Default(Conditional { bound, ..c.clone() }),
            ModalAtom::Likelihood(c, n) => {
                ModalAtom::Likelihood(Conditional { bound, ..c.clone() }, *n)
            }
            other => other.clone(),
        }
    }

    pub fn formulas(&self) -> Vec<&Formula> {
        match self {
            ModalAtom::Necessity(f) | ModalAtom::Possibility(f) => vec![f],
            ModalAtom::Default(c) | ModalAtom::Likelihood(c, _) => {
                vec![&c.antecedent, &c.consequent]
            }
        }
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        for f in self.formulas() {
            f.collect_atoms(out);
        }
    }
}

/// Boolean combination of modal atoms. No nesting of modal operators is
/// representable: modal arguments are plain formulas.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Sentence {
    Atom(ModalAtom),
    Not(Box<Sentence>),
    And(Box<Sentence>, Box<Sentence>),
    Or(Box<Sentence>, Box<Sentence>),
    Implies(Box<Sentence>, Box<Sentence>),
    Iff(Box<Sentence>, Box<Sentence>),
}

impl Sentence {
    #[allow(clippy::should_implement_trait)]
    pub fn not(s: Sentence) -> Self {
        Sentence::Not(Box::new(s))
    }

    pub fn and(a: Sentence, b: Sentence) -> Self {
        Sentence::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Sentence, b: Sentence) -> Self {
        Sentence::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Sentence, b: Sentence) -> Self {
        Sentence::Implies(Box::new(a), Box::new(b))
    }

    /// Conjunction of the given atoms; `None` if empty.
    pub fn conjunction<I: IntoIterator<Item = ModalAtom>>(atoms: I) -> Option<Self> {
        atoms.into_iter().map(Sentence::Atom).reduce(Sentence::and)
    }

    pub fn disjunction<I: IntoIterator<Item = ModalAtom>>(atoms: I) -> Option<Self> {
        atoms.into_iter().map(Sentence::Atom).reduce(Sentence::or)
    }

    pub fn modal_atoms(&self) -> Vec<&ModalAtom> {
        let mut out = Vec::new();
        self.walk(&mut |m| out.push(m));
        out
    }

    fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a ModalAtom)) {
        match self {
            Sentence::Atom(m) => f(m),
            Sentence::Not(s) => s.walk(f),
            Sentence::And(a, b)
            | Sentence::Or(a, b)
            | Sentence::Implies(a, b)
            | Sentence::Iff(a, b) => {
                a.walk(f);
                b.walk(f);
            }
        }
    }

    /// Propositional atoms mentioned anywhere in the sentence.
    pub fn vocabulary(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for m in self.modal_atoms() {
            m.collect_atoms(&mut out);
        }
        out
    }

    /// Whether every conditional carries a numeric subscript.
    pub fn is_quantitative(&self) -> bool {
        self.modal_atoms()
            .iter()
            .all(|m| !m.is_conditional() || m.bound().is_some())
    }
}

impl From<ModalAtom> for Sentence {
    fn from(m: ModalAtom) -> Self {
        Sentence::Atom(m)
    }
}

/// Flat conjunction of modal atoms, possibly of mixed kinds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ModalConjunction(pub Vec<ModalAtom>);

impl ModalConjunction {
    pub fn new(atoms: Vec<ModalAtom>) -> Self {
        ModalConjunction(atoms)
    }

    pub fn atoms(&self) -> &[ModalAtom] {
        &self.0
    }

    pub fn push(&mut self, m: ModalAtom) {
        self.0.push(m);
    }

    pub fn extend<I: IntoIterator<Item = ModalAtom>>(&mut self, it: I) {
        self.0.extend(it);
    }

    pub fn has_kind(&self, kind: AtomKind) -> bool {
        self.0.iter().any(|m| m.kind() == kind)
    }

    pub fn is_mixed(&self) -> bool {
        self.has_kind(AtomKind::Default) && self.has_kind(AtomKind::Likelihood)
    }

    pub fn vocabulary(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for m in &self.0 {
            m.collect_atoms(&mut out);
        }
        out
    }

    pub fn to_sentence(&self) -> Option<Sentence> {
        Sentence::conjunction(self.0.iter().cloned())
    }
}

impl FromIterator<ModalAtom> for ModalConjunction {
    fn from_iter<T: IntoIterator<Item = ModalAtom>>(iter: T) -> Self {
        ModalConjunction(iter.into_iter().collect())
    }
}
