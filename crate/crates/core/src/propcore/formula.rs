use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::PropError;

/// Propositional formula over named atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; `True` for an empty iterator.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `False` for an empty iterator.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    /// Negation with double negations, constants and De Morgan pushed one
    /// level through `∧`/`∨`. Involutive on formulas already in that shape.
    pub fn negated(&self) -> Formula {
        match self {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(inner) => (**inner).clone(),
            Formula::And(a, b) => Formula::or(a.negated(), b.negated()),
            Formula::Or(a, b) => Formula::and(a.negated(), b.negated()),
            other => Formula::not(other.clone()),
        }
    }

    /// Negation normal form over `∧`, `∨`, `¬`; implications and
    /// biconditionals are expanded.
    pub fn nnf(&self) -> Formula {
        self.nnf_with(true)
    }

    fn nnf_with(&self, positive: bool) -> Formula {
        match (self, positive) {
            (Formula::True, true) | (Formula::False, false) => Formula::True,
            (Formula::True, false) | (Formula::False, true) => Formula::False,
            (Formula::Atom(_), true) => self.clone(),
            (Formula::Atom(_), false) => Formula::not(self.clone()),
            (Formula::Not(a), p) => a.nnf_with(!p),
            (Formula::And(a, b), true) => Formula::and(a.nnf_with(true), b.nnf_with(true)),
            (Formula::And(a, b), false) => Formula::or(a.nnf_with(false), b.nnf_with(false)),
            (Formula::Or(a, b), true) => Formula::or(a.nnf_with(true), b.nnf_with(true)),
            (Formula::Or(a, b), false) => Formula::and(a.nnf_with(false), b.nnf_with(false)),
            (Formula::Implies(a, b), true) => Formula::or(a.nnf_with(false), b.nnf_with(true)),
            (Formula::Implies(a, b), false) => Formula::and(a.nnf_with(true), b.nnf_with(false)),
            (Formula::Iff(a, b), true) => Formula::or(
                Formula::and(a.nnf_with(true), b.nnf_with(true)),
                Formula::and(a.nnf_with(false), b.nnf_with(false)),
            ),
            // De Morgan of the positive form, so that negating an NNF and
            // normalising again lands on the same shape.
            (Formula::Iff(a, b), false) => Formula::and(
                Formula::or(a.nnf_with(false), b.nnf_with(false)),
                Formula::or(a.nnf_with(true), b.nnf_with(true)),
            ),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Not(a) => a.collect_atoms(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Truth-functional evaluation. Fails if an atom is missing from `a`.
    pub fn eval(&self, a: &Assignment) -> Result<bool, PropError> {
        Ok(match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(name) => a
                .get(name)
                .ok_or_else(|| PropError::Vocabulary(name.clone()))?,
            Formula::Not(f) => !f.eval(a)?,
            Formula::And(x, y) => x.eval(a)? && y.eval(a)?,
            Formula::Or(x, y) => x.eval(a)? || y.eval(a)?,
            Formula::Implies(x, y) => !x.eval(a)? || y.eval(a)?,
            Formula::Iff(x, y) => x.eval(a)? == y.eval(a)?,
        })
    }

    /// Evaluation against a lookup closure; used on hot paths where building
    /// an [`Assignment`] per world would be wasteful.
    pub fn eval_with<F: Fn(&str) -> Option<bool> + Copy>(&self, lookup: F) -> Option<bool> {
        Some(match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(name) => lookup(name)?,
            Formula::Not(f) => !f.eval_with(lookup)?,
            Formula::And(x, y) => x.eval_with(lookup)? && y.eval_with(lookup)?,
            Formula::Or(x, y) => x.eval_with(lookup)? || y.eval_with(lookup)?,
            Formula::Implies(x, y) => !x.eval_with(lookup)? || y.eval_with(lookup)?,
            Formula::Iff(x, y) => x.eval_with(lookup)? == y.eval_with(lookup)?,
        })
    }
}

impl From<&str> for Formula {
    fn from(name: &str) -> Self {
        Formula::atom(name)
    }
}

/// Total map from atom names to truth values over some vocabulary.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<String, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, atom: impl Into<String>, value: bool) {
        self.values.insert(atom.into(), value);
    }

    pub fn with(mut self, atom: impl Into<String>, value: bool) -> Self {
        self.set(atom, value);
        self
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.values.get(atom).copied()
    }

    pub fn covers(&self, f: &Formula) -> bool {
        f.atoms().iter().all(|a| self.values.contains_key(a))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All 2^n assignments over `vocab`, in binary counting order with the
    /// first atom as the most significant bit.
    pub fn enumerate(vocab: &[String]) -> impl Iterator<Item = Assignment> + '_ {
        let n = vocab.len();
        (0u64..(1u64 << n)).map(move |bits| {
            let mut a = Assignment::new();
            for (i, name) in vocab.iter().enumerate() {
                a.set(name.clone(), bits & (1 << (n - 1 - i)) != 0);
            }
            a
        })
    }
}

impl<S: Into<String>> FromIterator<(S, bool)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (S, bool)>>(iter: T) -> Self {
        let mut a = Assignment::new();
        for (k, v) in iter {
            a.set(k, v);
        }
        a
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(k, v)| if *v { k.clone() } else { format!("~{k}") })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradiction_is_false_everywhere() {
        let f = Formula::and("a".into(), Formula::not("a".into()));
        for v in [true, false] {
            assert!(!f.eval(&Assignment::new().with("a", v)).unwrap());
        }
    }

    #[test]
    fn material_conditional_row() {
        let f = Formula::implies(Formula::True, "b".into());
        assert!(!f.eval(&Assignment::new().with("b", false)).unwrap());
    }

    #[test]
    fn modus_ponens_row() {
        let f = Formula::implies("emu".into(), "bird".into());
        let a = Assignment::new().with("emu", true).with("bird", true);
        assert!(f.eval(&a).unwrap());
    }

    #[test]
    fn missing_atom_is_a_vocabulary_error() {
        let f = Formula::or("a".into(), "b".into());
        let err = f.eval(&Assignment::new().with("a", false)).unwrap_err();
        assert_eq!(err, PropError::Vocabulary("b".into()));
    }

    #[test]
    fn negated_is_involutive_on_nnf() {
        let f = Formula::and("a".into(), Formula::not("b".into()));
        assert_eq!(f.negated().negated(), f);
    }

    #[test]
    fn enumerate_covers_all_worlds() {
        let vocab = vec!["a".to_string(), "b".to_string()];
        let worlds: Vec<_> = Assignment::enumerate(&vocab).collect();
        assert_eq!(worlds.len(), 4);
        assert_eq!(worlds[0].get("a"), Some(false));
        assert_eq!(worlds[3].get("b"), Some(true));
    }
}
