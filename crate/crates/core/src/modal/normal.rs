use super::{Conditional, ModalAtom, ModalConjunction, ModalError, Sentence};

/// Exact semantic complement of a modal atom.
///
/// Because both conditionals hold vacuously on a zero-probability
/// antecedent, the complement of a conditional needs `◇A`:
/// `¬(A ⇒_ε B) = ◇A ∧ (A ≈_ε ¬B)` and `¬(A ≈_e B) = ◇A ∧ (A ⇒_e ¬B)`.
pub fn negate_modal(m: &ModalAtom) -> ModalConjunction {
    match m {
        ModalAtom::Necessity(f) => ModalConjunction(vec![ModalAtom::Possibility(f.negated())]),
        ModalAtom::Possibility(f) => ModalConjunction(vec![ModalAtom::Necessity(f.negated())]),
        ModalAtom::Default(c) => ModalConjunction(vec![
            ModalAtom::Possibility(c.antecedent.clone()),
            ModalAtom::Likelihood(flip(c), 1),
        ]),
        ModalAtom::Likelihood(c, _) => ModalConjunction(vec![
            ModalAtom::Possibility(c.antecedent.clone()),
            ModalAtom::Default(flip(c)),
        ]),
    }
}

fn flip(c: &Conditional) -> Conditional {
    Conditional::new(
        c.antecedent.clone(),
        c.consequent.negated(),
        c.bound.clone(),
    )
}

/// The syntactic dual used by [`dualize`]: no possibility guard.
fn dual_atom(m: &ModalAtom) -> ModalAtom {
    match m {
        ModalAtom::Necessity(f) => ModalAtom::Possibility(f.negated()),
        ModalAtom::Possibility(f) => ModalAtom::Necessity(f.negated()),
        ModalAtom::Default(c) => ModalAtom::Likelihood(flip(c), 1),
        ModalAtom::Likelihood(c, _) => ModalAtom::Default(flip(c)),
    }
}

/// A modal atom or its negation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub atom: ModalAtom,
    pub positive: bool,
}

type Dnf = Vec<Vec<Literal>>;

fn product(left: Dnf, right: Dnf) -> Dnf {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in &left {
        for r in &right {
            let mut conj = l.clone();
            for lit in r {
                if !conj.contains(lit) {
                    conj.push(lit.clone());
                }
            }
            if !out.contains(&conj) {
                out.push(conj);
            }
        }
    }
    out
}

fn union(mut left: Dnf, right: Dnf) -> Dnf {
    for conj in right {
        if !left.contains(&conj) {
            left.push(conj);
        }
    }
    left
}

fn literal_dnf(s: &Sentence, positive: bool) -> Dnf {
    match s {
        Sentence::Atom(m) => vec![vec![Literal {
            atom: m.clone(),
            positive,
        }]],
        Sentence::Not(a) => literal_dnf(a, !positive),
        Sentence::And(a, b) if positive => product(literal_dnf(a, true), literal_dnf(b, true)),
        Sentence::And(a, b) => union(literal_dnf(a, false), literal_dnf(b, false)),
        Sentence::Or(a, b) if positive => union(literal_dnf(a, true), literal_dnf(b, true)),
        Sentence::Or(a, b) => product(literal_dnf(a, false), literal_dnf(b, false)),
        Sentence::Implies(a, b) if positive => union(literal_dnf(a, false), literal_dnf(b, true)),
        Sentence::Implies(a, b) => product(literal_dnf(a, true), literal_dnf(b, false)),
        Sentence::Iff(a, b) => {
            let same = product(literal_dnf(a, true), literal_dnf(b, positive));
            let diff = product(literal_dnf(a, false), literal_dnf(b, !positive));
            union(same, diff)
        }
    }
}

/// Disjunctive normal form with every negative literal replaced by its
/// exact complement, so each disjunct is a flat conjunction of atoms.
pub fn dnf_split(s: &Sentence) -> Vec<ModalConjunction> {
    let mut out: Vec<ModalConjunction> = Vec::new();
    for conj in literal_dnf(s, true) {
        let mut atoms = Vec::new();
        for lit in conj {
            let expanded = if lit.positive {
                vec![lit.atom]
            } else {
                negate_modal(&lit.atom).0
            };
            for m in expanded {
                if !atoms.contains(&m) {
                    atoms.push(m);
                }
            }
        }
        let conj = ModalConjunction(atoms);
        if !out.contains(&conj) {
            out.push(conj);
        }
    }
    out
}

/// One proof obligation: the premises entail the disjunction of the goals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequent {
    pub premises: ModalConjunction,
    pub goals: Vec<ModalAtom>,
}

/// Splits validity of `s` into sequents: `s` is valid iff every returned
/// sequent holds. Obtained from the DNF of `¬s` without expanding negated
/// atoms, which become goals.
pub fn sequents(s: &Sentence) -> Vec<Sequent> {
    literal_dnf(s, false)
        .into_iter()
        .map(|conj| {
            let mut premises = ModalConjunction::default();
            let mut goals = Vec::new();
            for lit in conj {
                if lit.positive {
                    premises.push(lit.atom);
                } else {
                    goals.push(lit.atom);
                }
            }
            Sequent { premises, goals }
        })
        .collect()
}

/// Negation pushed to the atoms, where it is absorbed by the dual operator.
fn push_negation(s: &Sentence) -> Sentence {
    match s {
        Sentence::Atom(m) => Sentence::Atom(dual_atom(m)),
        Sentence::Not(a) => (**a).clone(),
        Sentence::And(a, b) => Sentence::or(push_negation(a), push_negation(b)),
        Sentence::Or(a, b) => Sentence::and(push_negation(a), push_negation(b)),
        Sentence::Implies(a, b) => Sentence::and((**a).clone(), push_negation(b)),
        Sentence::Iff(a, b) => Sentence::Iff(a.clone(), Box::new(push_negation(b))),
    }
}

/// Dual of an implication `P → Q`: the contrapositive `¬Q → ¬P` with each
/// negated atom replaced by its syntactic dual (`¬□A` by `◇¬A`,
/// `¬(A ⇒ B)` by `A ≈ ¬B`, and back). Subscripts are kept.
pub fn dualize(s: &Sentence) -> Result<Sentence, ModalError> {
    match s {
        Sentence::Implies(p, q) => Ok(Sentence::implies(push_negation(q), push_negation(p))),
        _ => Err(ModalError::NotAnImplication),
    }
}

fn normalize_atom(m: &ModalAtom) -> ModalAtom {
    match m {
        ModalAtom::Necessity(f) => ModalAtom::Necessity(f.nnf()),
        ModalAtom::Possibility(f) => ModalAtom::Possibility(f.nnf()),
        ModalAtom::Default(c) => ModalAtom::Default(Conditional::new(
            c.antecedent.nnf(),
            c.consequent.nnf(),
            c.bound.clone(),
        )),
        ModalAtom::Likelihood(c, n) => ModalAtom::Likelihood(
            Conditional::new(c.antecedent.nnf(), c.consequent.nnf(), c.bound.clone()),
            *n,
        ),
    }
}

/// Canonical form for comparing dual sentences: implications expanded,
/// negations absorbed into dual atoms, modal arguments in NNF.
pub fn normalize(s: &Sentence) -> Sentence {
    match s {
        Sentence::Atom(m) => Sentence::Atom(normalize_atom(m)),
        Sentence::Not(a) => normalize(&push_negation(&normalize(a))),
        Sentence::And(a, b) => Sentence::and(normalize(a), normalize(b)),
        Sentence::Or(a, b) => Sentence::or(normalize(a), normalize(b)),
        Sentence::Implies(a, b) => {
            Sentence::or(normalize(&push_negation(&normalize(a))), normalize(b))
        }
        Sentence::Iff(a, b) => Sentence::Iff(Box::new(normalize(a)), Box::new(normalize(b))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propcore::Formula;
    use crate::surface::parse_sentence;

    fn s(text: &str) -> Sentence {
        parse_sentence(text).unwrap()
    }

    fn atom(text: &str) -> ModalAtom {
        match s(text) {
            Sentence::Atom(m) => m,
            other => panic!("not an atom: {other:?}"),
        }
    }

    #[test]
    fn negating_necessity_gives_possibility_of_complement() {
        assert_eq!(
            negate_modal(&atom("nec a")).0,
            vec![ModalAtom::Possibility(Formula::not("a".into()))]
        );
    }

    #[test]
    fn negating_default_adds_possibility_guard() {
        let neg = negate_modal(&atom("def bird => flies @ 1/100"));
        assert_eq!(
            neg.0,
            vec![atom("poss bird"), atom("lik bird ~> ~flies @ 1/100")]
        );
    }

    #[test]
    fn negating_likelihood_adds_possibility_guard() {
        let neg = negate_modal(&atom("lik a ~> b @ 1/2"));
        assert_eq!(neg.0, vec![atom("poss a"), atom("def a => ~b @ 1/2")]);
    }

    #[test]
    fn antecedent_strengthening_splits_into_two_disjuncts() {
        let parts = dnf_split(&s("def b => c -> def a & b => c"));
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, vec![atom("poss b"), atom("lik b ~> ~c")]);
        assert_eq!(parts[1].0, vec![atom("def a & b => c")]);
    }

    #[test]
    fn single_atom_and_negated_possibility() {
        assert_eq!(
            dnf_split(&s("nec a")),
            vec![ModalConjunction(vec![atom("nec a")])]
        );
        assert_eq!(
            dnf_split(&s("not poss a")),
            vec![ModalConjunction(vec![atom("nec ~a")])]
        );
    }

    #[test]
    fn sequents_of_curried_implication() {
        let seqs = sequents(&s("def c => a -> def c & a => b -> def c => b"));
        assert_eq!(seqs.len(), 1);
        assert_eq!(
            seqs[0].premises.0,
            vec![atom("def c => a"), atom("def c & a => b")]
        );
        assert_eq!(seqs[0].goals, vec![atom("def c => b")]);
    }

    #[test]
    fn dual_of_conjunction_rule() {
        let d = dualize(&s("def c => a and def c => b -> def c => a & b")).unwrap();
        assert_eq!(d, s("lik c ~> ~a | ~b -> lik c ~> ~a or lik c ~> ~b"));
    }

    #[test]
    fn dual_of_contradiction_rule() {
        let d = dualize(&s("def c => a and def c => ~a -> nec ~c")).unwrap();
        assert_eq!(d, s("poss c -> lik c ~> ~a or lik c ~> a"));
    }

    #[test]
    fn dualize_is_an_involution_up_to_normalization() {
        for text in [
            "def c => a and def c => ~a -> nec ~c",
            "def c => a -> def c & a => b -> def c => b",
            "def a | b => c -> def a => c or def b => c",
            "nec a -> poss a",
            "lik a ~> c @ 1/2 and not nec (b -> c) -> lik a | b ~> c @ 1/3",
        ] {
            let x = s(text);
            let dd = dualize(&dualize(&x).unwrap()).unwrap();
            assert_eq!(normalize(&dd), normalize(&x), "{text}");
        }
    }

    #[test]
    fn dualize_rejects_non_implications() {
        assert_eq!(dualize(&s("nec a")), Err(ModalError::NotAnImplication));
    }
}
