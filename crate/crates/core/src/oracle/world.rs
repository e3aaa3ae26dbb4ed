use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::OracleError;
use crate::modal::{ModalAtom, Rational};
use crate::propcore::{Assignment, Formula};

/// Truth value of `f` in each world of `vocab`. World `w` assigns atom `i`
/// the bit `n-1-i` of `w`, matching [`Assignment::enumerate`].
pub fn truth_table(f: &Formula, vocab: &[String]) -> Result<Vec<bool>, OracleError> {
    let index: HashMap<&str, usize> = vocab
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i))
        .collect();
    if let Some(missing) = f
        .atoms()
        .into_iter()
        .find(|a| !index.contains_key(a.as_str()))
    {
        return Err(OracleError::Vocabulary(missing));
    }
    let n = vocab.len();
    Ok((0..1usize << n)
        .map(|w| {
            let index = &index;
            f.eval_with(move |name| index.get(name).map(|&i| w & (1 << (n - 1 - i)) != 0))
                .expect("vocabulary checked")
        })
        .collect())
}

/// An explicit probability for every world over a vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldDistribution {
    vocab: Vec<String>,
    probs: Vec<Rational>,
}

impl WorldDistribution {
    /// Fails unless there are `2^n` non-negative entries summing to exactly 1.
    pub fn new(vocab: Vec<String>, probs: Vec<Rational>) -> Result<Self, OracleError> {
        if probs.len() != 1usize << vocab.len() {
            return Err(OracleError::NotADistribution(format!(
                "{} probabilities for {} worlds",
                probs.len(),
                1usize << vocab.len()
            )));
        }
        if probs.iter().any(Signed::is_negative) {
            return Err(OracleError::NotADistribution("negative probability".into()));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(OracleError::NotADistribution(format!("total mass {total}")));
        }
        Ok(WorldDistribution { vocab, probs })
    }

    /// Builds a distribution from `(world, probability)` pairs; unlisted
    /// worlds get zero.
    pub fn from_worlds<I>(vocab: Vec<String>, worlds: I) -> Result<Self, OracleError>
    where
        I: IntoIterator<Item = (Assignment, Rational)>,
    {
        let n = vocab.len();
        let mut probs = vec![Rational::zero(); 1 << n];
        for (a, p) in worlds {
            let mut w = 0usize;
            for (i, name) in vocab.iter().enumerate() {
                match a.get(name) {
                    Some(true) => w |= 1 << (n - 1 - i),
                    Some(false) => {}
                    None => return Err(OracleError::Vocabulary(name.clone())),
                }
            }
            probs[w] += p;
        }
        Self::new(vocab, probs)
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn world(&self, w: usize) -> Assignment {
        let n = self.vocab.len();
        self.vocab
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), w & (1 << (n - 1 - i)) != 0))
            .collect()
    }

    pub fn prob(&self, f: &Formula) -> Result<Rational, OracleError> {
        let table = truth_table(f, &self.vocab)?;
        Ok(self
            .probs
            .iter()
            .zip(table)
            .filter(|(_, t)| *t)
            .map(|(p, _)| p)
            .sum())
    }
}

impl fmt::Display for WorldDistribution {
    /// Lists the worlds with non-zero mass, e.g. `p(a & ~b) = 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, p) in self.probs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            let a = self.world(w);
            let lits: Vec<String> = a
                .iter()
                .map(|(k, v)| if v { k.to_string() } else { format!("~{k}") })
                .collect();
            let name = if lits.is_empty() {
                "true".to_string()
            } else {
                lits.join(" & ")
            };
            write!(f, "p({name}) = {p}")?;
        }
        Ok(())
    }
}

/// Exact evaluation of a modal atom in a distribution. Conditionals hold
/// vacuously when the antecedent has probability zero.
pub fn holds_under(m: &ModalAtom, d: &WorldDistribution) -> Result<bool, OracleError> {
    Ok(match m {
        ModalAtom::Necessity(f) => d.prob(f)?.is_one(),
        ModalAtom::Possibility(f) => d.prob(f)?.is_positive(),
        ModalAtom::Default(c) | ModalAtom::Likelihood(c, _) => {
            let bound = c
                .bound
                .clone()
                .ok_or_else(|| OracleError::MissingBound(m.to_string()))?;
            let pa = d.prob(&c.antecedent)?;
            if pa.is_zero() {
                return Ok(true);
            }
            let pab = d.prob(&Formula::and(c.antecedent.clone(), c.consequent.clone()))?;
            match m {
                ModalAtom::Default(_) => pab >= (Rational::one() - bound) * pa,
                _ => pab > bound * pa,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_sentence;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn atom(s: &str) -> ModalAtom {
        match parse_sentence(s).unwrap() {
            crate::modal::Sentence::Atom(m) => m,
            _ => unreachable!(),
        }
    }

    fn ab(probs: [(i64, i64); 4]) -> WorldDistribution {
        // worlds: ~a~b, ~ab, a~b, ab
        WorldDistribution::new(
            vec!["a".into(), "b".into()],
            probs.iter().map(|&(n, d)| r(n, d)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn tautology_is_necessary() {
        let d = ab([(1, 2), (0, 1), (1, 4), (1, 4)]);
        assert!(holds_under(&atom("nec a | ~a"), &d).unwrap());
    }

    #[test]
    fn impossible_antecedent_is_vacuous() {
        let d = ab([(1, 2), (1, 2), (0, 1), (0, 1)]);
        assert!(holds_under(&atom("def a => b @ 1/10"), &d).unwrap());
        assert!(holds_under(&atom("lik a ~> b @ 9/10"), &d).unwrap());
    }

    #[test]
    fn likelihood_is_strict() {
        let d = ab([(1, 2), (0, 1), (1, 4), (1, 4)]);
        assert!(!holds_under(&atom("lik a ~> b @ 1/2"), &d).unwrap());
        assert!(holds_under(&atom("def a => b @ 1/2"), &d).unwrap());
    }

    #[test]
    fn vocabulary_mismatch() {
        let d = ab([(1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(
            holds_under(&atom("poss c"), &d),
            Err(OracleError::Vocabulary("c".into()))
        );
    }

    #[test]
    fn construction_checks_total_mass() {
        let bad = WorldDistribution::new(vec!["a".into()], vec![r(1, 2), r(1, 3)]);
        assert!(matches!(bad, Err(OracleError::NotADistribution(_))));
    }

    #[test]
    fn display_lists_support() {
        let d = ab([(0, 1), (999, 1000), (0, 1), (1, 1000)]);
        assert_eq!(d.to_string(), "p(~a & b) = 999/1000, p(a & b) = 1/1000");
    }
}
