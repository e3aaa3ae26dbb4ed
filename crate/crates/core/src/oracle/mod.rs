//! Semantics by brute force: explicit distributions over all worlds of the
//! vocabulary, decided with exact linear programming.
//!
//! Every modal atom is linear in the world probabilities once its strict
//! inequalities share a slack `t`: a conjunction is satisfiable iff the
//! maximum of `t` is positive. Likelihoods are split on whether their
//! antecedent has probability zero.

mod encode;
mod simplex;
mod vertex;
mod world;

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::modal::{dnf_split, ModalAtom, ModalConjunction, Rational, Sentence};
use crate::propcore::Formula;

pub use encode::{encode, encode_closed, Constraint, LinearSystem, Relation};
pub use simplex::{maximize, LpOutcome};
pub use world::{holds_under, truth_table, WorldDistribution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{atoms} atoms exceed the oracle budget of {limit}")]
    BudgetExceeded { atoms: usize, limit: usize },
    #[error("{splits} likelihoods need 2^{splits} case splits; budget is {limit}")]
    CaseExplosion { splits: usize, limit: usize },
    #[error("atom `{0}` is outside the distribution's vocabulary")]
    Vocabulary(String),
    #[error("not a probability distribution: {0}")]
    NotADistribution(String),
    #[error("`{0}` has no numeric bound")]
    MissingBound(String),
    #[error("the conditioning formula cannot have positive probability")]
    GoalImpossible,
    #[error("internal check failed: {0}")]
    SolverDisagreement(String),
}

/// Vocabularies up to this size get a second, independent infeasibility
/// check by vertex enumeration.
pub const VERTEX_CHECK_ATOMS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_atoms: usize,
    pub max_splits: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_atoms: 10,
            max_splits: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feasibility {
    pub satisfiable: bool,
    pub witness: Option<WorldDistribution>,
    /// Linear systems solved before the answer was found.
    pub systems: usize,
}

fn satisfies(sys: &LinearSystem, x: &[Rational]) -> bool {
    sys.constraints.iter().all(|c| {
        let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Ge => lhs >= c.rhs,
            Relation::Eq => lhs == c.rhs,
        }
    })
}

/// Whether `sys` has a solution with `t > 0` (or any solution, without a
/// slack column), and the world distribution of one such solution.
pub fn feasible_strict(
    sys: &LinearSystem,
) -> Result<(bool, Option<WorldDistribution>), OracleError> {
    let outcome = maximize(sys.num_vars(), &sys.constraints, &sys.slack_objective());
    let solution = match outcome {
        LpOutcome::Optimal { value, x } if !sys.has_slack || value.is_positive() => Some(x),
        LpOutcome::Optimal { .. } | LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => {
            return Err(OracleError::SolverDisagreement(
                "slack objective is bounded by construction".into(),
            ))
        }
    };
    match solution {
        Some(x) => {
            if !satisfies(sys, &x) {
                return Err(OracleError::SolverDisagreement(
                    "simplex solution violates a constraint".into(),
                ));
            }
            let probs = x[..sys.worlds].to_vec();
            let d = WorldDistribution::new(sys.vocab.clone(), probs)?;
            Ok((true, Some(d)))
        }
        None => {
            if sys.vocab.len() <= VERTEX_CHECK_ATOMS
                && vertex::strictly_feasible(sys).unwrap_or(false)
            {
                return Err(OracleError::SolverDisagreement(
                    "vertex enumeration found a strictly feasible point".into(),
                ));
            }
            Ok((false, None))
        }
    }
}

fn check_budget(vocab: &BTreeSet<String>, cfg: &OracleConfig) -> Result<Vec<String>, OracleError> {
    if vocab.len() > cfg.max_atoms {
        return Err(OracleError::BudgetExceeded {
            atoms: vocab.len(),
            limit: cfg.max_atoms,
        });
    }
    Ok(vocab.iter().cloned().collect())
}

fn consistent_over(
    c: &ModalConjunction,
    vocab: &[String],
    cfg: &OracleConfig,
) -> Result<Feasibility, OracleError> {
    let systems = encode(c, vocab, cfg.max_splits)?;
    let mut solved = 0;
    for sys in &systems {
        solved += 1;
        if let (true, Some(d)) = feasible_strict(sys)? {
            for m in c.atoms() {
                if !holds_under(m, &d)? {
                    return Err(OracleError::SolverDisagreement(format!(
                        "witness violates `{m}`"
                    )));
                }
            }
            return Ok(Feasibility {
                satisfiable: true,
                witness: Some(d),
                systems: solved,
            });
        }
    }
    Ok(Feasibility {
        satisfiable: false,
        witness: None,
        systems: solved,
    })
}

/// Satisfiability of a flat conjunction of modal atoms.
pub fn oracle_consistent_conj(
    c: &ModalConjunction,
    cfg: &OracleConfig,
) -> Result<Feasibility, OracleError> {
    let vocab = check_budget(&c.vocabulary(), cfg)?;
    consistent_over(c, &vocab, cfg)
}

/// Satisfiability of an arbitrary boolean combination of modal atoms.
pub fn oracle_consistent(s: &Sentence, cfg: &OracleConfig) -> Result<Feasibility, OracleError> {
    let vocab = check_budget(&s.vocabulary(), cfg)?;
    let mut total = 0;
    for disjunct in dnf_split(s) {
        let f = consistent_over(&disjunct, &vocab, cfg)?;
        total += f.systems;
        if f.satisfiable {
            return Ok(Feasibility {
                systems: total,
                ..f
            });
        }
    }
    Ok(Feasibility {
        satisfiable: false,
        witness: None,
        systems: total,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entailment {
    pub holds: bool,
    /// A distribution satisfying the premises but not the goal.
    pub countermodel: Option<WorldDistribution>,
}

/// Whether every distribution satisfying `premises` satisfies `goal`.
pub fn oracle_consequence(
    premises: &ModalConjunction,
    goal: &Sentence,
    cfg: &OracleConfig,
) -> Result<Entailment, OracleError> {
    let refutation = match premises.to_sentence() {
        Some(p) => Sentence::and(p, Sentence::not(goal.clone())),
        None => Sentence::not(goal.clone()),
    };
    let f = oracle_consistent(&refutation, cfg)?;
    Ok(Entailment {
        holds: !f.satisfiable,
        countermodel: f.witness,
    })
}

/// Whether `s` holds in every distribution.
pub fn oracle_valid(s: &Sentence, cfg: &OracleConfig) -> Result<Entailment, OracleError> {
    let f = oracle_consistent(&Sentence::not(s.clone()), cfg)?;
    Ok(Entailment {
        holds: !f.satisfiable,
        countermodel: f.witness,
    })
}

/// An infimum of a conditional probability over the closed relaxation of
/// the premises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infimum {
    pub value: Rational,
    /// True when the premises contain no likelihoods; the closed relaxation
    /// then has the same infimum as the premises themselves.
    pub exact: bool,
}

fn min_conditional(
    premises: &ModalConjunction,
    given: &Formula,
    target: &Formula,
    cfg: &OracleConfig,
) -> Result<Infimum, OracleError> {
    let mut vocab = premises.vocabulary();
    given.collect_atoms(&mut vocab);
    target.collect_atoms(&mut vocab);
    let vocab = check_budget(&vocab, cfg)?;

    let mut with_goal = premises.clone();
    with_goal.push(ModalAtom::Possibility(given.clone()));
    if !consistent_over(&with_goal, &vocab, cfg)?.satisfiable {
        return Err(OracleError::GoalImpossible);
    }

    let sys = encode_closed(premises, &vocab, given)?;
    let hit = truth_table(&Formula::and(given.clone(), target.clone()), &vocab)?;
    let objective: Vec<Rational> = hit
        .iter()
        .map(|&h| {
            if h {
                -Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        })
        .collect();
    match maximize(sys.num_vars(), &sys.constraints, &objective) {
        LpOutcome::Optimal { value, .. } => Ok(Infimum {
            value: -value,
            exact: !premises.has_kind(crate::modal::AtomKind::Likelihood),
        }),
        other => Err(OracleError::SolverDisagreement(format!(
            "closed relaxation should be feasible and bounded, got {other:?}"
        ))),
    }
}

/// Least `δ` such that `C ⇒_δ B` follows from the closed relaxation of the
/// premises: `1 − inf Pr(B | C)`.
pub fn tight_default_bound(
    premises: &ModalConjunction,
    c: &Formula,
    b: &Formula,
    cfg: &OracleConfig,
) -> Result<Infimum, OracleError> {
    let inf = min_conditional(premises, c, b, cfg)?;
    Ok(Infimum {
        value: Rational::from_integer(1.into()) - inf.value,
        exact: inf.exact,
    })
}

/// `inf Pr(H | C)` over the closed relaxation of the premises.
pub fn tight_likelihood_bound(
    premises: &ModalConjunction,
    c: &Formula,
    h: &Formula,
    cfg: &OracleConfig,
) -> Result<Infimum, OracleError> {
    min_conditional(premises, c, h, cfg)
}
