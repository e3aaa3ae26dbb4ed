//! Decision procedures on clausal knowledge bases: inconsistent sets,
//! consistency, consequence with propagated error bounds, and theorem
//! checking over boolean combinations of modal atoms.

mod consequence;
mod decide;
mod sets;
pub mod symbolic;

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::modal::{BoundViolation, ModalError, Rational};
use crate::oracle::{OracleConfig, OracleError, WorldDistribution};
use crate::propcore::{self, Formula};

pub use consequence::{
    default_consequence, likelihood_consequence, necessity_consequence, possibility_consequence,
};
pub use decide::{
    decide_consistency, decide_sequent, oracle_decide, strengthen_to_defaults, theorem_check,
};
pub use sets::{
    consistent, max_inconsistent_set, max_inconsistent_set_in_order, min_inconsistent_set,
    min_inconsistent_set_in_order,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("bound precondition violated: {0}")]
    PreconditionViolation(BoundViolation),
    #[error(transparent)]
    Modal(#[from] ModalError),
    #[error("the premises are inconsistent")]
    InconsistentPremises,
    #[error("both bounds are zero")]
    DegenerateBound,
    #[error(transparent)]
    Oracle(OracleError),
}

impl From<OracleError> for KernelError {
    fn from(e: OracleError) -> Self {
        KernelError::Oracle(e)
    }
}

/// Which condition ends the likelihood chain search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TerminationRule {
    /// Stop once `C ∧ ¬H ∧ ⋀_I (Aᵢ → Bᵢ)` is unsatisfiable (with the base).
    #[default]
    Reconstructed,
    /// Stop once `C ∧ ¬H ∧ ⋀_I Aᵢ` is unsatisfiable. Kept for comparison;
    /// it accepts `A ≈ B ⊨ B ≈ A`.
    Literal,
}

/// When the linear-programming oracle may be consulted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OracleUse {
    Never,
    /// Only where the kernel has no procedure, within budget.
    #[default]
    Fallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Conjoin `◇C` to default consequence tests.
    pub proper: bool,
    /// Ignore numeric subscripts; no bounds are reported.
    pub qualitative: bool,
    pub oracle: OracleUse,
    pub budget: OracleConfig,
    pub termination: TerminationRule,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            proper: true,
            qualitative: false,
            oracle: OracleUse::Fallback,
            budget: OracleConfig::default(),
            termination: TerminationRule::Reconstructed,
        }
    }
}

impl Options {
    pub fn qualitative() -> Self {
        Options {
            qualitative: true,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Consistent,
    Inconsistent,
    Consequence,
    NotConsequence,
    Undecided,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Consistent => "consistent",
            Answer::Inconsistent => "inconsistent",
            Answer::Consequence => "consequence",
            Answer::NotConsequence => "not-consequence",
            Answer::Undecided => "undecided",
        })
    }
}

/// Bound attached to a consequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    /// Default error `δ`: the conclusion holds as `C ⇒_δ B`.
    Delta(Rational),
    /// Likelihood floor `f`: the conclusion holds as `C ≈_f H`.
    Floor(Rational),
    /// The likelihood conclusion holds for every `f < 1`.
    AnyFloor,
    /// Qualitative likelihood order.
    Order(u32),
}

impl Bound {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Bound::Delta(r) | Bound::Floor(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Delta(r) => write!(f, "delta = {r}"),
            Bound::Floor(r) => write!(f, "f = {r}"),
            Bound::AnyFloor => write!(f, "f = any"),
            Bound::Order(m) => write!(f, "order = {m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    Max,
    Min,
}

/// Fixed point of the removal (max) or addition (min) rule. Indices are
/// 1-based positions of the knowledge base's conditionals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InconsistentSet {
    pub kind: SetKind,
    pub indices: Vec<usize>,
    /// Indices removed (max) or added (min), in order.
    pub steps: Vec<usize>,
}

impl fmt::Display for InconsistentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            SetKind::Max => "I_max",
            SetKind::Min => "I_min",
        };
        let items: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        write!(f, "{name} = {{{}}}", items.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatCall {
    pub purpose: String,
    pub satisfiable: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub sets: Vec<InconsistentSet>,
    pub sat_calls: Vec<SatCall>,
    /// Likelihood indices accepted into the chain, in order.
    pub chain: Vec<usize>,
    pub notes: Vec<String>,
}

impl Trace {
    pub(crate) fn sat(&mut self, purpose: impl Into<String>, fs: &[Formula]) -> bool {
        let satisfiable = propcore::is_satisfiable(fs);
        self.sat_calls.push(SatCall {
            purpose: purpose.into(),
            satisfiable,
        });
        satisfiable
    }

    pub(crate) fn absorb(&mut self, other: Trace) {
        self.sets.extend(other.sets);
        self.sat_calls.extend(other.sat_calls);
        self.chain.extend(other.chain);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sets {
            writeln!(f, "{s} (steps {:?})", s.steps)?;
        }
        if !self.chain.is_empty() {
            writeln!(f, "chain I = {:?}", self.chain)?;
        }
        for (i, c) in self.sat_calls.iter().enumerate() {
            let r = if c.satisfiable { "sat" } else { "unsat" };
            writeln!(f, "sat[{}] {}: {r}", i + 1, c.purpose)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    /// Present for quantitative consequences only.
    pub bound: Option<Bound>,
    /// The propagated default error is at least 1/2.
    pub vacuous: bool,
    pub oracle_used: bool,
    /// Oracle distribution: a model for consistency, a countermodel for
    /// a rejected consequence.
    pub witness: Option<WorldDistribution>,
    pub reason: Option<String>,
    pub trace: Trace,
}

impl Verdict {
    pub fn new(answer: Answer, trace: Trace) -> Self {
        Verdict {
            answer,
            bound: None,
            vacuous: false,
            oracle_used: false,
            witness: None,
            reason: None,
            trace,
        }
    }

    pub fn undecided(reason: impl Into<String>, trace: Trace) -> Self {
        Verdict {
            reason: Some(reason.into()),
            ..Verdict::new(Answer::Undecided, trace)
        }
    }

    pub(crate) fn with_bound(mut self, bound: Option<Bound>) -> Self {
        self.vacuous = matches!(&bound, Some(Bound::Delta(d)) if *d >= half());
        self.bound = bound;
        self
    }

    pub fn is_consequence(&self) -> bool {
        self.answer == Answer::Consequence
    }
}

pub(crate) fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Floor for the disjunction `(A ∨ B) ≈ C` from `A ≈_e C` and `B ≈_d C`:
/// `ed / (e + d − ed)`.
pub fn disjunction_combine(e: &Rational, d: &Rational) -> Result<Rational, KernelError> {
    let unit = Rational::zero()..=Rational::one();
    if !unit.contains(e) || !unit.contains(d) {
        return Err(KernelError::DegenerateBound);
    }
    if e.is_zero() && d.is_zero() {
        return Err(KernelError::DegenerateBound);
    }
    Ok(e * d / (e + d - e * d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn combine_halves() {
        assert_eq!(disjunction_combine(&r(1, 2), &r(1, 2)).unwrap(), r(1, 3));
    }

    #[test]
    fn combine_boundaries() {
        assert_eq!(disjunction_combine(&r(1, 1), &r(1, 1)).unwrap(), r(1, 1));
        assert_eq!(disjunction_combine(&r(0, 1), &r(1, 2)).unwrap(), r(0, 1));
        assert_eq!(
            disjunction_combine(&r(0, 1), &r(0, 1)),
            Err(KernelError::DegenerateBound)
        );
    }

    #[test]
    fn combine_never_exceeds_either_input() {
        for (a, b) in [(1, 3), (1, 10), (9, 10)]
            .iter()
            .flat_map(|&x| [(1, 2), (1, 4), (7, 8)].into_iter().map(move |y| (x, y)))
        {
            let (e, d) = (r(a.0, a.1), r(b.0, b.1));
            let f = disjunction_combine(&e, &d).unwrap();
            assert!(f <= e && f <= d);
        }
    }

    #[test]
    fn vacuous_flag_from_delta() {
        let v = Verdict::new(Answer::Consequence, Trace::default())
            .with_bound(Some(Bound::Delta(r(1, 2))));
        assert!(v.vacuous);
        let v = Verdict::new(Answer::Consequence, Trace::default())
            .with_bound(Some(Bound::Delta(r(1, 50))));
        assert!(!v.vacuous);
    }
}
