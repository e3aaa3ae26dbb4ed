use num_traits::{One, Zero};

use super::{Conditional, ModalAtom, ModalConjunction, ModalError, Rational};
use crate::propcore::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionalKind {
    Default,
    Likelihood,
}

/// `□U ∧ ⋀◇Vᵢ ∧ ⋀(Aᵢ ⇒ Bᵢ)` with all conditionals of one kind.
///
/// Indices in traces and reports are 1-based positions in `possibilities`
/// and `conditionals`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClausalKb {
    pub necessity: Formula,
    pub possibilities: Vec<Formula>,
    pub conditionals: Vec<Conditional>,
    /// Likelihood orders, parallel to `conditionals`; all 1 for defaults.
    pub orders: Vec<u32>,
    pub kind: Option<ConditionalKind>,
}

impl Default for ClausalKb {
    fn default() -> Self {
        ClausalKb {
            necessity: Formula::True,
            possibilities: Vec::new(),
            conditionals: Vec::new(),
            orders: Vec::new(),
            kind: None,
        }
    }
}

impl ClausalKb {
    pub fn add_necessity(&mut self, f: Formula) {
        self.necessity = match std::mem::replace(&mut self.necessity, Formula::True) {
            Formula::True => f,
            u => Formula::and(u, f),
        };
    }

    pub fn add_possibility(&mut self, f: Formula) {
        self.possibilities.push(f);
    }

    pub fn add_conditional(
        &mut self,
        kind: ConditionalKind,
        c: Conditional,
        order: u32,
    ) -> Result<(), ModalError> {
        match self.kind {
            Some(k) if k != kind => return Err(ModalError::MixedKind),
            _ => self.kind = Some(kind),
        }
        self.conditionals.push(c);
        self.orders.push(order);
        Ok(())
    }

    pub fn add(&mut self, m: ModalAtom) -> Result<(), ModalError> {
        match m {
            ModalAtom::Necessity(f) => self.add_necessity(f),
            ModalAtom::Possibility(f) => self.add_possibility(f),
            ModalAtom::Default(c) => self.add_conditional(ConditionalKind::Default, c, 1)?,
            ModalAtom::Likelihood(c, n) => {
                self.add_conditional(ConditionalKind::Likelihood, c, n)?
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.conditionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditionals.is_empty()
    }

    /// The conditional atoms, rebuilt with their kind.
    pub fn conditional_atom(&self, i: usize) -> ModalAtom {
        let c = self.conditionals[i].clone();
        match self.kind {
            Some(ConditionalKind::Likelihood) => ModalAtom::Likelihood(c, self.orders[i]),
            _ => ModalAtom::Default(c),
        }
    }

    /// Back to a flat conjunction; `□U` is omitted when `U = ⊤`.
    pub fn to_conjunction(&self) -> ModalConjunction {
        let mut out = ModalConjunction::default();
        if self.necessity != Formula::True {
            out.push(ModalAtom::Necessity(self.necessity.clone()));
        }
        out.extend(
            self.possibilities
                .iter()
                .cloned()
                .map(ModalAtom::Possibility),
        );
        out.extend((0..self.len()).map(|i| self.conditional_atom(i)));
        out
    }

    pub fn bounds(&self) -> impl Iterator<Item = Option<&Rational>> {
        self.conditionals.iter().map(|c| c.bound.as_ref())
    }
}

pub fn to_clausal(c: &ModalConjunction) -> Result<ClausalKb, ModalError> {
    let mut kb = ClausalKb::default();
    for m in c.atoms() {
        kb.add(m.clone())?;
    }
    Ok(kb)
}

/// Conditionals whose bound breaks the precondition of the kernel tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundViolation {
    /// Bounds must be strictly below this.
    pub limit: Rational,
    /// 1-based indices with a bound at or above `limit`.
    pub offending: Vec<usize>,
    /// 1-based indices with no numeric bound at all.
    pub missing: Vec<usize>,
}

impl std::fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "bounds must be below {}", self.limit)?;
        if !self.offending.is_empty() {
            write!(f, "; offending conditionals {:?}", self.offending)?;
        }
        if !self.missing.is_empty() {
            write!(f, "; conditionals without a bound {:?}", self.missing)?;
        }
        Ok(())
    }
}

/// Defaults need `εᵢ < min(1/|I_A|, 1/2)`, likelihoods `eᵢ < 1/|I_A|`.
pub fn validate_bounds(kb: &ClausalKb) -> Result<(), BoundViolation> {
    validate_bounds_with_count(kb, kb.len())
}

/// As [`validate_bounds`] but against an explicit `|I_A|`, for callers that
/// are about to add conditionals of their own.
pub fn validate_bounds_with_count(kb: &ClausalKb, count: usize) -> Result<(), BoundViolation> {
    if kb.is_empty() {
        return Ok(());
    }
    let mut limit = Rational::new(One::one(), count.max(1).into());
    if kb.kind == Some(ConditionalKind::Default) {
        let half = Rational::new(1.into(), 2.into());
        if half < limit {
            limit = half;
        }
    }
    let mut offending = Vec::new();
    let mut missing = Vec::new();
    for (i, b) in kb.bounds().enumerate() {
        match b {
            None => missing.push(i + 1),
            Some(b) if *b >= limit || *b < Rational::zero() => offending.push(i + 1),
            Some(_) => {}
        }
    }
    if offending.is_empty() && missing.is_empty() {
        Ok(())
    } else {
        Err(BoundViolation {
            limit,
            offending,
            missing,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_kb;

    fn kb(text: &str) -> Result<ClausalKb, ModalError> {
        to_clausal(&parse_kb(text).unwrap().to_conjunction())
    }

    #[test]
    fn emu_rules_in_clausal_form() {
        let k =
            kb("nec emu -> bird\ndef emu => ~flies @ 1/100\ndef bird => flies @ 1/100").unwrap();
        assert_eq!(k.necessity, Formula::implies("emu".into(), "bird".into()));
        assert_eq!(k.len(), 2);
        assert_eq!(k.kind, Some(ConditionalKind::Default));
        assert!(k.possibilities.is_empty());
    }

    #[test]
    fn empty_conjunction() {
        let k = to_clausal(&ModalConjunction::default()).unwrap();
        assert_eq!(k.necessity, Formula::True);
        assert!(k.is_empty() && k.possibilities.is_empty());
    }

    #[test]
    fn mixed_kinds_rejected() {
        assert_eq!(
            kb("def a => b @ 1/10\nlik c ~> d @ 1/10"),
            Err(ModalError::MixedKind)
        );
    }

    #[test]
    fn two_small_defaults_pass() {
        assert!(validate_bounds(&kb("def a => b @ 1/100\ndef c => d @ 1/100").unwrap()).is_ok());
    }

    #[test]
    fn large_default_among_three_is_flagged() {
        let v = validate_bounds(
            &kb("def a => b @ 1/100\ndef c => d @ 2/5\ndef e => f @ 1/100").unwrap(),
        )
        .unwrap_err();
        assert_eq!(v.offending, vec![2]);
        assert_eq!(v.limit, Rational::new(1.into(), 3.into()));
    }

    #[test]
    fn single_likelihood_at_half_passes() {
        assert!(validate_bounds(&kb("lik a ~> b @ 1/2").unwrap()).is_ok());
    }

    #[test]
    fn single_default_at_half_fails() {
        assert!(validate_bounds(&kb("def a => b @ 1/2").unwrap()).is_err());
    }

    #[test]
    fn round_trip_through_conjunction() {
        let k = kb("nec a\nposs b\nlik a ~> b @ 1/3 ^2").unwrap();
        assert_eq!(to_clausal(&k.to_conjunction()).unwrap(), k);
    }
}
