use num_traits::{One, Zero};

use super::world::truth_table;
use super::OracleError;
use crate::modal::{Conditional, ModalAtom, ModalConjunction, Rational};
use crate::propcore::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Constraints over one probability variable per world, optionally
/// followed by a shared slack `t` that every strict inequality must clear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub vocab: Vec<String>,
    pub worlds: usize,
    /// Whether column `worlds` is the slack `t`, bounded by `t ≤ 1`.
    pub has_slack: bool,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn num_vars(&self) -> usize {
        self.worlds + usize::from(self.has_slack)
    }

    /// Objective selecting `t`.
    pub fn slack_objective(&self) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); self.num_vars()];
        if self.has_slack {
            c[self.worlds] = Rational::one();
        }
        c
    }
}

struct Rows<'a> {
    vocab: &'a [String],
    width: usize,
    worlds: usize,
    out: Vec<Constraint>,
}

impl<'a> Rows<'a> {
    fn mass(&self, f: &Formula, coef: &Rational, row: &mut [Rational]) -> Result<(), OracleError> {
        for (w, t) in truth_table(f, self.vocab)?.into_iter().enumerate() {
            if t {
                row[w] += coef;
            }
        }
        Ok(())
    }

    fn zero_row(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.width]
    }

    fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.out.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    /// `Pr(F) = 0`.
    fn impossible(&mut self, f: &Formula) -> Result<(), OracleError> {
        let mut row = self.zero_row();
        self.mass(f, &Rational::one(), &mut row)?;
        self.push(row, Relation::Eq, Rational::zero());
        Ok(())
    }

    /// `Pr(F) − t ≥ 0`, or `Pr(F) ≥ 0` trivially when `slack` is false.
    fn possible(&mut self, f: &Formula) -> Result<(), OracleError> {
        let mut row = self.zero_row();
        self.mass(f, &Rational::one(), &mut row)?;
        row[self.worlds] = -Rational::one();
        self.push(row, Relation::Ge, Rational::zero());
        Ok(())
    }

    /// `a·Pr(A∧B) − b·Pr(A∧¬B) [− t] ≥ 0`.
    fn conditional(
        &mut self,
        c: &Conditional,
        a: Rational,
        b: Rational,
        strict: bool,
    ) -> Result<(), OracleError> {
        let mut row = self.zero_row();
        let ab = Formula::and(c.antecedent.clone(), c.consequent.clone());
        let anb = Formula::and(c.antecedent.clone(), Formula::not(c.consequent.clone()));
        self.mass(&ab, &a, &mut row)?;
        self.mass(&anb, &-b, &mut row)?;
        if strict {
            row[self.worlds] = -Rational::one();
        }
        self.push(row, Relation::Ge, Rational::zero());
        Ok(())
    }
}

fn bound_of(m: &ModalAtom) -> Result<Rational, OracleError> {
    m.bound()
        .cloned()
        .ok_or_else(|| OracleError::MissingBound(m.to_string()))
}

/// One system per way of choosing, for each likelihood, either its
/// vacuous branch `Pr(A) = 0` or its strict branch. The conjunction is
/// satisfiable iff some system has a solution with `t > 0`.
pub fn encode(
    c: &ModalConjunction,
    vocab: &[String],
    max_splits: usize,
) -> Result<Vec<LinearSystem>, OracleError> {
    let likelihoods: Vec<&ModalAtom> = c
        .atoms()
        .iter()
        .filter(|m| matches!(m, ModalAtom::Likelihood(..)))
        .collect();
    if likelihoods.len() > max_splits {
        return Err(OracleError::CaseExplosion {
            splits: likelihoods.len(),
            limit: max_splits,
        });
    }
    let worlds = 1usize << vocab.len();
    let mut base = Rows {
        vocab,
        width: worlds + 1,
        worlds,
        out: Vec::new(),
    };
    let mut total = base.zero_row();
    total[..worlds].fill(Rational::one());
    base.push(total, Relation::Eq, Rational::one());
    let mut cap = base.zero_row();
    cap[worlds] = Rational::one();
    base.push(cap, Relation::Le, Rational::one());
    for m in c.atoms() {
        match m {
            ModalAtom::Necessity(f) => base.impossible(&Formula::not(f.clone()))?,
            ModalAtom::Possibility(f) => base.possible(f)?,
            ModalAtom::Default(cond) => {
                let e = bound_of(m)?;
                base.conditional(cond, e.clone(), Rational::one() - e, false)?
            }
            ModalAtom::Likelihood(..) => {}
        }
    }
    let mut systems = Vec::with_capacity(1 << likelihoods.len());
    for mask in 0..1usize << likelihoods.len() {
        let mut rows = Rows {
            vocab,
            width: worlds + 1,
            worlds,
            out: base.out.clone(),
        };
        for (i, m) in likelihoods.iter().enumerate() {
            let ModalAtom::Likelihood(cond, _) = m else {
                unreachable!()
            };
            if mask & (1 << i) == 0 {
                rows.impossible(&cond.antecedent)?;
            } else {
                let e = bound_of(m)?;
                rows.conditional(cond, Rational::one() - &e, e, true)?;
            }
        }
        systems.push(LinearSystem {
            vocab: vocab.to_vec(),
            worlds,
            has_slack: true,
            constraints: rows.out,
        });
    }
    Ok(systems)
}

/// Closed relaxation used for tight bounds: possibilities dropped,
/// likelihoods relaxed to `Pr(A∧B) ≥ e·Pr(A)`, and the mass of `given`
/// normalized to 1 in place of the total mass.
pub fn encode_closed(
    c: &ModalConjunction,
    vocab: &[String],
    given: &Formula,
) -> Result<LinearSystem, OracleError> {
    let worlds = 1usize << vocab.len();
    let mut rows = Rows {
        vocab,
        width: worlds,
        worlds,
        out: Vec::new(),
    };
    let mut norm = rows.zero_row();
    rows.mass(given, &Rational::one(), &mut norm)?;
    rows.push(norm, Relation::Eq, Rational::one());
    for m in c.atoms() {
        match m {
            ModalAtom::Necessity(f) => rows.impossible(&Formula::not(f.clone()))?,
            ModalAtom::Possibility(_) => {}
            ModalAtom::Default(cond) => {
                let e = bound_of(m)?;
                rows.conditional(cond, e.clone(), Rational::one() - e, false)?
            }
            ModalAtom::Likelihood(cond, _) => {
                let e = bound_of(m)?;
                rows.conditional(cond, Rational::one() - &e, e, false)?
            }
        }
    }
    Ok(LinearSystem {
        vocab: vocab.to_vec(),
        worlds,
        has_slack: false,
        constraints: rows.out,
    })
}
