//! Definitional (Tseitin) clause form.
//!
//! Every compound subformula gets a fresh auxiliary variable constrained to
//! be equivalent to it, so the clause set grows linearly with the input and
//! stays equisatisfiable. Atom variables are numbered before any auxiliary
//! variable introduced after them, and models restricted to the atom
//! variables are exactly the models of the source.

use std::collections::HashMap;
use std::fmt;

use super::formula::{Assignment, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: Var,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: Var) -> Self {
        Lit {
            var,
            positive: true,
        }
    }

    pub fn neg(var: Var) -> Self {
        Lit {
            var,
            positive: false,
        }
    }

    pub fn negate(self) -> Self {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let id = self.var.0 as i64 + 1;
        write!(f, "{}", if self.positive { id } else { -id })
    }
}

pub type Clause = Vec<Lit>;

/// What a CNF variable stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarInfo {
    Atom(String),
    /// Auxiliary definition variable; never reported in witnesses.
    Aux,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cnf {
    pub clauses: Vec<Clause>,
    pub vars: Vec<VarInfo>,
}

impl Cnf {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// Projects a total model of the clause set onto its atom variables.
    pub fn project(&self, model: &[bool]) -> Assignment {
        self.vars
            .iter()
            .zip(model)
            .filter_map(|(info, v)| match info {
                VarInfo::Atom(name) => Some((name.clone(), *v)),
                VarInfo::Aux => None,
            })
            .collect()
    }

    /// Whether `model` (indexed by variable id) satisfies every clause.
    pub fn satisfied_by(&self, model: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| model[l.var.0 as usize] == l.positive))
    }
}

/// Incremental Tseitin encoder; several formulas can be asserted into one
/// clause set over a shared atom table.
#[derive(Debug, Default)]
pub struct CnfBuilder {
    cnf: Cnf,
    atoms: HashMap<String, Var>,
}

impl CnfBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Pre-registers atoms so their variable ids follow the given order.
    pub fn declare_atoms<'a, I: IntoIterator<Item = &'a String>>(&mut self, atoms: I) {
        for a in atoms {
            self.atom_var(a);
        }
    }

    fn fresh(&mut self, info: VarInfo) -> Var {
        let v = Var(self.cnf.vars.len() as u32);
        self.cnf.vars.push(info);
        v
    }

    fn atom_var(&mut self, name: &str) -> Var {
        if let Some(v) = self.atoms.get(name) {
            return *v;
        }
        let v = self.fresh(VarInfo::Atom(name.to_string()));
        self.atoms.insert(name.to_string(), v);
        v
    }

    /// Adds clauses forcing `f` to hold.
    pub fn assert(&mut self, f: &Formula) {
        match f {
            // Top-level conjunctions split into separate assertions.
            Formula::And(a, b) => {
                self.assert(a);
                self.assert(b);
            }
            Formula::True => {}
            Formula::False => self.cnf.clauses.push(Vec::new()),
            _ => {
                let root = self.encode(f);
                self.cnf.clauses.push(vec![root]);
            }
        }
    }

    /// Returns a literal equivalent to `f` under the added definitions.
    fn encode(&mut self, f: &Formula) -> Lit {
        match f {
            Formula::Atom(name) => Lit::pos(self.atom_var(name)),
            Formula::Not(inner) => self.encode(inner).negate(),
            Formula::True | Formula::False => {
                let v = self.fresh(VarInfo::Aux);
                let lit = Lit::pos(v);
                self.cnf.clauses.push(vec![lit]);
                if matches!(f, Formula::True) {
                    lit
                } else {
                    lit.negate()
                }
            }
            Formula::And(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                let t = Lit::pos(self.fresh(VarInfo::Aux));
                self.cnf.clauses.push(vec![t.negate(), x]);
                self.cnf.clauses.push(vec![t.negate(), y]);
                self.cnf.clauses.push(vec![t, x.negate(), y.negate()]);
                t
            }
            Formula::Or(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                let t = Lit::pos(self.fresh(VarInfo::Aux));
                self.cnf.clauses.push(vec![t.negate(), x, y]);
                self.cnf.clauses.push(vec![t, x.negate()]);
                self.cnf.clauses.push(vec![t, y.negate()]);
                t
            }
            Formula::Implies(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                let t = Lit::pos(self.fresh(VarInfo::Aux));
                self.cnf.clauses.push(vec![t.negate(), x.negate(), y]);
                self.cnf.clauses.push(vec![t, x]);
                self.cnf.clauses.push(vec![t, y.negate()]);
                t
            }
            Formula::Iff(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                let t = Lit::pos(self.fresh(VarInfo::Aux));
                self.cnf.clauses.push(vec![t.negate(), x.negate(), y]);
                self.cnf.clauses.push(vec![t.negate(), x, y.negate()]);
                self.cnf.clauses.push(vec![t, x, y]);
                self.cnf.clauses.push(vec![t, x.negate(), y.negate()]);
                t
            }
        }
    }

    pub fn finish(self) -> Cnf {
        self.cnf
    }
}

/// Clause form of a single formula.
pub fn to_cnf(f: &Formula) -> Cnf {
    let mut b = CnfBuilder::new();
    b.declare_atoms(&f.atoms());
    b.assert(f);
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All total models of `cnf`, projected to atoms. Exponential; tests only.
    fn projected_models(cnf: &Cnf) -> Vec<Assignment> {
        let n = cnf.num_vars();
        let mut out = Vec::new();
        for bits in 0u32..(1 << n) {
            let model: Vec<bool> = (0..n).map(|i| bits & (1 << i) != 0).collect();
            if cnf.satisfied_by(&model) {
                let p = cnf.project(&model);
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    #[test]
    fn single_atom_is_a_unit_clause() {
        let cnf = to_cnf(&"a".into());
        assert_eq!(cnf.clauses, vec![vec![Lit::pos(Var(0))]]);
        assert_eq!(cnf.vars, vec![VarInfo::Atom("a".into())]);
    }

    #[test]
    fn conjunction_entails_both_units() {
        let cnf = to_cnf(&Formula::and("a".into(), "b".into()));
        let models = projected_models(&cnf);
        assert_eq!(
            models,
            vec![Assignment::new().with("a", true).with("b", true)]
        );
    }

    #[test]
    fn negated_disjunction_matches_truth_table() {
        let f = Formula::not(Formula::or("a".into(), "b".into()));
        let cnf = to_cnf(&f);
        let models = projected_models(&cnf);
        assert_eq!(
            models,
            vec![Assignment::new().with("a", false).with("b", false)]
        );
    }

    #[test]
    fn constants() {
        assert!(projected_models(&to_cnf(&Formula::False)).is_empty());
        let t = to_cnf(&Formula::or(Formula::True, "a".into()));
        assert_eq!(projected_models(&t).len(), 2);
    }

    #[test]
    fn size_is_linear() {
        let mut f = Formula::atom("x0");
        for i in 1..200 {
            f = Formula::iff(f, Formula::atom(format!("x{i}")));
        }
        let cnf = to_cnf(&f);
        assert!(cnf.clauses.len() <= 4 * f.size());
        assert!(cnf.num_vars() <= f.size());
    }
}
