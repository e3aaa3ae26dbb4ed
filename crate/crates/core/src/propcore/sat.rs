//! Backtracking search with unit propagation.
//!
//! Branching is on the lowest-numbered unassigned variable, trying `false`
//! first, so models and traces are reproducible run to run.

use super::cnf::Cnf;

#[derive(Debug, Clone, Copy)]
enum Reason {
    Decision { flipped: bool },
    Implied,
}

/// Search state for one query. Owned by a single call; not shared.
pub struct Solver<'a> {
    cnf: &'a Cnf,
    values: Vec<Option<bool>>,
    trail: Vec<(usize, Reason)>,
    pub decisions: u64,
    pub propagations: u64,
}

impl<'a> Solver<'a> {
    pub fn new(cnf: &'a Cnf) -> Self {
        Solver {
            cnf,
            values: vec![None; cnf.num_vars()],
            trail: Vec::new(),
            decisions: 0,
            propagations: 0,
        }
    }

    fn assign(&mut self, var: usize, value: bool, reason: Reason) {
        self.values[var] = Some(value);
        self.trail.push((var, reason));
    }

    /// Runs unit propagation to a fixpoint. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for ci in 0..self.cnf.clauses.len() {
                let clause = &self.cnf.clauses[ci];
                let mut unassigned = None;
                let mut open = 0;
                let mut satisfied = false;
                for lit in clause {
                    match self.values[lit.var.0 as usize] {
                        Some(v) if v == lit.positive => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            open += 1;
                            unassigned = Some(*lit);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open, unassigned) {
                    (0, _) => return false,
                    (1, Some(lit)) => {
                        self.assign(lit.var.0 as usize, lit.positive, Reason::Implied);
                        self.propagations += 1;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Undoes the trail up to the most recent unflipped decision and flips
    /// it. Returns false when no such decision remains.
    fn backtrack(&mut self) -> bool {
        while let Some((var, reason)) = self.trail.pop() {
            let previous = self.values[var].take();
            if let Reason::Decision { flipped: false } = reason {
                let v = previous.expect("trail entries are assigned");
                self.assign(var, !v, Reason::Decision { flipped: true });
                return true;
            }
        }
        false
    }

    /// Returns a total model indexed by variable id, or `None` if the clause
    /// set is unsatisfiable.
    pub fn solve(mut self) -> Option<Vec<bool>> {
        loop {
            if !self.propagate() {
                if !self.backtrack() {
                    return None;
                }
                continue;
            }
            match self.values.iter().position(Option::is_none) {
                Some(var) => {
                    self.decisions += 1;
                    self.assign(var, false, Reason::Decision { flipped: false });
                }
                None => {
                    return Some(self.values.iter().map(|v| v.unwrap_or(false)).collect());
                }
            }
        }
    }
}

/// Convenience wrapper: model of `cnf` or `None`.
pub fn solve(cnf: &Cnf) -> Option<Vec<bool>> {
    Solver::new(cnf).solve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propcore::cnf::{Lit, Var, VarInfo};

    fn cnf(nvars: usize, clauses: &[&[i32]]) -> Cnf {
        Cnf {
            vars: vec![VarInfo::Aux; nvars],
            clauses: clauses
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|&l| {
                            let v = Var(l.unsigned_abs() - 1);
                            if l > 0 {
                                Lit::pos(v)
                            } else {
                                Lit::neg(v)
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    #[test]
    fn empty_clause_set_is_sat() {
        assert!(solve(&cnf(0, &[])).is_some());
    }

    #[test]
    fn empty_clause_is_unsat() {
        assert!(solve(&cnf(1, &[&[]])).is_none());
    }

    #[test]
    fn contradictory_units() {
        assert!(solve(&cnf(1, &[&[1], &[-1]])).is_none());
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsat() {
        // p_ij: pigeon i in hole j, var = 2*i + j + 1
        let v = |i: i32, j: i32| 2 * i + j + 1;
        let mut clauses: Vec<Vec<i32>> = (0..3).map(|i| vec![v(i, 0), v(i, 1)]).collect();
        for j in 0..2 {
            for a in 0..3 {
                for b in (a + 1)..3 {
                    clauses.push(vec![-v(a, j), -v(b, j)]);
                }
            }
        }
        let refs: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
        assert!(solve(&cnf(6, &refs)).is_none());
    }

    #[test]
    fn model_satisfies_clauses() {
        let c = cnf(3, &[&[1, 2], &[-1, 3], &[-3, -2]]);
        let m = solve(&c).unwrap();
        assert!(c.satisfied_by(&m));
    }

    #[test]
    fn deterministic_prefers_false() {
        let c = cnf(2, &[&[1, 2]]);
        assert_eq!(solve(&c).unwrap(), vec![false, true]);
    }
}
