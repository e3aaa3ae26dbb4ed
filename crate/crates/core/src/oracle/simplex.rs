//! Dense two-phase tableau simplex over exact rationals.
//!
//! Bland's rule picks both the entering column (lowest index with positive
//! reduced cost) and the leaving row (lowest basic index among ratio ties),
//! which rules out cycling.

use num_traits::{Signed, Zero};

use super::encode::{Constraint, Relation};
use crate::modal::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced-cost row; last entry is minus the current objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Sets the reduced-cost row for maximizing `cost`.
    fn load_objective(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = (0..=self.width)
            .map(|j| cost.get(j).cloned().unwrap_or_else(Rational::zero))
            .collect();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost.get(b).cloned().unwrap_or_else(Rational::zero);
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(&self.rows[i]) {
                *o -= &cb * v;
            }
        }
        self.obj = obj;
    }

    /// Maximizes the loaded objective using only columns `< allowed`.
    /// Returns false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| self.obj[j].is_positive());
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximizes `objective · x` subject to `constraints` and `x ≥ 0`.
pub fn maximize(num_vars: usize, constraints: &[Constraint], objective: &[Rational]) -> LpOutcome {
    // Columns: structural, then one slack/surplus per inequality, then one
    // artificial per row that lacks a natural basic column.
    let m = constraints.len();
    let n_slack = constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let n_art = constraints
        .iter()
        .filter(|c| {
            let flip = c.rhs.is_negative();
            match c.relation {
                Relation::Eq => true,
                Relation::Le => flip,
                Relation::Ge => !flip,
            }
        })
        .count();
    let width = num_vars + n_slack + n_art;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (num_vars, num_vars + n_slack);
    for c in constraints {
        let flip = c.rhs.is_negative();
        let sign = |v: &Rational| if flip { -v.clone() } else { v.clone() };
        let mut row = vec![Rational::zero(); width + 1];
        for (j, v) in c.coeffs.iter().enumerate() {
            row[j] = sign(v);
        }
        row[width] = sign(&c.rhs);
        let relation = match (c.relation, flip) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        };
        match relation {
            Relation::Le => {
                row[next_slack] = Rational::from_integer(1.into());
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = Rational::from_integer((-1).into());
                next_slack += 1;
                row[next_art] = Rational::from_integer(1.into());
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::from_integer(1.into());
                basis.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
    }
    let real = num_vars + n_slack;
    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis,
        width,
    };

    // Phase 1: maximize minus the sum of artificials.
    let phase1: Vec<Rational> = (0..width)
        .map(|j| {
            if j >= real {
                Rational::from_integer((-1).into())
            } else {
                Rational::zero()
            }
        })
        .collect();
    t.load_objective(&phase1);
    t.optimize(width);
    if t.obj[width].is_positive() {
        // obj[width] holds minus the objective; positive means Σ art > 0.
        return LpOutcome::Infeasible;
    }
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= real {
            match (0..real).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2.
    t.load_objective(objective);
    if !t.optimize(real) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); num_vars];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < num_vars {
            x[b] = t.rhs(i).clone();
        }
    }
    let value = objective
        .iter()
        .zip(&x)
        .fold(Rational::zero(), |acc, (c, v)| acc + c * v);
    LpOutcome::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn c(coeffs: &[i64], relation: Relation, rhs: i64) -> Constraint {
        Constraint {
            coeffs: coeffs.iter().map(|&v| r(v, 1)).collect(),
            relation,
            rhs: r(rhs, 1),
        }
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let out = maximize(
            2,
            &[
                c(&[1, 0], Relation::Le, 4),
                c(&[0, 2], Relation::Le, 12),
                c(&[3, 2], Relation::Le, 18),
            ],
            &[r(3, 1), r(5, 1)],
        );
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: r(36, 1),
                x: vec![r(2, 1), r(6, 1)]
            }
        );
    }

    #[test]
    fn infeasible_system() {
        let out = maximize(
            1,
            &[c(&[1], Relation::Ge, 2), c(&[1], Relation::Le, 1)],
            &[r(1, 1)],
        );
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_system() {
        let out = maximize(2, &[c(&[1, -1], Relation::Le, 1)], &[r(0, 1), r(1, 1)]);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn equalities_with_redundant_row() {
        let out = maximize(
            2,
            &[
                c(&[1, 1], Relation::Eq, 1),
                c(&[2, 2], Relation::Eq, 2),
                c(&[1, 0], Relation::Ge, 0),
            ],
            &[r(1, 1), r(0, 1)],
        );
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: r(1, 1),
                x: vec![r(1, 1), r(0, 1)]
            }
        );
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example; cycles under the largest-coefficient rule.
        let q = |v: &[(i64, i64)]| v.iter().map(|&(n, d)| r(n, d)).collect::<Vec<_>>();
        let cons = vec![
            Constraint {
                coeffs: q(&[(1, 4), (-8, 1), (-1, 1), (9, 1)]),
                relation: Relation::Le,
                rhs: r(0, 1),
            },
            Constraint {
                coeffs: q(&[(1, 2), (-12, 1), (-1, 2), (3, 1)]),
                relation: Relation::Le,
                rhs: r(0, 1),
            },
            Constraint {
                coeffs: q(&[(0, 1), (0, 1), (1, 1), (0, 1)]),
                relation: Relation::Le,
                rhs: r(1, 1),
            },
        ];
        let out = maximize(4, &cons, &q(&[(3, 4), (-20, 1), (1, 2), (-6, 1)]));
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, r(5, 4)),
            other => panic!("{other:?}"),
        }
    }
}
