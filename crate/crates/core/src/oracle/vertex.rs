//! Independent feasibility check by enumerating every basis of the
//! equality form. Exponential; only used on small vocabularies.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::encode::{LinearSystem, Relation};

/// Integer arithmetic that may refuse an operation (overflow).
trait Exact: Sized + Clone {
    fn unit() -> Self;
    fn vanishes(&self) -> bool;
    fn signum(&self) -> i32;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Option<Self>;
}

impl Exact for i128 {
    fn unit() -> Self {
        1
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn signum(&self) -> i32 {
        i128::signum(*self) as i32
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        (self.checked_rem(*o)? == 0).then(|| self / o)
    }
}

impl Exact for BigInt {
    fn unit() -> Self {
        One::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
}

enum Solve<T> {
    Singular,
    /// `x = numerators / denominator`.
    Solution(Vec<T>, T),
}

/// Fraction-free elimination on `[a | b]`. `None` means arithmetic failed.
fn bareiss<T: Exact>(mut m: Vec<Vec<T>>) -> Option<Solve<T>> {
    let n = m.len();
    let mut prev = T::unit();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].vanishes()) else {
            return Some(Solve::Singular);
        };
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = m[i][j].mul(&m[k][k])?.sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = v.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    let mut num: Vec<T> = vec![T::unit(); n];
    for i in (0..n).rev() {
        let mut acc = m[i][n].mul(&d)?;
        for j in i + 1..n {
            acc = acc.sub(&m[i][j].mul(&num[j])?)?;
        }
        num[i] = acc.div_exact(&m[i][i])?;
    }
    Some(Solve::Solution(num, d))
}

/// Result of a vertex search: `None` if no vertex exists (infeasible),
/// otherwise whether some vertex has `t > 0`.
pub fn strictly_feasible(sys: &LinearSystem) -> Option<bool> {
    // Equality form with one slack column per inequality.
    let n_struct = sys.num_vars();
    let n_ineq = sys
        .constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let width = n_struct + n_ineq;
    let mut rows: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    let mut next = n_struct;
    for c in &sys.constraints {
        let lcm = c
            .coeffs
            .iter()
            .chain(std::iter::once(&c.rhs))
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scale = |v: &crate::modal::Rational| (v * &lcm).to_integer();
        let mut row = vec![BigInt::zero(); width];
        for (j, v) in c.coeffs.iter().enumerate() {
            row[j] = scale(v);
        }
        match c.relation {
            Relation::Le => row[next] = BigInt::one(),
            Relation::Ge => row[next] = -BigInt::one(),
            Relation::Eq => {}
        }
        if c.relation != Relation::Eq {
            next += 1;
        }
        rows.push((row, scale(&c.rhs)));
    }

    // Presolve: a zero-rhs row whose coefficients share one sign forces
    // every column it touches to zero.
    let mut alive = vec![true; width];
    loop {
        let forced = rows.iter().position(|(row, rhs)| {
            rhs.is_zero()
                && row.iter().any(|v| !v.is_zero())
                && (row.iter().all(|v| !v.is_negative()) || row.iter().all(|v| !v.is_positive()))
        });
        let Some(i) = forced else { break };
        let (row, _) = rows.remove(i);
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                alive[j] = false;
            }
        }
        for (r, _) in rows.iter_mut() {
            for (j, v) in r.iter_mut().enumerate() {
                if !alive[j] {
                    *v = BigInt::zero();
                }
            }
        }
    }
    let cols: Vec<usize> = (0..width).filter(|&j| alive[j]).collect();

    // Keep an independent subset of rows; detect inconsistent ones.
    let mut basis_rows: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    let mut reduced: Vec<Vec<crate::modal::Rational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for (row, rhs) in &rows {
        let mut v: Vec<crate::modal::Rational> = cols
            .iter()
            .map(|&j| crate::modal::Rational::from_integer(row[j].clone()))
            .chain(std::iter::once(crate::modal::Rational::from_integer(
                rhs.clone(),
            )))
            .collect();
        for (r, &p) in reduced.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone() / &r[p];
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &f * y;
                }
            }
        }
        match (0..cols.len()).find(|&j| !v[j].is_zero()) {
            Some(p) => {
                reduced.push(v);
                pivots.push(p);
                basis_rows.push((cols.iter().map(|&j| row[j].clone()).collect(), rhs.clone()));
            }
            None if !v[cols.len()].is_zero() => return None,
            None => {}
        }
    }

    let m = basis_rows.len();
    let n = cols.len();
    let slack_col = sys
        .has_slack
        .then_some(sys.worlds)
        .and_then(|t| cols.iter().position(|&j| j == t));
    if m == 0 {
        return Some(false);
    }
    let small: Option<Vec<(Vec<i128>, i128)>> = basis_rows
        .iter()
        .map(|(r, b)| {
            let r: Option<Vec<i128>> = r.iter().map(|v| v.to_i128()).collect();
            Some((r?, b.to_i128()?))
        })
        .collect();

    let mut feasible = false;
    let mut pick: Vec<usize> = (0..m).collect();
    loop {
        let verdict = match &small {
            Some(rows) => check_basis(rows, &pick, slack_col)
                .or_else(|| check_basis(&basis_rows, &pick, slack_col)),
            None => check_basis(&basis_rows, &pick, slack_col),
        }
        .expect("big-integer arithmetic cannot fail");
        match verdict {
            Vertex::Positive => return Some(true),
            Vertex::Feasible => feasible = true,
            Vertex::None => {}
        }
        // Next m-combination of 0..n in lexicographic order.
        let Some(i) = (0..m).rev().find(|&i| pick[i] != i + n - m) else {
            break;
        };
        pick[i] += 1;
        for k in i + 1..m {
            pick[k] = pick[k - 1] + 1;
        }
    }
    feasible.then_some(false)
}

enum Vertex {
    None,
    Feasible,
    Positive,
}

fn check_basis<T: Exact>(
    rows: &[(Vec<T>, T)],
    pick: &[usize],
    slack_col: Option<usize>,
) -> Option<Vertex> {
    let aug: Vec<Vec<T>> = rows
        .iter()
        .map(|(r, b)| {
            pick.iter()
                .map(|&j| r[j].clone())
                .chain(std::iter::once(b.clone()))
                .collect()
        })
        .collect();
    Some(match bareiss(aug)? {
        Solve::Singular => Vertex::None,
        Solve::Solution(num, d) => {
            let s = d.signum();
            if num.iter().any(|x| x.signum() * s < 0) {
                Vertex::None
            } else if let Some(i) = slack_col.and_then(|t| pick.iter().position(|&j| j == t)) {
                if num[i].signum() * s > 0 {
                    Vertex::Positive
                } else {
                    Vertex::Feasible
                }
            } else {
                Vertex::Feasible
            }
        }
    })
}
