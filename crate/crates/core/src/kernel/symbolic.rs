//! Default bounds as linear functions of a shared error `ε`, for knowledge
//! bases too large to instantiate, such as a lottery with a million tickets.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::modal::Rational;

/// `δ = k·ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearBound {
    pub coefficient: BigInt,
}

impl LinearBound {
    /// Propagated error of a default consequence drawing on `defaults`
    /// premises that all carry the same `ε`.
    pub fn uniform(defaults: impl Into<BigInt>) -> Self {
        LinearBound {
            coefficient: defaults.into(),
        }
    }

    pub fn at(&self, eps: &Rational) -> Rational {
        Rational::from_integer(self.coefficient.clone()) * eps
    }

    pub fn vacuous_at(&self, eps: &Rational) -> bool {
        self.at(eps) >= super::half()
    }

    /// Largest `ε` keeping every premise within the kernel precondition,
    /// exclusive: `min(1/k, 1/2)`.
    pub fn precondition_limit(&self) -> Rational {
        let k = Rational::from_integer(self.coefficient.clone());
        let inv = Rational::one() / k;
        inv.min(super::half())
    }
}

impl fmt::Display for LinearBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*eps", self.coefficient)
    }
}

/// Bound of `true ⇒ ⋀¬wᵢ` from `n` lottery premises `true ⇒_ε ¬wᵢ`.
pub fn lottery_bound(n: u64) -> LinearBound {
    LinearBound::uniform(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn million_ticket_lottery_is_vacuous() {
        let b = lottery_bound(1_000_000);
        let eps = r(1, 1_000_000);
        assert_eq!(b.at(&eps), r(1, 1));
        assert!(b.vacuous_at(&eps));
        assert_eq!(b.to_string(), "1000000*eps");
    }

    #[test]
    fn small_lottery_is_informative() {
        let b = lottery_bound(10);
        assert_eq!(b.at(&r(1, 100)), r(1, 10));
        assert!(!b.vacuous_at(&r(1, 100)));
        assert_eq!(b.precondition_limit(), r(1, 10));
    }
}
