//! Coefficient rings for noncommutative polynomials and series.
//!
//! Three rings are provided: exact rationals ([`Q`]), multivariate polynomials
//! over the rationals used for formal parameters such as `t`, `a`, `b`
//! ([`QPoly`]) and rationals with adjoined roots of unity ([`Cyclo`]).

mod cyclo;
mod poly;

use std::fmt::{Debug, Display};
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use cyclo::Cyclo;
pub use poly::QPoly;

pub type Q = BigRational;

/// A commutative ring containing the rationals, with decidable equality.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + 'static
{
    fn from_rational(q: &Q) -> Self;

    /// Parses one multiplicative factor of a coefficient, e.g. `3/2` or `t^2`.
    fn parse_factor(s: &str) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Q::from_integer(BigInt::from(n)))
    }

    fn scale(&self, q: &Q) -> Self {
        self.clone() * Self::from_rational(q)
    }
}

impl Coeff for Q {
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }

    fn parse_factor(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact `n!` as a rational.
pub fn factorial(n: u64) -> Q {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Q::from_integer(acc)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6"), Some(q(-1, 2)));
        assert_eq!(parse_rational("7"), Some(qi(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn small_combinatorics() {
        assert_eq!(factorial(5), qi(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(2, 3), BigInt::zero());
    }
}
