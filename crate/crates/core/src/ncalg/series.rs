use std::fmt;

use crate::coeff::{Coeff, Q};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

use super::NcPoly;

/// A formal series known up to (and including) words of weight `max_weight`.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<C> {
    max_weight: usize,
    poly: NcPoly<C>,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn new(poly: NcPoly<C>, max_weight: usize) -> Self {
        TruncSeries {
            max_weight,
            poly: poly.truncate(max_weight),
        }
    }

    pub fn zero(alphabet: Alphabet, max_weight: usize) -> Self {
        Self::new(NcPoly::zero(alphabet), max_weight)
    }

    pub fn one(alphabet: Alphabet, max_weight: usize) -> Self {
        Self::new(NcPoly::one(alphabet), max_weight)
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn alphabet(&self) -> Alphabet {
        self.poly.alphabet()
    }

    pub fn poly(&self) -> &NcPoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> NcPoly<C> {
        self.poly
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.poly.coeff(w)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.poly.terms()
    }

    fn common(&self, other: &Self) -> usize {
        self.max_weight.min(other.max_weight)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.alphabet() != other.alphabet() && !self.poly.is_zero() && !other.poly.is_zero() {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet(),
                other.alphabet()
            )));
        }
        Ok(Self::new(
            self.poly.clone() + other.poly.clone(),
            self.common(other),
        ))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.poly.scale(c), self.max_weight)
    }

    pub fn conc(&self, other: &Self) -> Result<Self> {
        let w = self.common(other);
        Ok(Self::new(self.poly.conc_bounded(&other.poly, w)?, w))
    }

    pub fn shuffle(&self, other: &Self) -> Result<Self> {
        let w = self.common(other);
        Ok(Self::new(self.poly.shuffle_bounded(&other.poly, w)?, w))
    }

    pub fn stuffle(&self, other: &Self) -> Result<Self> {
        let w = self.common(other);
        Ok(Self::new(self.poly.stuffle_bounded(&other.poly, w)?, w))
    }

    fn require_constant(&self, c: C, expected: &'static str) -> Result<()> {
        if self.poly.constant_term() != c {
            return Err(Error::WrongConstantTerm { expected });
        }
        Ok(())
    }

    /// `1 + s + s^2 + ...` under concatenation.
    pub fn star(&self) -> Result<Self> {
        if !self.poly.constant_term().is_zero() {
            return Err(Error::ImproperStar);
        }
        self.power_sum(|a, b| a.conc(b), |_| Some(Q::from_integer(1.into())))
    }

    /// `sum_m s^{stuffle m} / m!`.
    pub fn exp_stuffle(&self) -> Result<Self> {
        self.require_constant(C::zero(), "0")?;
        let mut fact = Q::from_integer(1.into());
        let mut inv = vec![fact.clone()];
        for m in 1..=self.max_weight {
            fact *= Q::from_integer(m.into());
            inv.push(fact.recip());
        }
        self.power_sum(|a, b| a.stuffle(b), |m| Some(inv[m].clone()))
    }

    /// `sum_{m>=1} (-1)^{m-1} (g - 1)^{stuffle m} / m`.
    pub fn log_stuffle(&self) -> Result<Self> {
        self.require_constant(C::one(), "1")?;
        let h = Self::new(
            self.poly.clone() - NcPoly::one(self.alphabet()),
            self.max_weight,
        );
        h.power_sum(
            |a, b| a.stuffle(b),
            |m| {
                (m > 0).then(|| {
                    let s = if m % 2 == 1 { 1 } else { -1 };
                    Q::new(s.into(), (m as i64).into())
                })
            },
        )
    }

    /// `sum_m weight(m) s^m` for a series without constant term; powers
    /// beyond `max_weight` vanish.
    fn power_sum(
        &self,
        mul: impl Fn(&Self, &Self) -> Result<Self>,
        weight: impl Fn(usize) -> Option<Q>,
    ) -> Result<Self> {
        let a = self.alphabet();
        let mut acc = Self::zero(a, self.max_weight);
        let mut pow = Self::one(a, self.max_weight);
        for m in 0..=self.max_weight {
            if pow.poly.is_zero() {
                break;
            }
            if let Some(w) = weight(m) {
                acc = acc.add(&Self::new(
                    pow.poly.map_coeffs(|c| c.scale(&w)),
                    self.max_weight,
                ))?;
            }
            pow = mul(&pow, self)?;
        }
        Ok(acc)
    }
}

impl<C: Coeff> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(weight {})", self.poly, self.max_weight + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::QPoly;

    fn ty(s: &str, w: usize) -> TruncSeries<QPoly> {
        TruncSeries::new(NcPoly::parse(Alphabet::Y, s).unwrap(), w)
    }

    fn qy(s: &str, w: usize) -> TruncSeries<Q> {
        TruncSeries::new(NcPoly::parse(Alphabet::Y, s).unwrap(), w)
    }

    #[test]
    fn star_examples() {
        let s = TruncSeries::<QPoly>::new(NcPoly::parse(Alphabet::X, "t x1").unwrap(), 3);
        let e = NcPoly::parse(Alphabet::X, "1 + t x1 + t^2 x1 x1 + t^3 x1 x1 x1").unwrap();
        assert_eq!(s.star().unwrap().into_poly(), e);

        let s = ty("t y1 + t^2 y2", 2);
        assert_eq!(s.star().unwrap(), ty("1 + t y1 + t^2 y1 y1 + t^2 y2", 2));

        assert_eq!(qy("", 4).star().unwrap(), qy("1", 4));
        assert_eq!(qy("1 + y1", 4).star(), Err(Error::ImproperStar));
    }

    #[test]
    fn exp_log_examples() {
        assert_eq!(
            qy("y1", 2).exp_stuffle().unwrap(),
            qy("1 + y1 + y1 y1 + 1/2 y2", 2)
        );
        let y2 = qy("y2", 6);
        assert_eq!(y2.exp_stuffle().unwrap().log_stuffle().unwrap(), y2);
        assert!(matches!(
            qy("y1", 3).log_stuffle(),
            Err(Error::WrongConstantTerm { .. })
        ));
    }

    #[test]
    fn star_of_y1_is_exp_of_log_series() {
        let l = qy("y1 - 1/2 y2 + 1/3 y3", 3);
        assert_eq!(l.exp_stuffle().unwrap(), qy("y1", 3).star().unwrap());
    }
}
