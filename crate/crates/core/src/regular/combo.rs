use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::coeff::{binomial, Q};
use crate::error::{Error, Result};
use crate::words::Alphabet;

/// An elementary star: `(a x0 + b x1)*` over X, or `(c y_r)*` over Y.
///
/// Over Y the parameter is `c = t^r`, so `(t^r y_r)*` is stored as `Y { r, c }`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StarAtom {
    X { a: Q, b: Q },
    Y { r: u32, c: Q },
}

impl StarAtom {
    pub fn x0(t: Q) -> Self {
        StarAtom::X { a: t, b: Q::zero() }
    }

    pub fn x1(t: Q) -> Self {
        StarAtom::X { a: Q::zero(), b: t }
    }

    pub fn y(r: u32, c: Q) -> Self {
        assert!(r >= 1, "y_0 is not a letter");
        StarAtom::Y { r, c }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            StarAtom::X { .. } => Alphabet::X,
            StarAtom::Y { .. } => Alphabet::Y,
        }
    }

    /// True for the star of the zero series, which is the constant 1.
    pub fn is_trivial(&self) -> bool {
        match self {
            StarAtom::X { a, b } => a.is_zero() && b.is_zero(),
            StarAtom::Y { c, .. } => c.is_zero(),
        }
    }
}

fn fmt_scaled(f: &mut fmt::Formatter<'_>, t: &Q, letter: &str) -> fmt::Result {
    if t.is_one() {
        write!(f, "{letter}")
    } else if *t == -Q::one() {
        write!(f, "-{letter}")
    } else {
        write!(f, "{t}{letter}")
    }
}

impl fmt::Display for StarAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarAtom::X { a, b } => {
                write!(f, "(")?;
                if !a.is_zero() {
                    fmt_scaled(f, a, "x0")?;
                }
                if !b.is_zero() {
                    if !a.is_zero() {
                        write!(f, "+")?;
                    }
                    fmt_scaled(f, b, "x1")?;
                }
                write!(f, ")*")
            }
            StarAtom::Y { r, c } => {
                write!(f, "(")?;
                fmt_scaled(f, c, &format!("y{r}"))?;
                write!(f, ")*")
            }
        }
    }
}

/// A finite rational combination `constant + sum c_i atom_i` of stars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCombo {
    alphabet: Alphabet,
    constant: Q,
    terms: BTreeMap<StarAtom, Q>,
}

impl StarCombo {
    pub fn zero(alphabet: Alphabet) -> Self {
        StarCombo {
            alphabet,
            constant: Q::zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alphabet: Alphabet, c: Q) -> Self {
        let mut s = Self::zero(alphabet);
        s.constant = c;
        s
    }

    pub fn atom(atom: StarAtom) -> Self {
        let mut s = Self::zero(atom.alphabet());
        s.add_atom(atom, Q::one());
        s
    }

    /// `sum_k coeffs[k-1] (k x1)*` over X, or `(k y1)*` over Y.
    pub fn from_integer_stars(alphabet: Alphabet, constant: Q, coeffs: &[Q]) -> Self {
        let mut s = Self::constant(alphabet, constant);
        for (i, c) in coeffs.iter().enumerate() {
            let k = Q::from_integer((i as i64 + 1).into());
            let atom = match alphabet {
                Alphabet::X => StarAtom::x1(k),
                Alphabet::Y => StarAtom::y(1, k),
            };
            s.add_atom(atom, c.clone());
        }
        s
    }

    pub fn add_atom(&mut self, atom: StarAtom, c: Q) {
        assert_eq!(
            atom.alphabet(),
            self.alphabet,
            "atom over the wrong alphabet"
        );
        if c.is_zero() {
            return;
        }
        if atom.is_trivial() {
            self.constant += c;
            return;
        }
        let e = self.terms.entry(atom.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&atom);
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn constant_term(&self) -> &Q {
        &self.constant
    }

    pub fn terms(&self) -> impl Iterator<Item = (&StarAtom, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, atom: &StarAtom) -> Q {
        if atom.is_trivial() {
            return self.constant.clone();
        }
        self.terms.get(atom).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficients on `(x1)*, (2 x1)*, ..., (K x1)*` (or `(k y1)*`), when the
    /// combination only involves those atoms.
    pub fn integer_star_coeffs(&self) -> Option<Vec<Q>> {
        let mut out: Vec<Q> = Vec::new();
        for (atom, c) in &self.terms {
            let k = match atom {
                StarAtom::X { a, b } if a.is_zero() => b,
                StarAtom::Y { r: 1, c } => c,
                _ => return None,
            };
            if !k.is_integer() || !k.is_positive() {
                return None;
            }
            let k = k.to_integer().to_string().parse::<usize>().ok()?;
            if out.len() < k {
                out.resize(k, Q::zero());
            }
            out[k - 1] = c.clone();
        }
        Some(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut s = Self::constant(self.alphabet, &self.constant * c);
        for (a, v) in &self.terms {
            s.add_atom(a.clone(), v * c);
        }
        s
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut s = self.clone();
        s.constant += &other.constant;
        for (a, v) in &other.terms {
            s.add_atom(a.clone(), v.clone());
        }
        Ok(s)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }

    /// Shuffle product over X, where `(a x0 + b x1)* ⧢ (a' x0 + b' x1)*`
    /// is `((a+a') x0 + (b+b') x1)*`.
    pub fn shuffle(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.alphabet != Alphabet::X {
            return Err(Error::AlphabetMismatch(
                "star shuffle products are closed only over X".into(),
            ));
        }
        let one = StarAtom::X {
            a: Q::zero(),
            b: Q::zero(),
        };
        let expand = |s: &Self| -> Vec<(StarAtom, Q)> {
            let mut v: Vec<(StarAtom, Q)> = s
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect();
            if !s.constant.is_zero() {
                v.push((one.clone(), s.constant.clone()));
            }
            v
        };
        let mut out = Self::zero(Alphabet::X);
        for (p, cp) in expand(self) {
            for (q, cq) in expand(other) {
                let (StarAtom::X { a: a1, b: b1 }, StarAtom::X { a: a2, b: b2 }) = (&p, &q) else {
                    unreachable!("checked alphabet")
                };
                out.add_atom(
                    StarAtom::X {
                        a: a1 + a2,
                        b: b1 + b2,
                    },
                    &cp * &cq,
                );
            }
        }
        Ok(out)
    }

    /// `(x1*)^{⧢k} = (k x1)*`: maps `sum_k p_k u^k` to a combination over X.
    pub fn from_x1_polynomial(p: &[Q]) -> Self {
        let mut s = Self::constant(Alphabet::X, p.first().cloned().unwrap_or_else(Q::zero));
        for (k, c) in p.iter().enumerate().skip(1) {
            s.add_atom(StarAtom::x1(Q::from_integer((k as i64).into())), c.clone());
        }
        s
    }

    /// The same coefficients on `(k y1)*` in place of `(k x1)*`.
    pub fn to_harmonic(&self) -> Result<Self> {
        let mut s = Self::constant(Alphabet::Y, self.constant.clone());
        for (atom, c) in &self.terms {
            match atom {
                StarAtom::X { a, b } if a.is_zero() => {
                    s.add_atom(StarAtom::y(1, b.clone()), c.clone())
                }
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "{atom} has no harmonic counterpart"
                    )))
                }
            }
        }
        Ok(s)
    }

    /// First `n` Taylor coefficients at `z = 0` of the polylogarithm, using
    /// `Li_{(k x1)*}(z) = (1 - z)^{-k}`; only integer `x1`-stars are accepted.
    pub fn li_taylor(&self, n: usize) -> Result<Vec<Q>> {
        if self.alphabet != Alphabet::X {
            return Err(Error::AlphabetMismatch(
                "expected a combination over X".into(),
            ));
        }
        let coeffs = self
            .integer_star_coeffs()
            .ok_or_else(|| Error::InvalidArgument("only (k x1)* atoms with k >= 1".into()))?;
        let mut out = vec![Q::zero(); n];
        if n > 0 {
            out[0] = self.constant.clone();
        }
        for (i, c) in coeffs.iter().enumerate() {
            let k = i as u64 + 1;
            for (m, o) in out.iter_mut().enumerate() {
                // (1 - z)^{-k} = sum_m C(m + k - 1, k - 1) z^m
                *o += c * Q::from_integer(binomial(m as u64 + k - 1, k - 1));
            }
        }
        Ok(out)
    }

    /// The singular expansion of the polylogarithm at `z -> 1` in
    /// `eps = 1 - z`; `(k x1)*` contributes `eps^{-k}`.
    pub fn scale_expansion(&self) -> Result<ScaleExpansion> {
        let coeffs = self
            .integer_star_coeffs()
            .filter(|_| self.alphabet == Alphabet::X)
            .ok_or_else(|| Error::InvalidArgument("only (k x1)* atoms with k >= 1".into()))?;
        let mut e = ScaleExpansion::zero();
        e.add(0, 0, self.constant.clone());
        for (i, c) in coeffs.iter().enumerate() {
            e.add(-(i as i64 + 1), 0, c.clone());
        }
        Ok(e)
    }
}

impl fmt::Display for StarCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut put = |f: &mut fmt::Formatter<'_>, c: &Q, body: Option<&StarAtom>| -> fmt::Result {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match body {
                None => write!(f, "{mag}"),
                Some(a) if mag.is_one() => write!(f, "{a}"),
                Some(a) => write!(f, "{mag}{a}"),
            }
        };
        if !self.constant.is_zero() {
            put(f, &self.constant, None)?;
        }
        for (a, c) in &self.terms {
            put(f, c, Some(a))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `sum c_{a,b} eps^a log^b(eps)`, finitely supported.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScaleExpansion {
    terms: BTreeMap<(i64, u32), Q>,
}

impl ScaleExpansion {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, u32), Q)>) -> Self {
        let mut e = Self::zero();
        for ((a, b), c) in terms {
            e.add(a, b, c);
        }
        e
    }

    /// `Li_{x1^n}(z) = (-log eps)^n / n!`.
    pub fn li_x1_power(n: u32) -> Self {
        let sign = if n.is_multiple_of(2) {
            Q::one()
        } else {
            -Q::one()
        };
        Self::from_terms([((0, n), sign / crate::coeff::factorial(n as u64))])
    }

    pub fn add(&mut self, a: i64, b: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: i64, b: u32) -> Q {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u32), &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The coefficient of `eps^0 log^0(eps)`.
pub fn finite_part(e: &ScaleExpansion) -> Q {
    e.coeff(0, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{q, qi};

    #[test]
    fn trivial_atoms_become_constants() {
        let mut s = StarCombo::zero(Alphabet::X);
        s.add_atom(StarAtom::x1(qi(0)), qi(3));
        s.add_atom(StarAtom::x1(qi(2)), qi(1));
        s.add_atom(StarAtom::x1(qi(2)), qi(-1));
        assert_eq!(s, StarCombo::constant(Alphabet::X, qi(3)));
    }

    #[test]
    fn display() {
        let s = StarCombo::from_integer_stars(Alphabet::X, qi(0), &[qi(-1), qi(5)]);
        assert_eq!(s.to_string(), "-(x1)* + 5(2x1)*");
        let y = StarCombo::atom(StarAtom::y(2, q(-1, 4)));
        assert_eq!(y.to_string(), "(-1/4y2)*");
        assert_eq!(StarCombo::zero(Alphabet::Y).to_string(), "0");
    }

    #[test]
    fn shuffle_of_x1_stars_adds_parameters() {
        let u = StarCombo::atom(StarAtom::x1(qi(1)));
        let p = u.add(&StarCombo::constant(Alphabet::X, qi(-1))).unwrap();
        let sq = p.shuffle(&p).unwrap();
        assert_eq!(
            sq,
            StarCombo::from_integer_stars(Alphabet::X, qi(1), &[qi(-2), qi(1)])
        );
        let m = StarCombo::atom(StarAtom::x0(q(1, 2))).shuffle(&u).unwrap();
        assert_eq!(
            m,
            StarCombo::atom(StarAtom::X {
                a: q(1, 2),
                b: qi(1)
            })
        );
    }

    #[test]
    fn li_of_minus_one() {
        // z/(1-z)^2 = sum n z^n
        let s = StarCombo::from_integer_stars(Alphabet::X, qi(0), &[qi(-1), qi(1)]);
        let t = s.li_taylor(6).unwrap();
        assert_eq!(t, (0..6).map(qi).collect::<Vec<_>>());
    }

    #[test]
    fn finite_parts() {
        let e = ScaleExpansion::from_terms([((-1, 0), qi(3)), ((0, 0), qi(7))]);
        assert_eq!(finite_part(&e), qi(7));
        assert_eq!(finite_part(&ScaleExpansion::li_x1_power(1)), qi(0));
        assert_eq!(ScaleExpansion::li_x1_power(1).coeff(0, 1), qi(-1));
        assert_eq!(finite_part(&ScaleExpansion::zero()), qi(0));
    }
}
