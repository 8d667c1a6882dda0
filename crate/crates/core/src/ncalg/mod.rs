//! Noncommutative polynomials with exact coefficients, their concatenation,
//! shuffle and quasi-shuffle (stuffle) products, weight-truncated series and
//! the decomposition of polynomials over Lyndon words.

mod products;
mod radford;
mod series;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde_json::Value;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

pub use products::{shuffle_words, stuffle_words};
pub use radford::{lyndon_decompose, ShufflePoly};
pub use series::TruncSeries;

/// A finite linear combination of words over one alphabet. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct NcPoly<C> {
    alphabet: Alphabet,
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> NcPoly<C> {
    pub fn zero(alphabet: Alphabet) -> Self {
        NcPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self::monomial(alphabet, Word::empty(), C::one())
    }

    pub fn constant(alphabet: Alphabet, c: C) -> Self {
        Self::monomial(alphabet, Word::empty(), c)
    }

    pub fn monomial(alphabet: Alphabet, w: Word, c: C) -> Self {
        let mut p = Self::zero(alphabet);
        p.add_term(w, c);
        p
    }

    /// `c * w`, taking the alphabet from the (nonempty) word.
    pub fn term(w: Word, c: C) -> Self {
        let a = w
            .alphabet()
            .expect("use NcPoly::constant for the empty word");
        Self::monomial(a, w, c)
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, C::one())
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(Word::letter(l))
    }

    pub fn from_terms(
        alphabet: Alphabet,
        terms: impl IntoIterator<Item = (Word, C)>,
    ) -> Result<Self> {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            if w.alphabet().is_some_and(|a| a != alphabet) {
                return Err(Error::AlphabetMismatch(format!(
                    "{w} is not over {alphabet}"
                )));
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Word::empty())
    }

    /// Largest word weight present (0 for constants and zero).
    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(Word::weight).max().unwrap_or(0)
    }

    /// Lexicographically largest word with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&Word, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.alphabet);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn truncate(&self, max_weight: usize) -> Self {
        NcPoly {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.weight() <= max_weight)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NcPoly<D> {
        let mut out = NcPoly::zero(self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }

    /// Concatenation product.
    pub fn conc(&self, other: &Self) -> Result<Self> {
        self.conc_bounded(other, usize::MAX)
    }

    pub(crate) fn conc_bounded(&self, other: &Self, max_weight: usize) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.alphabet);
        for (u, a) in &self.terms {
            let wu = u.weight();
            for (v, b) in &other.terms {
                if wu + v.weight() <= max_weight {
                    out.add_term(u.concat(v), a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn shuffle(&self, other: &Self) -> Result<Self> {
        self.shuffle_bounded(other, usize::MAX)
    }

    pub(crate) fn shuffle_bounded(&self, other: &Self, max_weight: usize) -> Result<Self> {
        self.check(other)?;
        Ok(self.word_product(other, max_weight, shuffle_words))
    }

    /// Quasi-shuffle with `y_i <> y_j = y_{i+j}`; Y alphabet only.
    pub fn stuffle(&self, other: &Self) -> Result<Self> {
        self.stuffle_bounded(other, usize::MAX)
    }

    pub(crate) fn stuffle_bounded(&self, other: &Self, max_weight: usize) -> Result<Self> {
        self.check(other)?;
        if self.alphabet != Alphabet::Y {
            return Err(Error::StuffleOnX);
        }
        Ok(self.word_product(other, max_weight, stuffle_words))
    }

    fn word_product(
        &self,
        other: &Self,
        max_weight: usize,
        f: fn(&Word, &Word) -> BTreeMap<Word, u64>,
    ) -> Self {
        let mut out = Self::zero(self.alphabet);
        for (u, a) in &self.terms {
            let wu = u.weight();
            for (v, b) in &other.terms {
                // both products are weight-homogeneous
                if wu + v.weight() > max_weight {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for (w, n) in f(u, v) {
                    out.add_term(w, ab.clone() * C::from_int(n as i64));
                }
            }
        }
        out
    }

    /// `(word, coefficient)` pairs in the text encoding of words.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(w, c)| (w.to_string(), c.to_string()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.to_pairs()
                .into_iter()
                .map(|(w, c)| Value::Array(vec![Value::String(w), Value::String(c)]))
                .collect(),
        )
    }

    pub fn from_json(alphabet: Alphabet, v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::parse(0, "expected a JSON array of [word, coefficient] pairs"))?;
        let mut terms = Vec::with_capacity(arr.len());
        for (i, item) in arr.iter().enumerate() {
            let pair = item.as_array().filter(|p| p.len() == 2);
            let (w, c) = match pair.map(|p| (p[0].as_str(), p[1].as_str())) {
                Some((Some(w), Some(c))) => (w, c),
                _ => return Err(Error::parse(i, "expected [word, coefficient]")),
            };
            let coeff = parse_coeff::<C>(c)
                .ok_or_else(|| Error::parse(i, format!("bad coefficient `{c}`")))?;
            terms.push((w.parse::<Word>()?, coeff));
        }
        Self::from_terms(alphabet, terms)
    }

    /// Parses text such as `x0 x1 - 2 x1 x0 + 1/3`, `t y1 + t^2 y2`.
    ///
    /// Terms are separated by `+`/`-`; inside a term, tokens separated by
    /// spaces or `*` are either letters (forming the word, in order) or
    /// coefficient factors.
    pub fn parse(alphabet: Alphabet, s: &str) -> Result<Self> {
        let mut p = Self::zero(alphabet);
        let mut sign_neg = false;
        let mut start = 0;
        let bytes = s.as_bytes();
        let mut depth_ok = false;
        for (i, &b) in bytes.iter().enumerate() {
            let is_sep = (b == b'+' || b == b'-') && !prev_is_exponent(bytes, i);
            if is_sep {
                if depth_ok {
                    p.add_parsed_term(&s[start..i], sign_neg, start)?;
                } else if !s[start..i].trim().is_empty() {
                    return Err(Error::parse(start, "dangling text"));
                }
                sign_neg = b == b'-';
                start = i + 1;
                depth_ok = false;
            } else if !b.is_ascii_whitespace() {
                depth_ok = true;
            }
        }
        if depth_ok {
            p.add_parsed_term(&s[start..], sign_neg, start)?;
        } else if start > 0 {
            return Err(Error::parse(start, "expected a term"));
        }
        Ok(p)
    }

    fn add_parsed_term(&mut self, text: &str, neg: bool, offset: usize) -> Result<()> {
        let mut coeff = C::one();
        let mut letters = Vec::new();
        let mut pos = offset;
        for tok in text.split(|c: char| c.is_whitespace() || c == '*') {
            if tok.is_empty() {
                pos += 1;
                continue;
            }
            if let Ok(l) = tok.parse::<Letter>() {
                letters.push(l);
            } else if tok == "1" && letters.is_empty() {
                // unit word
            } else if let Some(f) = C::parse_factor(tok) {
                coeff = coeff * f;
            } else {
                return Err(Error::parse(pos, format!("unrecognized token `{tok}`")));
            }
            pos += tok.len() + 1;
        }
        let w = Word::new(letters).map_err(|_| Error::parse(offset, "mixed alphabets in term"))?;
        if w.alphabet().is_some_and(|a| a != self.alphabet) {
            return Err(Error::AlphabetMismatch(format!(
                "{w} is not over {}",
                self.alphabet
            )));
        }
        self.add_term(w, if neg { -coeff } else { coeff });
        Ok(())
    }
}

fn prev_is_exponent(bytes: &[u8], i: usize) -> bool {
    i > 0 && bytes[i - 1] == b'^'
}

/// Parses a coefficient written as a signed sum of `*`-separated products of
/// factors, as printed by the coefficient rings.
pub fn parse_coeff<C: Coeff>(s: &str) -> Option<C> {
    let bytes = s.as_bytes();
    let mut acc = C::zero();
    let mut neg = false;
    let mut start = 0;
    let mut seen = false;
    let finish = |text: &str, neg: bool, acc: &mut C| -> Option<()> {
        let mut prod = C::one();
        for f in text.split('*') {
            prod = prod * C::parse_factor(f.trim())?;
        }
        *acc = acc.clone() + if neg { -prod } else { prod };
        Some(())
    };
    for (i, &b) in bytes.iter().enumerate() {
        if (b == b'+' || b == b'-') && !prev_is_exponent(bytes, i) && !prev_is_slash(bytes, i) {
            if seen {
                finish(&s[start..i], neg, &mut acc)?;
                neg = false;
                seen = false;
            }
            if b == b'-' {
                neg = !neg;
            }
            start = i + 1;
        } else if !b.is_ascii_whitespace() {
            seen = true;
        }
    }
    if !seen {
        return None;
    }
    finish(&s[start..], neg, &mut acc)?;
    Some(acc)
}

fn prev_is_slash(bytes: &[u8], i: usize) -> bool {
    bytes[..i].iter().rev().find(|b| !b.is_ascii_whitespace()) == Some(&b'/')
}

impl<C: Coeff> Add for NcPoly<C> {
    type Output = NcPoly<C>;

    /// Panics when the alphabets differ and both sides are nonzero.
    fn add(mut self, rhs: NcPoly<C>) -> NcPoly<C> {
        if self.is_zero() {
            return rhs;
        }
        assert!(
            rhs.is_zero() || rhs.alphabet == self.alphabet,
            "adding polynomials over different alphabets"
        );
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<C: Coeff> Neg for NcPoly<C> {
    type Output = NcPoly<C>;
    fn neg(self) -> NcPoly<C> {
        NcPoly {
            alphabet: self.alphabet,
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl<C: Coeff> Sub for NcPoly<C> {
    type Output = NcPoly<C>;
    fn sub(self, rhs: NcPoly<C>) -> NcPoly<C> {
        let a = self.alphabet;
        let mut out = self + (-rhs);
        if out.is_zero() {
            out.alphabet = a;
        }
        out
    }
}

impl<C: Coeff> fmt::Debug for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coeff> fmt::Display for NcPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else if w.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{qi, QPoly, Q};

    fn px(s: &str) -> NcPoly<Q> {
        NcPoly::parse(Alphabet::X, s).unwrap()
    }

    fn py(s: &str) -> NcPoly<Q> {
        NcPoly::parse(Alphabet::Y, s).unwrap()
    }

    #[test]
    fn conc_examples() {
        assert_eq!(px("x0").conc(&px("x1")).unwrap(), px("x0 x1"));
        assert_eq!(px("x0 + x1").conc(&px("x0")).unwrap(), px("x0 x0 + x1 x0"));
        assert_eq!(py("2 y1").conc(&py("3 y2")).unwrap(), py("6 y1 y2"));
        assert!(px("x0").conc(&py("y1")).is_err());
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(px("x0").shuffle(&px("x1")).unwrap(), px("x0 x1 + x1 x0"));
        assert_eq!(px("x1").shuffle(&px("x1")).unwrap(), px("2 x1 x1"));
        assert_eq!(
            px("x0 x1").shuffle(&px("x1")).unwrap(),
            px("2 x0 x1 x1 + x1 x0 x1")
        );
    }

    #[test]
    fn stuffle_examples() {
        assert_eq!(py("y1").stuffle(&py("y1")).unwrap(), py("2 y1 y1 + y2"));
        assert_eq!(
            py("y2").stuffle(&py("y1")).unwrap(),
            py("y2 y1 + y1 y2 + y3")
        );
        assert_eq!(py("y1").stuffle(&py("1")).unwrap(), py("y1"));
        assert_eq!(px("x0").stuffle(&px("x1")), Err(Error::StuffleOnX));
    }

    #[test]
    fn parse_and_print() {
        let p = px("x0 x1 - 1/2 x1 x0 + 3");
        assert_eq!(
            p.coeff(&"x1 x0".parse().unwrap()),
            Q::new((-1).into(), 2.into())
        );
        assert_eq!(p.constant_term(), qi(3));
        let t: NcPoly<QPoly> = NcPoly::parse(Alphabet::Y, "t y1 + t^2 y2").unwrap();
        assert_eq!(t.coeff(&"y2".parse().unwrap()), QPoly::monomial(0, 2));
        assert!(NcPoly::<Q>::parse(Alphabet::X, "x0 + y1").is_err());
        assert!(NcPoly::<Q>::parse(Alphabet::X, "x0 + ").is_err());
        assert!(matches!(
            NcPoly::<Q>::parse(Alphabet::X, "x0 + q1"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let p = px("x0 x1 - 1/2 x1 x0 + 3");
        let v = p.to_json();
        assert_eq!(NcPoly::from_json(Alphabet::X, &v).unwrap(), p);
        let t: NcPoly<QPoly> = NcPoly::parse(Alphabet::Y, "3/2 t a y1 - t^2 y2").unwrap();
        assert_eq!(NcPoly::from_json(Alphabet::Y, &t.to_json()).unwrap(), t);
    }
}
