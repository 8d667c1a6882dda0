use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Coeff, Q};
use crate::error::Result;
use crate::words::{lyndon_factorize, Alphabet, Word};

use super::NcPoly;

/// A commutative polynomial in Lyndon words, read with the shuffle product.
/// Each key is a sorted (non-increasing) list of Lyndon words; the empty key
/// is the constant monomial.
#[derive(Clone, PartialEq)]
pub struct ShufflePoly<C> {
    alphabet: Alphabet,
    terms: BTreeMap<Vec<Word>, C>,
}

impl<C: Coeff> ShufflePoly<C> {
    pub fn terms(&self) -> impl Iterator<Item = (&[Word], &C)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates every monomial with the shuffle product.
    pub fn expand(&self) -> Result<NcPoly<C>> {
        let mut out = NcPoly::zero(self.alphabet);
        for (m, c) in &self.terms {
            out = out + shuffle_monomial(self.alphabet, m)?.scale(c);
        }
        Ok(out)
    }
}

fn shuffle_monomial<C: Coeff>(alphabet: Alphabet, factors: &[Word]) -> Result<NcPoly<C>> {
    let mut acc = NcPoly::one(alphabet);
    for l in factors {
        acc = acc.shuffle(&NcPoly::monomial(alphabet, l.clone(), C::one()))?;
    }
    Ok(acc)
}

/// Writes `p` as a polynomial in Lyndon words for the shuffle product.
///
/// The lexicographically largest word `w = l1 l2 ... lk` (Lyndon
/// factorization, non-increasing) is also the largest word of
/// `l1 ⧢ ... ⧢ lk`, so subtracting a multiple of that shuffle removes `w`
/// and only introduces smaller words.
pub fn lyndon_decompose<C: Coeff>(p: &NcPoly<C>) -> Result<ShufflePoly<C>> {
    let alphabet = p.alphabet();
    let mut rest = p.clone();
    let mut terms = BTreeMap::new();
    while let Some((w, c)) = rest.leading().map(|(w, c)| (w.clone(), c.clone())) {
        let factors = if w.is_empty() {
            Vec::new()
        } else {
            lyndon_factorize(&w)?
        };
        let prod = shuffle_monomial::<Q>(alphabet, &factors)?;
        let lead = prod.coeff(&w);
        debug_assert_eq!(prod.leading().map(|(u, _)| u), Some(&w));
        debug_assert_eq!(lead, multiplicity_factorials(&factors));
        let k = c.scale(&lead.recip());
        rest = rest - prod.map_coeffs(|q| k.scale(q));
        terms.insert(factors, k);
    }
    Ok(ShufflePoly { alphabet, terms })
}

fn multiplicity_factorials(factors: &[Word]) -> Q {
    let mut acc = Q::from_integer(1.into());
    let mut run = 0i64;
    for (i, f) in factors.iter().enumerate() {
        run = if i > 0 && factors[i - 1] == *f {
            run + 1
        } else {
            1
        };
        acc *= Q::from_integer(run.into());
    }
    acc
}

impl<C: Coeff> fmt::Display for ShufflePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono = if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter()
                        .map(|w| format!("[{w}]"))
                        .collect::<Vec<_>>()
                        .join(" ⧢ ")
                };
                if c.is_one() {
                    mono
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Coeff> fmt::Debug for ShufflePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;

    fn px(s: &str) -> NcPoly<Q> {
        NcPoly::parse(Alphabet::X, s).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn decompose_examples() {
        let d = lyndon_decompose(&px("x1 x0")).unwrap();
        let expected: BTreeMap<Vec<Word>, Q> = [
            (vec![w("x1"), w("x0")], q(1, 1)),
            (vec![w("x0 x1")], q(-1, 1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(d.terms, expected);

        let d = lyndon_decompose(&px("x0 x1")).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.terms[&vec![w("x0 x1")]], q(1, 1));

        let d = lyndon_decompose(&px("x1 x1")).unwrap();
        assert_eq!(d.terms[&vec![w("x1"), w("x1")]], q(1, 2));
    }

    #[test]
    fn round_trip_with_constant() {
        let p = px("3 + x1 x0 x0 - 2 x1 x1 x0 + x0 x1 x1");
        assert_eq!(lyndon_decompose(&p).unwrap().expand().unwrap(), p);
    }
}
