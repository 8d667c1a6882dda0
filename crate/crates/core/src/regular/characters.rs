use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::{factorial, Q};
use crate::error::{Error, Result};
use crate::ncalg::{NcPoly, TruncSeries};
use crate::special::{ell_r_power, mzv, Approx, Complex, Real};
use crate::words::{pi_y, Alphabet, Letter, Word};

use super::{StarAtom, StarCombo};

/// A character value: exact when every ingredient is rational.
#[derive(Clone, Debug)]
pub enum CharValue {
    Exact(Q),
    Approx(Approx<Real>),
}

impl CharValue {
    pub fn exact(&self) -> Option<&Q> {
        match self {
            CharValue::Exact(q) => Some(q),
            CharValue::Approx(_) => None,
        }
    }

    pub fn to_real(&self, prec: usize) -> Real {
        match self {
            CharValue::Exact(q) => Real::from_q(q, prec),
            CharValue::Approx(a) => a.value.with_prec(prec),
        }
    }

    pub fn bound(&self) -> f64 {
        match self {
            CharValue::Exact(_) => 0.0,
            CharValue::Approx(a) => a.bound,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            CharValue::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            CharValue::Approx(a) => a.value.to_f64(),
        }
    }

    fn add_scaled(self, other: CharValue, c: &Q, prec: usize) -> CharValue {
        match (self, other) {
            (CharValue::Exact(a), CharValue::Exact(b)) => CharValue::Exact(a + b * c),
            (a, b) => {
                let cr = Real::from_q(c, prec);
                let bound = a.bound() + b.bound() * c.abs().to_f64().unwrap_or(f64::MAX);
                CharValue::Approx(Approx {
                    value: a.to_real(prec) + &b.to_real(prec) * &cr,
                    bound,
                    terms: 0,
                })
            }
        }
    }

    fn mul(self, other: CharValue, prec: usize) -> CharValue {
        match (self, other) {
            (CharValue::Exact(a), CharValue::Exact(b)) => CharValue::Exact(a * b),
            (a, b) => {
                let (x, y) = (a.to_real(prec), b.to_real(prec));
                let bound = a.bound() * y.abs().to_f64()
                    + b.bound() * x.abs().to_f64()
                    + a.bound() * b.bound();
                CharValue::Approx(Approx {
                    value: &x * &y,
                    bound,
                    terms: 0,
                })
            }
        }
    }
}

fn expect_x(c: &StarCombo) -> Result<()> {
    if c.alphabet() != Alphabet::X {
        return Err(Error::AlphabetMismatch(
            "zeta_shuffle needs a combination over X".into(),
        ));
    }
    Ok(())
}

/// `zeta_⧢` on a star combination: every star `(a x0 + b x1)*` maps to 1.
pub fn zeta_shuffle_char(c: &StarCombo) -> Result<Q> {
    expect_x(c)?;
    Ok(c.terms()
        .fold(c.constant_term().clone(), |acc, (_, v)| acc + v))
}

/// `zeta_⧢(c + p)` where `p` is a polynomial on convergent words
/// (`x0 X* x1`) or constants; convergent words map to their MZV.
pub fn zeta_shuffle_char_with(
    c: &StarCombo,
    p: &NcPoly<Q>,
    err: f64,
    prec: usize,
) -> Result<CharValue> {
    let base = zeta_shuffle_char(c)?;
    if p.alphabet() != Alphabet::X {
        return Err(Error::AlphabetMismatch(
            "polynomial part must be over X".into(),
        ));
    }
    let words: Vec<(&Word, &Q)> = p.terms().filter(|(w, _)| !w.is_empty()).collect();
    let mut value = CharValue::Exact(base + p.constant_term());
    for (w, _) in &words {
        let l = w.letters();
        if l[0] != Letter::x(0) || l[l.len() - 1] != Letter::x(1) {
            return Err(Error::DivergentWord(w.to_string()));
        }
    }
    let each = err / words.len().max(1) as f64;
    for (w, coef) in words {
        let z = mzv(
            &pi_y(w)?,
            each / (1.0 + coef.abs().to_f64().unwrap_or(f64::MAX)),
            prec,
        )?;
        value = value.add_scaled(CharValue::Approx(z), coef, prec);
    }
    Ok(value)
}

fn rounding_bound(v: &Real, prec: usize) -> f64 {
    v.abs().to_f64().max(1.0) * 2f64.powi(8 - prec as i32)
}

/// `gamma_•((t^r y_r)*) = Gamma_{y_r}^{-1}(1 + t) = exp(l_r(t))`, with the atom
/// given by `c = t^r`. Integer `c` on `y_1` gives `1/c!` exactly (0 for `c < 0`).
pub fn gamma_atom(atom: &StarAtom, prec: usize) -> Result<CharValue> {
    let StarAtom::Y { r, c } = atom else {
        return Err(Error::AlphabetMismatch(format!(
            "{atom} is not a star over Y"
        )));
    };
    if c.is_zero() {
        return Ok(CharValue::Exact(Q::one()));
    }
    if *r == 1 && c.is_integer() {
        if c.is_negative() {
            return Ok(CharValue::Exact(Q::zero()));
        }
        let n: u64 = c
            .to_integer()
            .try_into()
            .map_err(|_| Error::InvalidArgument(format!("{c} too large")))?;
        return Ok(CharValue::Exact(factorial(n).recip()));
    }
    if c.abs() >= Q::one() {
        return Err(Error::OutOfDomain(format!(
            "{atom}: need |t| < 1 or an integer t on y1"
        )));
    }
    let wp = prec + 16;
    let ell = ell_r_power(*r, &Complex::real(Real::from_q(c, wp)), wp)?;
    let v = ell.re.exp().with_prec(prec);
    Ok(CharValue::Approx(Approx {
        bound: rounding_bound(&v, prec),
        value: v,
        terms: 0,
    }))
}

/// `gamma_•` extended linearly over a star combination on Y.
pub fn gamma_char(c: &StarCombo, prec: usize) -> Result<CharValue> {
    if c.alphabet() != Alphabet::Y {
        return Err(Error::AlphabetMismatch(
            "gamma needs a combination over Y".into(),
        ));
    }
    let mut acc = CharValue::Exact(c.constant_term().clone());
    for (atom, coef) in c.terms() {
        acc = acc.add_scaled(gamma_atom(atom, prec)?, coef, prec);
    }
    Ok(acc)
}

/// A stuffle product `(c_1 y_{r_1})* ⧺ ... ⧺ (c_n y_{r_n})*` of elementary stars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCharInput {
    atoms: Vec<StarAtom>,
}

impl GammaCharInput {
    pub fn new(atoms: Vec<StarAtom>) -> Result<Self> {
        if let Some(a) = atoms.iter().find(|a| a.alphabet() != Alphabet::Y) {
            return Err(Error::AlphabetMismatch(format!("{a} is not a star over Y")));
        }
        Ok(GammaCharInput { atoms })
    }

    pub fn atoms(&self) -> &[StarAtom] {
        &self.atoms
    }

    /// The product as a single star `(sum_s a_s y_s)*`: the coefficients of
    /// `prod_i (1 + c_i u^{r_i}) - 1`.
    pub fn letter_coeffs(&self) -> BTreeMap<u32, Q> {
        let mut p: BTreeMap<u32, Q> = BTreeMap::from([(0, Q::one())]);
        for a in &self.atoms {
            let StarAtom::Y { r, c } = a else {
                unreachable!("checked alphabet")
            };
            let mut next = p.clone();
            for (e, v) in &p {
                *next.entry(e + r).or_insert_with(Q::zero) += v * c;
            }
            p = next;
        }
        p.remove(&0);
        p.retain(|_, v| !v.is_zero());
        p
    }

    /// The product expanded as a series truncated at `max_weight`.
    pub fn series(&self, max_weight: usize) -> Result<TruncSeries<Q>> {
        let mut acc = TruncSeries::one(Alphabet::Y, max_weight);
        for a in &self.atoms {
            let StarAtom::Y { r, c } = a else {
                unreachable!("checked alphabet")
            };
            let s = TruncSeries::new(NcPoly::term(Word::from_y(&[*r]), c.clone()), max_weight)
                .star()?;
            acc = acc.stuffle(&s)?;
        }
        Ok(acc)
    }

    /// `gamma_•` of the product, as the product of the atom values.
    pub fn gamma(&self, prec: usize) -> Result<CharValue> {
        let mut acc = CharValue::Exact(Q::one());
        for a in &self.atoms {
            acc = acc.mul(gamma_atom(a, prec)?, prec);
        }
        Ok(acc)
    }
}

/// The star `(sum_s a_s y_s)*` truncated at `max_weight`.
pub fn y_star(coeffs: &BTreeMap<u32, Q>, max_weight: usize) -> Result<TruncSeries<Q>> {
    let mut p = NcPoly::zero(Alphabet::Y);
    for (s, a) in coeffs {
        p.add_term(Word::from_y(&[*s]), a.clone());
    }
    TruncSeries::new(p, max_weight).star()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{q, qi};
    use crate::regular::negindex_to_starcombo;
    use crate::words::Composition;

    fn gamma_of(idx: &str) -> Q {
        let c: Composition = idx.parse().unwrap();
        let h = negindex_to_starcombo(&c).unwrap().to_harmonic().unwrap();
        gamma_char(&h, 128).unwrap().exact().unwrap().clone()
    }

    #[test]
    fn gamma_on_negative_indices() {
        assert_eq!(gamma_of("(-1,-1)"), q(11, 24));
        assert_eq!(gamma_of("(-2,-1)"), q(-73, 120));
        assert_eq!(gamma_of("(-1,-2)"), q(-67, 120));
    }

    #[test]
    fn zeta_shuffle_on_negative_indices() {
        for idx in ["(-1,-1)", "(-1,-2)", "(-2,-1)"] {
            let c = negindex_to_starcombo(&idx.parse().unwrap()).unwrap();
            assert_eq!(zeta_shuffle_char(&c).unwrap(), qi(0));
        }
        let x1 = StarCombo::atom(StarAtom::x1(qi(1)));
        assert_eq!(zeta_shuffle_char(&x1).unwrap(), qi(1));
    }

    #[test]
    fn convergent_words_and_divergent_words() {
        let p = NcPoly::parse(Alphabet::X, "x0 x1").unwrap();
        let c = StarCombo::atom(StarAtom::x1(q(1, 2)));
        let v = zeta_shuffle_char_with(&c, &p, 1e-20, 128).unwrap();
        let expect = 1.0 + std::f64::consts::PI.powi(2) / 6.0;
        assert!((v.to_f64() - expect).abs() < 1e-12);
        let bad = NcPoly::parse(Alphabet::X, "x1 x0").unwrap();
        assert!(matches!(
            zeta_shuffle_char_with(&c, &bad, 1e-10, 64),
            Err(Error::DivergentWord(_))
        ));
    }

    #[test]
    fn gamma_atoms() {
        assert_eq!(
            gamma_atom(&StarAtom::y(1, qi(3)), 64).unwrap().exact(),
            Some(&q(1, 6))
        );
        assert_eq!(
            gamma_atom(&StarAtom::y(1, qi(-2)), 64).unwrap().exact(),
            Some(&qi(0))
        );
        assert!(gamma_atom(&StarAtom::y(1, q(3, 2)), 64).is_err());
        assert!(gamma_atom(&StarAtom::x1(qi(1)), 64).is_err());
        // 1/Gamma(3/2) = 2/sqrt(pi)
        let v = gamma_atom(&StarAtom::y(1, q(1, 2)), 128).unwrap().to_f64();
        assert!((v - 2.0 / std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn product_of_stars_is_a_single_star() {
        let g =
            GammaCharInput::new(vec![StarAtom::y(1, q(-1, 2)), StarAtom::y(1, q(-1, 3))]).unwrap();
        let coeffs = g.letter_coeffs();
        assert_eq!(coeffs, BTreeMap::from([(1, q(-5, 6)), (2, q(1, 6))]));
        assert_eq!(g.series(6).unwrap(), y_star(&coeffs, 6).unwrap());
    }
}
