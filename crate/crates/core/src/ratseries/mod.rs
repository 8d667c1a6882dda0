//! Rational series given by linear representations `(beta, mu, eta)`:
//! coefficient extraction, the rational operations, minimization and the
//! exchangeability tests.

mod expr;
mod matrix;
mod minimize;
mod parse;

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use crate::coeff::{Coeff, Q};
use crate::error::{Error, Result};
use crate::ncalg::{parse_coeff, NcPoly, TruncSeries};
use crate::words::{Alphabet, Letter, Word};

pub use expr::{enumerate_exprs, RatExpr};
pub use matrix::Mat;
pub use minimize::{is_exchangeable_rational, is_exchangeable_syntactic, minimize};

/// A linear representation: the coefficient of `w = a1...ak` is
/// `beta * mu(a1) * ... * mu(ak) * eta`. Letters missing from `mu` act as
/// zero.
#[derive(Clone, PartialEq)]
pub struct LinRep<C> {
    alphabet: Alphabet,
    beta: Vec<C>,
    mu: BTreeMap<Letter, Mat<C>>,
    eta: Vec<C>,
}

impl<C: Coeff> LinRep<C> {
    pub fn new(
        alphabet: Alphabet,
        beta: Vec<C>,
        mu: BTreeMap<Letter, Mat<C>>,
        eta: Vec<C>,
    ) -> Result<Self> {
        let n = beta.len();
        if n == 0 || eta.len() != n {
            return Err(Error::InvalidArgument(
                "beta and eta must have equal positive length".into(),
            ));
        }
        for (l, m) in &mu {
            if l.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch(format!(
                    "{l} is not over {alphabet}"
                )));
            }
            if m.rows() != n || m.cols() != n {
                return Err(Error::InvalidArgument(format!(
                    "matrix of {l} is not {n}x{n}"
                )));
            }
        }
        let mu = mu.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(LinRep {
            alphabet,
            beta,
            mu,
            eta,
        })
    }

    /// The constant series `c`.
    pub fn scalar(alphabet: Alphabet, c: C) -> Self {
        LinRep {
            alphabet,
            beta: vec![c],
            mu: BTreeMap::new(),
            eta: vec![C::one()],
        }
    }

    pub fn zero(alphabet: Alphabet) -> Self {
        Self::scalar(alphabet, C::zero())
    }

    /// The polynomial `c * l`.
    pub fn letter(l: Letter, c: C) -> Self {
        let mut m = Mat::zeros(2, 2);
        m.set(0, 1, c);
        LinRep {
            alphabet: l.alphabet(),
            beta: vec![C::one(), C::zero()],
            mu: [(l, m)].into_iter().collect(),
            eta: vec![C::zero(), C::one()],
        }
    }

    /// The conc-character `(sum alpha_x x)*`, of dimension one.
    pub fn conc_character(alphabet: Alphabet, alphas: &[(Letter, C)]) -> Result<Self> {
        let mu = alphas
            .iter()
            .map(|(l, a)| (*l, Mat::from_rows(vec![vec![a.clone()]]).unwrap()))
            .collect();
        Self::new(alphabet, vec![C::one()], mu, vec![C::one()])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self) -> &[C] {
        &self.beta
    }

    pub fn eta(&self) -> &[C] {
        &self.eta
    }

    pub fn mu(&self, l: Letter) -> Option<&Mat<C>> {
        self.mu.get(&l)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.mu.keys().copied()
    }

    pub fn constant_term(&self) -> C {
        matrix::dot(&self.beta, &self.eta)
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

    /// Row vector `beta * mu(w)`.
    pub fn state(&self, w: &Word) -> Result<Vec<C>> {
        if w.alphabet().is_some_and(|a| a != self.alphabet) {
            return Err(Error::AlphabetMismatch(format!(
                "{w} is not over {}",
                self.alphabet
            )));
        }
        let mut v = self.beta.clone();
        for l in w.letters() {
            match self.mu.get(l) {
                Some(m) => v = m.left_apply(&v),
                None => return Ok(vec![C::zero(); self.dim()]),
            }
        }
        Ok(v)
    }

    pub fn coeff(&self, w: &Word) -> Result<C> {
        Ok(matrix::dot(&self.state(w)?, &self.eta))
    }

    /// All coefficients up to weight `max_weight` over the given letters, by
    /// a depth-first walk sharing prefixes.
    pub fn truncation(&self, letters: &[Letter], max_weight: usize) -> Result<TruncSeries<C>> {
        let mut poly = NcPoly::zero(self.alphabet);
        let mut stack = vec![(Vec::new(), 0usize, self.beta.clone())];
        while let Some((word, weight, v)) = stack.pop() {
            let c = matrix::dot(&v, &self.eta);
            poly.add_term(Word::new(word.clone())?, c);
            for &l in letters {
                let wt = weight + l.weight();
                if wt > max_weight {
                    continue;
                }
                if let Some(m) = self.mu.get(&l) {
                    let next = m.left_apply(&v);
                    if next.iter().any(|c| !c.is_zero()) {
                        let mut w = word.clone();
                        w.push(l);
                        stack.push((w, wt, next));
                    }
                }
            }
        }
        Ok(TruncSeries::new(poly, max_weight))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LinRep<D> {
        let g = |v: &[C]| v.iter().map(&f).collect::<Vec<D>>();
        LinRep {
            alphabet: self.alphabet,
            beta: g(&self.beta),
            eta: g(&self.eta),
            mu: self
                .mu
                .iter()
                .map(|(l, m)| {
                    let rows = m.to_rows().iter().map(|r| g(r)).collect();
                    (*l, Mat::from_rows(rows).unwrap())
                })
                .collect(),
        }
    }

    fn all_letters(&self, other: &Self) -> BTreeSet<Letter> {
        self.mu.keys().chain(other.mu.keys()).copied().collect()
    }

    fn mu_or_zero(&self, l: Letter) -> Mat<C> {
        self.mu
            .get(&l)
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.dim(), self.dim()))
    }

    /// Direct sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (n1, n2) = (self.dim(), other.dim());
        let mut mu = BTreeMap::new();
        for l in self.all_letters(other) {
            let mut m = Mat::zeros(n1 + n2, n1 + n2);
            m.place(0, 0, &self.mu_or_zero(l));
            m.place(n1, n1, &other.mu_or_zero(l));
            mu.insert(l, m);
        }
        Self::new(
            self.alphabet,
            [self.beta.clone(), other.beta.clone()].concat(),
            mu,
            [self.eta.clone(), other.eta.clone()].concat(),
        )
    }

    /// Concatenation product: `beta = (beta1, 0)`,
    /// `mu(x) = [[mu1(x), eta1 beta2 mu2(x)], [0, mu2(x)]]`,
    /// `eta = (eta1 (beta2 eta2), eta2)`.
    pub fn conc(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (n1, n2) = (self.dim(), other.dim());
        let link = matrix::outer(&self.eta, &other.beta);
        let mut mu = BTreeMap::new();
        for l in self.all_letters(other) {
            let m2 = other.mu_or_zero(l);
            let mut m = Mat::zeros(n1 + n2, n1 + n2);
            m.place(0, 0, &self.mu_or_zero(l));
            m.place(0, n1, &link.mul(&m2));
            m.place(n1, n1, &m2);
            mu.insert(l, m);
        }
        let c2 = other.constant_term();
        let eta1: Vec<C> = self.eta.iter().map(|e| e.clone() * c2.clone()).collect();
        Self::new(
            self.alphabet,
            [self.beta.clone(), vec![C::zero(); n2]].concat(),
            mu,
            [eta1, other.eta.clone()].concat(),
        )
    }

    fn tensor_vectors(&self, other: &Self) -> (Vec<C>, Vec<C>) {
        let kron = |a: &[C], b: &[C]| {
            a.iter()
                .flat_map(|x| b.iter().map(move |y| x.clone() * y.clone()))
                .collect::<Vec<C>>()
        };
        (kron(&self.beta, &other.beta), kron(&self.eta, &other.eta))
    }

    fn tensor_sum(&self, other: &Self, l: Letter) -> Mat<C> {
        let i1 = Mat::identity(self.dim());
        let i2 = Mat::identity(other.dim());
        self.mu_or_zero(l)
            .kron(&i2)
            .add(&i1.kron(&other.mu_or_zero(l)))
    }

    /// Shuffle product: `mu(x) = mu1(x) ⊗ I + I ⊗ mu2(x)`.
    pub fn shuffle(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (beta, eta) = self.tensor_vectors(other);
        let mu = self
            .all_letters(other)
            .into_iter()
            .map(|l| (l, self.tensor_sum(other, l)))
            .collect();
        Self::new(self.alphabet, beta, mu, eta)
    }

    /// Quasi-shuffle product over Y: the shuffle matrices plus
    /// `sum_{i+j=k} mu1(y_i) ⊗ mu2(y_j)` for `y_k`.
    pub fn stuffle(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.alphabet != Alphabet::Y {
            return Err(Error::StuffleOnX);
        }
        let (beta, eta) = self.tensor_vectors(other);
        let mut mu: BTreeMap<Letter, Mat<C>> = self
            .all_letters(other)
            .into_iter()
            .map(|l| (l, self.tensor_sum(other, l)))
            .collect();
        for (a, m1) in &self.mu {
            for (b, m2) in &other.mu {
                let k = Letter::y(a.index() + b.index());
                let extra = m1.kron(m2);
                let n = extra.rows();
                let cur = mu.remove(&k).unwrap_or_else(|| Mat::zeros(n, n));
                mu.insert(k, cur.add(&extra));
            }
        }
        Self::new(self.alphabet, beta, mu, eta)
    }

    /// Kleene star of a proper series, adding one state.
    pub fn star(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ImproperStar);
        }
        let n = self.dim();
        let mut mu = BTreeMap::new();
        for (l, m) in &self.mu {
            let bm = m.left_apply(&self.beta);
            let me = m.right_apply(&self.eta);
            let mut big = Mat::zeros(n + 1, n + 1);
            big.set(0, 0, matrix::dot(&bm, &self.eta));
            for j in 0..n {
                big.set(0, j + 1, bm[j].clone());
                big.set(j + 1, 0, me[j].clone());
            }
            big.place(1, 1, m);
            mu.insert(*l, big);
        }
        let mut unit = vec![C::zero(); n + 1];
        unit[0] = C::one();
        Self::new(self.alphabet, unit.clone(), mu, unit)
    }

    pub fn to_json(&self) -> Value {
        let v = |xs: &[C]| Value::Array(xs.iter().map(|c| json!(c.to_string())).collect());
        let mut mu = Map::new();
        for (l, m) in &self.mu {
            mu.insert(
                l.to_string(),
                Value::Array(m.to_rows().iter().map(|r| v(r)).collect()),
            );
        }
        json!({
            "dim": self.dim(),
            "beta": v(&self.beta),
            "eta": v(&self.eta),
            "mu": mu,
        })
    }

    pub fn from_json(alphabet: Alphabet, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::parse(0, m.to_string());
        let vec_of = |v: &Value| -> Result<Vec<C>> {
            v.as_array()
                .ok_or_else(|| bad("expected an array"))?
                .iter()
                .map(|c| {
                    c.as_str()
                        .and_then(parse_coeff::<C>)
                        .ok_or_else(|| bad("expected a coefficient string"))
                })
                .collect()
        };
        let beta = vec_of(&v["beta"])?;
        let eta = vec_of(&v["eta"])?;
        if let Some(d) = v.get("dim").and_then(Value::as_u64) {
            if d as usize != beta.len() {
                return Err(bad("dim does not match beta"));
            }
        }
        let mut mu = BTreeMap::new();
        if let Some(obj) = v.get("mu").and_then(Value::as_object) {
            for (k, rows) in obj {
                let l: Letter = k.parse()?;
                let rows = rows
                    .as_array()
                    .ok_or_else(|| bad("expected matrix rows"))?
                    .iter()
                    .map(vec_of)
                    .collect::<Result<Vec<_>>>()?;
                mu.insert(l, Mat::from_rows(rows).ok_or_else(|| bad("ragged matrix"))?);
            }
        }
        Self::new(alphabet, beta, mu, eta)
    }
}

impl<C: Coeff> std::fmt::Debug for LinRep<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// For `P = x P1` and `Q` univariate, `(P / (1 - xQ))* = (1 - xQ) / (1 - x(Q + P1))`.
/// Polynomials are dense coefficient lists, lowest degree first; returns
/// `(numerator, denominator)`.
pub fn univar_star(p: &[Q], q: &[Q]) -> Result<(Vec<Q>, Vec<Q>)> {
    use num_traits::{One, Zero};
    if p.first().is_some_and(|c| !c.is_zero()) {
        return Err(Error::ImproperUnivariate);
    }
    let p1 = p.get(1..).unwrap_or(&[]);
    let len = 1 + p1.len().max(q.len());
    let mut num = vec![Q::zero(); len];
    let mut den = vec![Q::zero(); len];
    num[0] = Q::one();
    den[0] = Q::one();
    for (i, c) in q.iter().enumerate() {
        num[i + 1] -= c;
        den[i + 1] -= c;
    }
    for (i, c) in p1.iter().enumerate() {
        den[i + 1] -= c;
    }
    let strip = |mut v: Vec<Q>| {
        while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    };
    Ok((strip(num), strip(den)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{qi, QPoly};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let r = LinRep::conc_character(Alphabet::X, &[(Letter::x(1), qi(2))]).unwrap();
        assert_eq!(r.coeff(&w("x1 x1 x1")).unwrap(), qi(8));
        assert_eq!(r.coeff(&Word::empty()).unwrap(), qi(1));
        assert_eq!(r.coeff(&w("x0")).unwrap(), qi(0));

        let (a, b) = (QPoly::var(1), QPoly::var(2));
        let r = LinRep::conc_character(
            Alphabet::X,
            &[(Letter::x(0), a.clone()), (Letter::x(1), b.clone())],
        )
        .unwrap();
        assert_eq!(r.coeff(&w("x0 x1 x0")).unwrap(), a.clone() * a * b);
        assert!(r.coeff(&w("y1")).is_err());
    }

    #[test]
    fn operation_examples() {
        let (a, b) = (QPoly::var(1), QPoly::var(2));
        let sa = LinRep::conc_character(Alphabet::X, &[(Letter::x(0), a.clone())]).unwrap();
        let sb = LinRep::conc_character(Alphabet::X, &[(Letter::x(1), b.clone())]).unwrap();
        let sh = sa.shuffle(&sb).unwrap();
        assert_eq!(sh.coeff(&w("x0 x1")).unwrap(), a.clone() * b.clone());

        let ya = LinRep::conc_character(Alphabet::Y, &[(Letter::y(1), a.clone())]).unwrap();
        let yb = LinRep::conc_character(Alphabet::Y, &[(Letter::y(1), b.clone())]).unwrap();
        let st = ya.stuffle(&yb).unwrap();
        assert_eq!(st.coeff(&w("y2")).unwrap(), a * b);
        assert_eq!(sa.stuffle(&sb), Err(Error::StuffleOnX));

        let z = sa.add(&LinRep::zero(Alphabet::X)).unwrap();
        assert_eq!(
            z.coeff(&w("x0 x0")).unwrap(),
            sa.coeff(&w("x0 x0")).unwrap()
        );
    }

    #[test]
    fn conc_of_letters() {
        let r = LinRep::letter(Letter::x(0), qi(2))
            .conc(&LinRep::letter(Letter::x(1), qi(3)))
            .unwrap();
        assert_eq!(r.coeff(&w("x0 x1")).unwrap(), qi(6));
        assert_eq!(r.coeff(&w("x1 x0")).unwrap(), qi(0));
        assert_eq!(r.coeff(&Word::empty()).unwrap(), qi(0));
    }

    #[test]
    fn star_examples() {
        let t = QPoly::t();
        let r = LinRep::letter(Letter::y(1), t.clone()).star().unwrap();
        assert_eq!(r.coeff(&w("y1 y1")).unwrap(), t.clone() * t.clone());

        let s = LinRep::letter(Letter::x(0), t.clone())
            .add(&LinRep::letter(Letter::x(1), t.clone()))
            .unwrap()
            .star()
            .unwrap();
        let t3 = t.clone() * t.clone() * t;
        assert_eq!(s.coeff(&w("x1 x0 x1")).unwrap(), t3);

        let one = LinRep::<Q>::zero(Alphabet::X).star().unwrap();
        assert_eq!(one.coeff(&Word::empty()).unwrap(), qi(1));
        assert_eq!(one.coeff(&w("x0")).unwrap(), qi(0));

        assert_eq!(
            LinRep::scalar(Alphabet::X, qi(1)).star(),
            Err(Error::ImproperStar)
        );
    }

    #[test]
    fn json_round_trip() {
        let r = LinRep::letter(Letter::x(0), qi(2)).star().unwrap();
        let back = LinRep::<Q>::from_json(Alphabet::X, &r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn univar_star_examples() {
        let (n, d) = univar_star(&[qi(0), qi(1)], &[]).unwrap();
        assert_eq!((n, d), (vec![qi(1)], vec![qi(1), qi(-1)]));
        let (n, d) = univar_star(&[qi(0), qi(1)], &[qi(0), qi(1)]).unwrap();
        assert_eq!(n, vec![qi(1), qi(0), qi(-1)]);
        assert_eq!(d, vec![qi(1), qi(-1), qi(-1)]);
        let (n, d) = univar_star(&[qi(0), qi(2)], &[]).unwrap();
        assert_eq!((n, d), (vec![qi(1)], vec![qi(1), qi(-2)]));
        assert_eq!(univar_star(&[qi(1)], &[]), Err(Error::ImproperUnivariate));
    }
}
