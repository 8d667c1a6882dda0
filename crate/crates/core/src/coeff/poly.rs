use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{parse_rational, Coeff, Q};

const NAMES: [&str; 4] = ["t", "a", "b", "c"];

/// Exact multivariate polynomial over the rationals.
///
/// Variables are indexed; the first four print as `t`, `a`, `b`, `c`. A
/// monomial is its exponent vector without trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    terms: BTreeMap<Vec<u32>, Q>,
}

fn trim(mut m: Vec<u32>) -> Vec<u32> {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn var_name(i: usize) -> String {
    NAMES
        .get(i)
        .map_or_else(|| format!("v{i}"), |s| s.to_string())
}

impl QPoly {
    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        QPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(i, 1)
    }

    pub fn monomial(i: usize, e: u32) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = e;
        let mut terms = BTreeMap::new();
        terms.insert(trim(m), Q::one());
        QPoly { terms }
    }

    /// The parameter `t` (variable 0).
    pub fn t() -> Self {
        Self::var(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Q)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn coefficient(&self, monomial: &[u32]) -> Q {
        self.terms
            .get(&trim(monomial.to_vec()))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Drops monomials of total degree `>= k`, i.e. reduces modulo `(vars)^k`.
    pub fn truncate(&self, k: u32) -> Self {
        QPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().sum::<u32>() < k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes rational values for variables `0..values.len()`.
    pub fn eval(&self, values: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.iter().enumerate() {
                let v = values.get(i).cloned().unwrap_or_else(Q::zero);
                for _ in 0..e {
                    term *= v.clone();
                }
            }
            acc += term;
        }
        acc
    }

    fn insert(&mut self, m: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(trim(m)) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter() {
            let mut parts = Vec::new();
            let neg = c < &Q::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if !a.is_one() || m.is_empty() {
                parts.push(a.to_string());
            }
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(var_name(i)),
                    _ => parts.push(format!("{}^{e}", var_name(i))),
                }
            }
            let body = parts.join("*");
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => f.write_str(&body)?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(mut self, rhs: QPoly) -> QPoly {
        for (m, c) in rhs.terms {
            self.insert(m, c);
        }
        self
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        self + (-rhs)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        let mut out = QPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let n = m1.len().max(m2.len());
                let m: Vec<u32> = (0..n)
                    .map(|i| m1.get(i).unwrap_or(&0) + m2.get(i).unwrap_or(&0))
                    .collect();
                out.insert(m, c1 * c2);
            }
        }
        out
    }
}

impl Zero for QPoly {
    fn zero() -> Self {
        QPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for QPoly {
    fn one() -> Self {
        QPoly::constant(Q::one())
    }
}

impl From<Q> for QPoly {
    fn from(q: Q) -> Self {
        QPoly::constant(q)
    }
}

impl Coeff for QPoly {
    fn from_rational(q: &Q) -> Self {
        QPoly::constant(q.clone())
    }

    fn parse_factor(s: &str) -> Option<Self> {
        if let Some(q) = parse_rational(s) {
            return Some(QPoly::constant(q));
        }
        let (name, exp) = match s.split_once('^') {
            Some((n, e)) => (n, e.parse().ok()?),
            None => (s, 1),
        };
        let idx = NAMES
            .iter()
            .position(|n| *n == name)
            .or_else(|| name.strip_prefix('v').and_then(|d| d.parse().ok()))?;
        Some(QPoly::monomial(idx, exp))
    }
}
