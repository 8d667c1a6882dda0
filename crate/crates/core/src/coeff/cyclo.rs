use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{parse_rational, Coeff, Q};

/// An element of the cyclotomic field `Q(zeta_n)`, stored as a polynomial in
/// `zeta_n` reduced modulo the `n`-th cyclotomic polynomial.
///
/// Operands with different orders are lifted to the lcm of their orders, so
/// equality is decided in a common field.
#[derive(Clone)]
pub struct Cyclo {
    order: u64,
    coeffs: Vec<Q>,
}

/// Dense polynomial over Q, lowest degree first.
type Dense = Vec<Q>;

fn strip(mut p: Dense) -> Dense {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Q], b: &[Q]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    strip(out)
}

/// Remainder of `a` modulo a monic `m`.
fn poly_rem(mut a: Dense, m: &[Q]) -> Dense {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = a.len() - dm;
        for (i, c) in m[..dm].iter().enumerate() {
            a[shift + i] -= &lead * c;
        }
    }
    strip(a)
}

/// Quotient of `a` by a monic `m` (exact division expected).
fn poly_div_exact(a: &[Q], m: &[Q]) -> Dense {
    let dm = m.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![Q::zero(); a.len().saturating_sub(dm)];
    while rem.len() > dm {
        let lead = rem.pop().unwrap();
        let shift = rem.len() - dm;
        for (i, c) in m[..dm].iter().enumerate() {
            rem[shift + i] -= &lead * c;
        }
        quot[shift] = lead;
    }
    debug_assert!(strip(rem).is_empty());
    strip(quot)
}

/// The `n`-th cyclotomic polynomial, monic, lowest degree first.
pub(crate) fn cyclotomic_poly(n: u64) -> Dense {
    let mut p = vec![Q::zero(); n as usize + 1];
    p[0] = -Q::one();
    p[n as usize] = Q::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl Cyclo {
    pub fn from_q(q: Q) -> Self {
        Cyclo {
            order: 1,
            coeffs: strip(vec![q]),
        }
    }

    /// `zeta_n^k` with `zeta_n = exp(2 i pi / n)`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Q::zero(); e + 1];
        v[e] = Q::one();
        Cyclo::reduce(n, v)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients in the power basis `1, zeta, zeta^2, ...`.
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Numerical value `(re, im)`.
    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let a = std::f64::consts::TAU * k as f64 / self.order as f64;
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * a.cos();
            im += c * a.sin();
        }
        (re, im)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclo::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    fn reduce(n: u64, v: Dense) -> Self {
        let coeffs = if n == 1 {
            // Phi_1 = x - 1: evaluate at 1
            let s: Q = v.into_iter().fold(Q::zero(), |a, b| a + b);
            strip(vec![s])
        } else {
            poly_rem(v, &cyclotomic_poly(n))
        };
        Cyclo { order: n, coeffs }
    }

    fn lift(&self, n: u64) -> Dense {
        debug_assert_eq!(n % self.order, 0);
        let step = (n / self.order) as usize;
        let mut v = vec![Q::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * step] = c.clone();
        }
        strip(v)
    }

    fn common(&self, other: &Cyclo) -> (u64, Dense, Dense) {
        let n = self.order.lcm(&other.order);
        (n, self.lift(n), other.lift(n))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (n, a, b) = self.common(other);
        Cyclo::reduce(n, a).coeffs == Cyclo::reduce(n, b).coeffs
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => c.to_string(),
                1 => format!("{c}*z{}", self.order),
                _ => format!("{c}*z{}^{k}", self.order),
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: Cyclo) -> Cyclo {
        let (n, mut a, b) = self.common(&rhs);
        if a.len() < b.len() {
            a.resize(b.len(), Q::zero());
        }
        for (i, c) in b.into_iter().enumerate() {
            a[i] += c;
        }
        Cyclo::reduce(n, strip(a))
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: Cyclo) -> Cyclo {
        self + (-rhs)
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        let (n, a, b) = self.common(&rhs);
        Cyclo::reduce(n, poly_mul(&a, &b))
    }
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo::from_q(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo::from_q(Q::one())
    }
}

impl Coeff for Cyclo {
    fn from_rational(q: &Q) -> Self {
        Cyclo::from_q(q.clone())
    }

    /// Rationals, or `z<n>` / `z<n>^<k>` for `zeta_n^k`.
    fn parse_factor(s: &str) -> Option<Self> {
        if let Some(q) = parse_rational(s) {
            return Some(Cyclo::from_q(q));
        }
        let body = s.strip_prefix('z')?;
        let (n, k) = match body.split_once('^') {
            Some((n, k)) => (n.parse().ok()?, k.parse().ok()?),
            None => (body.parse().ok()?, 1),
        };
        (n >= 1).then(|| Cyclo::root_of_unity(n, k))
    }
}
