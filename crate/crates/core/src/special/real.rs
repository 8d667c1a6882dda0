use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::coeff::{Cyclo, Q};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Arbitrary-precision real number carrying its working precision in bits.
#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    fn wrap(v: BigFloat, p: usize) -> Self {
        Real { v, p }
    }

    pub fn zero(p: usize) -> Self {
        Self::from_i64(0, p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_i64(1, p)
    }

    pub fn from_i64(n: i64, p: usize) -> Self {
        Self::wrap(BigFloat::from_i64(n, p), p)
    }

    pub fn from_u64(n: u64, p: usize) -> Self {
        Self::wrap(BigFloat::from_u64(n, p), p)
    }

    pub fn from_f64(x: f64, p: usize) -> Self {
        Self::wrap(BigFloat::from_f64(x, p), p)
    }

    /// Parses a decimal literal such as `0.3`, `-1.5e-3`.
    pub fn parse(s: &str, p: usize) -> Option<Self> {
        let v = with_cc(|cc| BigFloat::parse(s.trim(), Radix::Dec, p, RM, cc));
        (!v.is_nan()).then(|| Self::wrap(v, p))
    }

    pub fn from_q(q: &Q, p: usize) -> Self {
        let n = Self::parse(&q.numer().to_string(), p + 64).expect("integer literal");
        let d = Self::parse(&q.denom().to_string(), p + 64).expect("integer literal");
        (n / d).with_prec(p)
    }

    pub fn pi(p: usize) -> Self {
        Self::wrap(with_cc(|cc| cc.pi(p, RM)), p)
    }

    pub fn ln2(p: usize) -> Self {
        Self::wrap(with_cc(|cc| cc.ln_2(p, RM)), p)
    }

    /// `2^e`.
    pub fn pow2(e: i64, p: usize) -> Self {
        let two = Self::from_i64(2, p);
        if e >= 0 {
            two.powi(e as usize)
        } else {
            Self::one(p) / two.powi((-e) as usize)
        }
    }

    pub fn prec(&self) -> usize {
        self.p
    }

    pub fn with_prec(&self, p: usize) -> Self {
        let mut v = self.v.clone();
        v.set_precision(p, RM).expect("valid precision");
        Self::wrap(v, p)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.p)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.p, RM), self.p)
    }

    pub fn exp(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.exp(self.p, RM, cc)), self.p)
    }

    pub fn ln(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.ln(self.p, RM, cc)), self.p)
    }

    pub fn sin(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.sin(self.p, RM, cc)), self.p)
    }

    pub fn cos(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.cos(self.p, RM, cc)), self.p)
    }

    pub fn atan(&self) -> Self {
        Self::wrap(with_cc(|cc| self.v.atan(self.p, RM, cc)), self.p)
    }

    pub fn powi(&self, n: usize) -> Self {
        Self::wrap(self.v.powi(n, self.p, RM), self.p)
    }

    pub fn recip(&self) -> Self {
        Self::one(self.p) / self.clone()
    }

    /// `floor(log2 |x|)`, or `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.v.is_zero() {
            None
        } else {
            self.v.exponent().map(|e| e as i64 - 1)
        }
    }

    /// `|x| < 2^e`.
    pub fn below_pow2(&self, e: i64) -> bool {
        self.log2_floor().is_none_or(|l| l < e)
    }

    pub fn max(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    /// Decimal scientific notation with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let s = self.to_string();
        let (mant, exp) = s.split_once('e').unwrap_or((&s, "+0"));
        let (sign, mant) = mant.strip_prefix('-').map_or(("", mant), |m| ("-", m));
        let all: String = mant.chars().filter(char::is_ascii_digit).collect();
        let d = digits.max(1).min(all.len());
        let head = &all[..1];
        let tail = &all[1..d];
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                let p = self.p.max(rhs.p);
                Real::wrap(self.v.$m(&rhs.v, p, RM), p)
            }
        }
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.p.max(rhs.p);
                Real::wrap(self.v.$m(&rhs.v, p, RM), p)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.neg(), self.p)
    }
}

/// Complex number with [`Real`] parts.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn real(re: Real) -> Self {
        let p = re.prec();
        Complex {
            re,
            im: Real::zero(p),
        }
    }

    pub fn zero(p: usize) -> Self {
        Self::real(Real::zero(p))
    }

    pub fn one(p: usize) -> Self {
        Self::real(Real::one(p))
    }

    pub fn i(p: usize) -> Self {
        Complex::new(Real::zero(p), Real::one(p))
    }

    pub fn from_f64(re: f64, im: f64, p: usize) -> Self {
        Complex::new(Real::from_f64(re, p), Real::from_f64(im, p))
    }

    pub fn parse(re: &str, im: &str, p: usize) -> Option<Self> {
        Some(Complex::new(Real::parse(re, p)?, Real::parse(im, p)?))
    }

    /// Numerical value of an exact cyclotomic number.
    pub fn from_cyclo(c: &Cyclo, p: usize) -> Self {
        let n = c.order();
        let mut acc = Complex::zero(p);
        for (k, q) in c.coeffs().iter().enumerate() {
            if num_traits::Zero::is_zero(q) {
                continue;
            }
            let root = Complex::root_of_unity(n, k as u64, p);
            acc = acc + root.scale(&Real::from_q(q, p));
        }
        acc
    }

    /// `exp(2 i pi k / n)`.
    pub fn root_of_unity(n: u64, k: u64, p: usize) -> Self {
        let k = k % n;
        match (4 * k).checked_rem(n) {
            Some(0) => {
                let quarter = 4 * k / n;
                let (re, im) = [(1, 0), (0, 1), (-1, 0), (0, -1)][quarter as usize];
                Complex::new(Real::from_i64(re, p), Real::from_i64(im, p))
            }
            _ => {
                let a =
                    Real::pi(p + 16) * Real::from_u64(2 * k, p + 16) / Real::from_u64(n, p + 16);
                Complex::new(a.cos().with_prec(p), a.sin().with_prec(p))
            }
        }
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, p: usize) -> Self {
        Complex::new(self.re.with_prec(p), self.im.with_prec(p))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, r: &Real) -> Self {
        Complex::new(&self.re * r, &self.im * r)
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Complex::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn powi(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Complex::one(self.prec());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        Complex::new(&m * &self.im.cos(), &m * &self.im.sin())
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let arg = if self.re.is_zero() {
            let half = Real::pi(p) / Real::from_i64(2, p);
            if self.im.is_negative() {
                -half
            } else {
                half
            }
        } else {
            let a = (&self.im / &self.re).atan();
            if self.re.is_negative() {
                if self.im.is_negative() {
                    a - Real::pi(p)
                } else {
                    a + Real::pi(p)
                }
            } else {
                a
            }
        };
        Complex::new(self.abs().ln(), arg)
    }

    pub fn sin(&self) -> Self {
        let (ey, emy) = (self.im.exp(), (-self.im.clone()).exp());
        let two = Real::from_i64(2, self.prec());
        let cosh = (&ey + &emy) / two.clone();
        let sinh = (&ey - &emy) / two;
        Complex::new(&self.re.sin() * &cosh, &self.re.cos() * &sinh)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        let im = self.im.to_decimal(digits);
        if self.im.is_negative() {
            format!("{} - {}i", self.re.to_decimal(digits), &im[1..])
        } else {
            format!("{} + {}i", self.re.to_decimal(digits), im)
        }
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(20))
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        &self + &rhs
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        &self - &rhs
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        &self * &rhs
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for Complex {
    type Output = Complex;
    fn div(self, rhs: Complex) -> Complex {
        &self * &rhs.recip()
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;

    #[test]
    fn basic_arithmetic() {
        let p = 128;
        let a = Real::from_q(&q(1, 3), p);
        let b = &a * &Real::from_i64(3, p);
        assert!((b - Real::one(p)).below_pow2(-120));
        assert!((Real::pi(p).to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(Real::pow2(-10, p) == Real::from_f64(1.0 / 1024.0, p));
        assert_eq!(Real::from_i64(-5, p).to_decimal(3), "-5e+0");
    }

    #[test]
    fn complex_functions() {
        let p = 128;
        let z = Complex::from_f64(0.3, 0.2, p);
        let back = z.exp().ln();
        assert!((&back - &z).abs().below_pow2(-120));
        // sin(z)^2 + cos(z)^2 = 1 through sin(z + pi/2)
        let i = Complex::i(p);
        let w = &i * &i;
        assert!((w + Complex::one(p)).is_zero());
        let r = Complex::root_of_unity(3, 1, p).powi(3);
        assert!((&r - &Complex::one(p)).abs().below_pow2(-120));
        let c = Complex::from_cyclo(&Cyclo::root_of_unity(4, 1), p);
        assert!((&c - &i).abs().below_pow2(-120));
    }

    #[test]
    fn decimal_output() {
        let p = 128;
        let x = Real::parse("1.5e-3", p).unwrap();
        assert_eq!(x.to_decimal(2), "1.5e-3");
        assert!(Real::parse("abc", p).is_none());
    }
}
