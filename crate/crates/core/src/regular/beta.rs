use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::Q;
use crate::error::{Error, Result};
use crate::special::{gamma_real, Real};

use super::{gamma_atom, y_star, CharValue, GammaCharInput, StarAtom};

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Result of an adaptive quadrature: value and error estimate.
#[derive(Clone, Copy, Debug)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]` to absolute
/// tolerance `tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Quad {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> Quad {
        let (v, e) = gk15(f, a, b);
        if e <= tol || depth >= 48 || (b - a).abs() < 1e-300 {
            return Quad { value: v, error: e };
        }
        let m = 0.5 * (a + b);
        let l = rec(f, a, m, tol / 2.0, depth + 1);
        let r = rec(f, m, b, tol / 2.0, depth + 1);
        Quad {
            value: l.value + r.value,
            error: l.error + r.error,
        }
    }
    rec(f, a, b, tol, 0)
}

/// `E_1 x_{i_1} E_2 ... E_j x_{i_j} E_{j+1}` with every `E_k` a star
/// `(a x0 + b x1)* = (a x0)* ⧢ (b x1)*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedExpr {
    stars: Vec<(Q, Q)>,
    letters: Vec<u8>,
}

pub const MAX_NESTING: usize = 3;

impl ExtendedExpr {
    pub fn new(stars: Vec<StarAtom>, letters: Vec<u8>) -> Result<Self> {
        if stars.len() != letters.len() + 1 {
            return Err(Error::InvalidArgument(
                "need one more star than letters".into(),
            ));
        }
        if letters.len() > MAX_NESTING {
            return Err(Error::InvalidArgument(format!(
                "nesting depth above {MAX_NESTING}"
            )));
        }
        if letters.iter().any(|&i| i > 1) {
            return Err(Error::InvalidArgument("letters are x0 or x1".into()));
        }
        let stars = stars
            .into_iter()
            .map(|s| match s {
                StarAtom::X { a, b } => Ok((a, b)),
                other => Err(Error::AlphabetMismatch(format!("{other} is not over X"))),
            })
            .collect::<Result<_>>()?;
        Ok(ExtendedExpr { stars, letters })
    }

    /// `x_i [(a x0)* ⧢ (b x1)*]`.
    pub fn letter_then_star(i: u8, a: Q, b: Q) -> Result<Self> {
        Self::new(
            vec![
                StarAtom::X {
                    a: Q::zero(),
                    b: Q::zero(),
                },
                StarAtom::X { a, b },
            ],
            vec![i],
        )
    }

    pub fn depth(&self) -> usize {
        self.letters.len()
    }

    /// Exponent of the leading power of `s` at 0 of the integrand at each
    /// level, innermost last; fails when some integral diverges at 0.
    fn exponents(&self) -> Result<Vec<Q>> {
        let j = self.letters.len();
        let mut e = self.stars[j].0.clone();
        let mut alphas = vec![Q::zero(); j];
        for k in (0..j).rev() {
            let a_k = &self.stars[k].0;
            let shift = if self.letters[k] == 0 {
                Q::one()
            } else {
                Q::zero()
            };
            let alpha = &e - a_k - shift;
            if alpha <= -Q::one() {
                return Err(Error::NonConvergent(format!(
                    "integrand ~ s^({alpha}) at 0 in {self}"
                )));
            }
            e = a_k + &alpha + Q::one();
            alphas[k] = alpha;
        }
        Ok(alphas)
    }
}

impl fmt::Display for ExtendedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (a, b)) in self.stars.iter().enumerate() {
            if k > 0 {
                write!(f, " x{} ", self.letters[k - 1])?;
            }
            if a.is_zero() && b.is_zero() {
                write!(f, "1")?;
            } else {
                write!(f, "[({a}x0)*⧢({b}x1)*]")?;
            }
        }
        Ok(())
    }
}

fn q64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `u^m` substitution that makes `s^alpha ds` polynomial in `u` when
/// `alpha + 1` is a rational with small denominator.
fn substitution_power(alpha: &Q) -> i32 {
    let p = alpha + Q::one();
    if p >= Q::one() {
        return 1;
    }
    let d = p.denom().to_i32().unwrap_or(64);
    d.clamp(1, 64)
}

/// `Li_expr(z)` for real `0 <= z < 1`, by nested quadrature of
/// `V_k(z) = phi_k(z) int_0^z phi_k(s)^{-1} omega_{i_k}(s) V_{k+1}(s) ds`,
/// where `phi_k(s) = s^{a_k} (1 - s)^{-b_k}`.
pub fn li_extended_eval(expr: &ExtendedExpr, z: f64, err: f64) -> Result<Quad> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::OutOfDomain(format!("z = {z} outside [0, 1)")));
    }
    let alphas = expr.exponents()?;
    let stars: Vec<(f64, f64)> = expr.stars.iter().map(|(a, b)| (q64(a), q64(b))).collect();
    let powers: Vec<i32> = alphas.iter().map(substitution_power).collect();
    let ctx = Nested {
        stars: &stars,
        letters: &expr.letters,
        powers: &powers,
    };
    Ok(ctx.eval(0, z, err))
}

struct Nested<'a> {
    stars: &'a [(f64, f64)],
    letters: &'a [u8],
    powers: &'a [i32],
}

fn phi((a, b): (f64, f64), s: f64) -> f64 {
    let pa = if a == 0.0 { 1.0 } else { s.powf(a) };
    let pb = if b == 0.0 { 1.0 } else { (1.0 - s).powf(-b) };
    pa * pb
}

impl Nested<'_> {
    fn eval(&self, k: usize, z: f64, tol: f64) -> Quad {
        if k == self.letters.len() {
            return Quad {
                value: phi(self.stars[k], z),
                error: 0.0,
            };
        }
        if z == 0.0 {
            return Quad {
                value: 0.0,
                error: 0.0,
            };
        }
        let star = self.stars[k];
        let letter = self.letters[k];
        let m = self.powers[k];
        let inner_tol = tol * 1e-2;
        let integrand = |u: f64| -> f64 {
            if u <= 0.0 {
                return 0.0;
            }
            let um1 = u.powi(m - 1);
            let s = z * um1 * u;
            if s <= 0.0 {
                return 0.0;
            }
            let omega = if letter == 0 {
                1.0 / s
            } else {
                1.0 / (1.0 - s)
            };
            let inner = self.eval(k + 1, s, inner_tol).value;
            inner * omega / phi(star, s) * z * m as f64 * um1
        };
        let q = integrate(&integrand, 0.0, 1.0, tol * 0.5);
        let scale = phi(star, z);
        Quad {
            value: scale * q.value,
            error: scale.abs() * (q.error + inner_tol),
        }
    }
}

/// `B(z; a, b) = int_0^z t^{a-1} (1 - t)^{b-1} dt` by direct quadrature with
/// the substitution `t = z u^m` at the singular endpoint.
pub fn partial_beta(z: f64, a: &Q, b: &Q, tol: f64) -> Result<Quad> {
    if !a.is_positive() || !(0.0..1.0).contains(&z) {
        return Err(Error::OutOfDomain("need a > 0 and 0 <= z < 1".into()));
    }
    let m = substitution_power(&(a - Q::one()));
    let (af, bf) = (q64(a), q64(b));
    let f = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let um1 = u.powi(m - 1);
        let t = z * um1 * u;
        t.powf(af - 1.0) * (1.0 - t).powf(bf - 1.0) * z * m as f64 * um1
    };
    Ok(integrate(&f, 0.0, 1.0, tol))
}

/// Both sides of `B(a, b) = gamma_•(((a+b-1) y1)*) / gamma_•(((a-1) y1)* ⧺ ((b-1) y1)*)`.
#[derive(Clone, Debug)]
pub struct BetaGammaCheck {
    pub via_gamma_char: Real,
    pub via_gamma_function: Real,
    pub residual: Real,
    /// `((a-1) y1)* ⧺ ((b-1) y1)* = ((a+b-2) y1 + (a-1)(b-1) y2)*` up to weight 8.
    pub factorization_holds: bool,
}

pub fn beta_gamma_check(a: &Q, b: &Q, prec: usize) -> Result<BetaGammaCheck> {
    let one = Q::one();
    for x in [a, b] {
        if !x.is_positive() || (x - &one).abs() >= one {
            return Err(Error::OutOfDomain(format!("{x}: need 0 < x < 2")));
        }
    }
    let num = gamma_atom(&StarAtom::y(1, a + b - &one), prec)?;
    let den_input = GammaCharInput::new(vec![StarAtom::y(1, a - &one), StarAtom::y(1, b - &one)])?;
    let den = den_input.gamma(prec)?;
    let coeffs = den_input.letter_coeffs();
    let printed: std::collections::BTreeMap<u32, Q> = [
        (1, a + b - Q::from_integer(2.into())),
        (2, (a - &one) * (b - &one)),
    ]
    .into_iter()
    .filter(|(_, v)| !v.is_zero())
    .collect();
    let factorization_holds = coeffs == printed && den_input.series(8)? == y_star(&printed, 8)?;
    let lhs = match (&num, &den) {
        (CharValue::Exact(n), CharValue::Exact(d)) if !d.is_zero() => Real::from_q(&(n / d), prec),
        _ => num.to_real(prec) / den.to_real(prec),
    };
    let wp = prec + 16;
    let ga = gamma_real(&Real::from_q(a, wp))?;
    let gb = gamma_real(&Real::from_q(b, wp))?;
    let gab = gamma_real(&Real::from_q(&(a + b), wp))?;
    let rhs = (&ga * &gb / gab).with_prec(prec);
    Ok(BetaGammaCheck {
        residual: (&lhs - &rhs).abs(),
        via_gamma_char: lhs,
        via_gamma_function: rhs,
        factorization_holds,
    })
}
