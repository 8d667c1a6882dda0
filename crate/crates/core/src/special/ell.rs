use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::{factorial, Q};
use crate::error::{Error, Result};

use super::{euler_gamma, zeta_int, Complex, Real};

const GUARD: usize = 32;

fn check_disk(z: &Complex) -> Result<f64> {
    let rho = z.abs().to_f64();
    if rho >= 1.0 {
        return Err(Error::OutOfDomain(format!("|z| = {rho} >= 1")));
    }
    Ok(rho)
}

/// `l_1(z) = gamma z - sum_{k>=2} zeta(k) (-z)^k / k` and, for `r >= 2`,
/// `l_r(z) = -sum_{k>=1} zeta(kr) (-z^r)^k / k`, for `|z| < 1`.
pub fn ell_r(r: u32, z: &Complex, prec: usize) -> Result<Complex> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    check_disk(z)?;
    let c = if r == 1 {
        z.clone()
    } else {
        z.with_prec(prec + GUARD).powi(r as u64)
    };
    ell_r_power(r, &c, prec)
}

/// `l_r` as a function of `c = z^r`, which is all it depends on.
pub fn ell_r_power(r: u32, c: &Complex, prec: usize) -> Result<Complex> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let rw = check_disk(c)?;
    if c.is_zero() {
        return Ok(Complex::zero(prec));
    }
    let wp = prec + GUARD;
    let c = c.with_prec(wp);
    let w = -c.clone();
    let (first, mut acc) = if r == 1 {
        (2u64, c.scale(&euler_gamma(wp)))
    } else {
        (1u64, Complex::zero(wp))
    };
    // |w|^k zeta(2) / (k (1 - |w|)) dominates the tail from k on
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    let mut wk = w.powi(first);
    for k in first.. {
        let kr = (k * r as u64) as u32;
        let term = wk.scale(&(zeta_int(kr, wp)? / Real::from_u64(k, wp)));
        acc = &acc - &term;
        let tail_log2 = (k + 1) as f64 * rw.log2() + (zeta2 / (1.0 - rw)).log2();
        if tail_log2 < -(wp as f64) {
            break;
        }
        wk = &wk * &w;
    }
    Ok(acc.with_prec(prec))
}

/// `Gamma_{y_r}(1 + z) = exp(-l_r(z))`.
pub fn gamma_yr(r: u32, z: &Complex, prec: usize) -> Result<Complex> {
    Ok((-ell_r(r, z, prec + 8)?).exp().with_prec(prec))
}

/// Euler's Gamma function for real `x > 0`, through `Gamma(1 + t) = exp(-l_1(t))`
/// on `|t| < 1` and the functional equation.
pub fn gamma_real(x: &Real) -> Result<Real> {
    let p = x.prec();
    if x.is_negative() || x.is_zero() {
        return Err(Error::OutOfDomain("Gamma needs x > 0".into()));
    }
    let wp = p + 16;
    let mut x = x.with_prec(wp);
    let mut scale = Real::one(wp);
    let two = Real::from_i64(2, wp);
    let half = Real::from_f64(0.5, wp);
    while x > two {
        x = x - Real::one(wp);
        scale = &scale * &x;
    }
    // keep |x - 1| <= 1/2 for fast convergence
    if x < half {
        scale = &scale / &x;
        x = x + Real::one(wp);
    }
    if x > Real::from_f64(1.5, wp) {
        x = x - Real::one(wp);
        scale = &scale * &x;
    }
    let t = Complex::real(x - Real::one(wp));
    let g = (-ell_r(1, &t, wp)?).exp().re;
    Ok((&g * &scale).with_prec(p))
}

/// `zeta(2k) / pi^{2k}` as
/// `k sum_{l=1}^{k} (-1)^{k+l}/l sum_{n1+...+nl=k} prod 1/(2 n_i + 1)!`.
pub fn zeta_even_rational(k: u32) -> Result<Q> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let k = k as usize;
    let a: Vec<Q> = (0..=k)
        .map(|n| {
            if n == 0 {
                Q::zero()
            } else {
                factorial(2 * n as u64 + 1).recip()
            }
        })
        .collect();
    // pow[m] = coefficients of (sum_n a_n x^n)^l up to x^k
    let mut pow = vec![Q::zero(); k + 1];
    pow[0] = Q::from_integer(1.into());
    let mut total = Q::zero();
    for l in 1..=k {
        let mut next = vec![Q::zero(); k + 1];
        for (i, p) in pow.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, aj) in a.iter().enumerate().skip(1) {
                if i + j > k {
                    break;
                }
                next[i + j] += p * aj;
            }
        }
        pow = next;
        let sign = if (k + l).is_multiple_of(2) { 1 } else { -1 };
        total += &pow[k] * Q::new(BigInt::from(sign), BigInt::from(l));
    }
    Ok(total * Q::from_integer(BigInt::from(k)))
}

/// The two sides of the Weierstrass factorization at truncation `n`.
#[derive(Clone, Debug)]
pub struct ProductCheck {
    pub series: Complex,
    pub product: Complex,
}

/// `exp(l_r(z))` against `prod_{m<=n} (1 + z^r/m^r)`; for `r = 1` the
/// product is `e^{gamma z} prod (1 + z/m) e^{-z/m}`.
pub fn weierstrass_product_check(r: u32, z: &Complex, n: u64, prec: usize) -> Result<ProductCheck> {
    let series = ell_r(r, z, prec)?.exp();
    let wp = prec + GUARD;
    let z = z.with_prec(wp);
    let zr = z.powi(r as u64);
    let mut prod = if r == 1 {
        z.scale(&euler_gamma(wp)).exp()
    } else {
        Complex::one(wp)
    };
    for m in 1..=n {
        let inv = Real::from_u64(m, wp).powi(r as usize).recip();
        let f = &Complex::one(wp) + &zr.scale(&inv);
        prod = &prod * &f;
        if r == 1 {
            prod = &prod * &(-z.scale(&inv)).exp();
        }
    }
    Ok(ProductCheck {
        series,
        product: prod.with_prec(prec),
    })
}

/// `|exp(l_{qr}(z)) - prod_{k<q} exp(l_r(chi_k z))|` with
/// `chi_k = exp(2 i pi k / (q r))`; the factorization needs `q` odd.
pub fn weierstrass3_check(r: u32, q: u32, z: &Complex, prec: usize) -> Result<Real> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenQ);
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let wp = prec + GUARD;
    let z = z.with_prec(wp);
    let lhs = ell_r(q * r, &z, wp)?.exp();
    let mut sum = Complex::zero(wp);
    for k in 0..q {
        let chi = Complex::root_of_unity((q * r) as u64, k as u64, wp);
        sum = &sum + &ell_r(r, &(&chi * &z), wp)?;
    }
    let rhs = sum.exp();
    Ok((&lhs - &rhs).abs().with_prec(prec))
}
