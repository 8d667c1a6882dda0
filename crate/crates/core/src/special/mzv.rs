use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::Q;
use crate::error::{Error, Result};
use crate::words::{pi_x, pi_y, Composition, Letter, Word};

use super::{Complex, Real};

const GUARD: usize = 32;

/// A numerical value together with a rigorous absolute error bound.
#[derive(Clone, Debug)]
pub struct Approx<T> {
    pub value: T,
    pub bound: f64,
    /// Number of outer summation terms used.
    pub terms: u64,
}

/// `H_s(n) = sum_{n >= n1 > ... > nr > 0} n1^-s1 ... nr^-sr`, exactly;
/// negative parts contribute positive powers.
pub fn harmonic_sum(idx: &Composition, n: u64) -> Q {
    let s = idx.parts();
    let r = s.len();
    // acc[j] = sum over the tail (s_j, ..., s_r) up to the current m
    let mut acc = vec![Q::zero(); r];
    for m in 1..=n {
        let mb = Q::from_integer(BigInt::from(m));
        for j in 0..r {
            let below = if j + 1 == r {
                Q::one()
            } else {
                acc[j + 1].clone()
            };
            if below.is_zero() {
                continue;
            }
            acc[j] += power(&mb, s[j]) * below;
        }
    }
    acc.into_iter().next().unwrap_or_else(Q::one)
}

fn power(m: &Q, s: i64) -> Q {
    let e = s.unsigned_abs() as usize;
    let p = num_traits::pow(m.clone(), e);
    if s > 0 {
        p.recip()
    } else {
        p
    }
}

/// Partial sum of `Li_s(z)` over `n1 <= n_max` with real inner sums.
fn li_partial(s: &[u32], z: &Complex, n_max: u64, wp: usize) -> Complex {
    let r = s.len();
    let mut inner = vec![Real::zero(wp); r];
    let mut zn = Complex::one(wp);
    let mut total = Complex::zero(wp);
    for n in 1..=n_max {
        zn = &zn * z;
        let inv = Real::from_u64(n, wp).recip();
        // inner[j] holds sum_{m < n} m^{-s_j} inner[j+1](m - 1); update j = 1.. first
        let outer_below = if r == 1 {
            Real::one(wp)
        } else {
            inner[1].clone()
        };
        for j in 1..r {
            let below = if j + 1 == r {
                Real::one(wp)
            } else {
                inner[j + 1].clone()
            };
            if below.is_zero() {
                continue;
            }
            inner[j] = &inner[j] + &(&inv.powi(s[j] as usize) * &below);
        }
        if !outer_below.is_zero() {
            let c = &inv.powi(s[0] as usize) * &outer_below;
            total = &total + &zn.scale(&c);
        }
    }
    total
}

/// Smallest `N` such that `sum_{n > N} rho^n n^d` is below `2^-target_bits`,
/// with the bound `(N+1)^d rho^{N+1} / (1 - q)`, `q = rho ((N+2)/(N+1))^d`.
/// Returns `(N, log2 of the bound)`.
fn geometric_cutoff(rho: f64, d: usize, target_bits: f64) -> (u64, f64) {
    let d = d as f64;
    let mut n: u64 = 1;
    loop {
        let l = tail_log2(rho, d, n);
        if l < -target_bits {
            return (n, l);
        }
        n += 1 + n / 8;
    }
}

fn tail_log2(rho: f64, d: f64, n: u64) -> f64 {
    let nf = n as f64;
    let q = rho * ((nf + 2.0) / (nf + 1.0)).powf(d);
    if q >= 1.0 {
        return f64::INFINITY;
    }
    d * (nf + 1.0).log2() + (nf + 1.0) * rho.log2() - (1.0 - q).log2()
}

fn check_positive(idx: &Composition) -> Result<Vec<u32>> {
    if !idx.all_positive() {
        return Err(Error::InvalidComposition(format!(
            "{idx}: polylogarithm indices must be positive"
        )));
    }
    Ok(idx.parts().iter().map(|&s| s as u32).collect())
}

/// `Li_s(z) = sum_{n1 > ... > nr > 0} z^{n1} / (n1^s1 ... nr^sr)` with
/// absolute error at most `err`. For `|z| = 1` only `z = 1` with `s1 >= 2`
/// is accepted (the Abel limit, equal to the MZV).
pub fn li_numeric(
    idx: &Composition,
    z: &Complex,
    err: f64,
    prec: usize,
) -> Result<Approx<Complex>> {
    let s = check_positive(idx)?;
    let rho = z.abs().to_f64();
    if rho >= 1.0 {
        let is_one = (&z.re - &Real::one(z.prec())).is_zero() && z.im.is_zero();
        if is_one && s[0] >= 2 {
            let v = mzv(idx, err, prec)?;
            return Ok(Approx {
                value: Complex::real(v.value),
                bound: v.bound,
                terms: v.terms,
            });
        }
        if s[0] == 1 {
            return Err(Error::NonConvergent(format!("Li_{idx} at |z| >= 1")));
        }
        return Err(Error::OutOfDomain(format!(
            "Li_{idx}: |z| = {rho} (on the unit circle only z = 1 is supported)"
        )));
    }
    let r = li_with_target(&s, z, rho, err, prec);
    Ok(r)
}

fn li_with_target(s: &[u32], z: &Complex, rho: f64, err: f64, prec: usize) -> Approx<Complex> {
    if rho == 0.0 {
        return Approx {
            value: Complex::zero(prec),
            bound: 0.0,
            terms: 0,
        };
    }
    let wp = prec + GUARD;
    let (n, tail) = geometric_cutoff(rho, s.len() - 1, -(err / 2.0).log2());
    let value = li_partial(s, &z.with_prec(wp), n, wp);
    let rounding = (n as f64) * (s.len() as f64 + 2.0) * 2f64.powi(-(wp as i32) + 4);
    Approx {
        value: value.with_prec(prec),
        bound: 2f64.powf(tail) + rounding + 2f64.powi(-(prec as i32)),
        terms: n,
    }
}

/// Reverse of `u` with `x0` and `x1` exchanged.
fn dual(u: &[Letter]) -> Word {
    let swapped = u
        .iter()
        .rev()
        .map(|l| match l {
            Letter::X(0) => Letter::x(1),
            _ => Letter::x(0),
        })
        .collect();
    Word::new(swapped).expect("letters over X")
}

fn word_index(w: &Word) -> Vec<u32> {
    pi_y(w)
        .expect("suffix in X* x1")
        .parts()
        .iter()
        .map(|&s| s as u32)
        .collect()
}

/// `zeta(s1, ..., sr)` for a convergent index, with absolute error at most
/// `err`, by the Hölder convolution
/// `zeta(w) = sum_{w = uv} Li_{dual(u)}(1/2) Li_v(1/2)`.
pub fn mzv(idx: &Composition, err: f64, prec: usize) -> Result<Approx<Real>> {
    let s = check_positive(idx)?;
    if s[0] < 2 {
        return Err(Error::NonConvergent(format!(
            "zeta{idx}: first part must be >= 2"
        )));
    }
    let w = pi_x(idx)?;
    let letters = w.letters();
    let splits = letters.len() + 1;
    let each = err / (4.0 * splits as f64);
    let (n, _) = geometric_cutoff(0.5, s.len().max(letters.len()), -each.log2());
    Ok(mzv_with_cutoff_inner(letters, n, prec))
}

/// The Hölder convolution with every `Li(1/2)` truncated at `n` terms.
pub fn mzv_with_cutoff(idx: &Composition, n: u64, prec: usize) -> Result<Approx<Real>> {
    let s = check_positive(idx)?;
    if s[0] < 2 {
        return Err(Error::NonConvergent(format!(
            "zeta{idx}: first part must be >= 2"
        )));
    }
    let w = pi_x(idx)?;
    Ok(mzv_with_cutoff_inner(w.letters(), n, prec))
}

fn mzv_with_cutoff_inner(letters: &[Letter], n: u64, prec: usize) -> Approx<Real> {
    let wp = prec + GUARD;
    let half = Complex::real(Real::from_i64(1, wp) / Real::from_i64(2, wp));
    let li_half = |w: &Word| -> (Real, f64) {
        if w.is_empty() {
            return (Real::one(wp), 0.0);
        }
        let s = word_index(w);
        let v = li_partial(&s, &half, n, wp).re;
        let tail = 2f64.powf(tail_log2(0.5, (s.len() - 1) as f64, n));
        let rounding = (n as f64) * (s.len() as f64 + 2.0) * 2f64.powi(-(wp as i32) + 4);
        (v, tail + rounding)
    };
    let mut total = Real::zero(wp);
    let mut bound = 0.0;
    for k in 0..=letters.len() {
        let (u, v) = letters.split_at(k);
        let (a, ea) = li_half(&dual(u));
        let (b, eb) = li_half(&Word::new(v.to_vec()).expect("letters over X"));
        // every Li(1/2) here lies in [0, 1]
        bound += ea + eb + ea * eb;
        total = total + &a * &b;
    }
    Approx {
        value: total.with_prec(prec),
        bound: bound + 2f64.powi(-(prec as i32)),
        terms: n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;
    use crate::special::zeta_int;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_sum(&c("(1)"), 3), q(11, 6));
        assert_eq!(harmonic_sum(&c("(2,1)"), 3), q(5, 12));
        assert_eq!(harmonic_sum(&c("(-1,-1)"), 2), q(2, 1));
        assert_eq!(harmonic_sum(&c("(1,1)"), 1), q(0, 1));
        assert_eq!(harmonic_sum(&c("(3)"), 0), q(0, 1));
    }

    #[test]
    fn li_examples() {
        let p = 128;
        let half = Complex::from_f64(0.5, 0.0, p);
        let ln2 = Real::ln2(p);
        let l1 = li_numeric(&c("(1)"), &half, 1e-30, p).unwrap();
        assert!((&l1.value.re - &ln2).abs().to_f64() <= l1.bound);
        let l11 = li_numeric(&c("(1,1)"), &half, 1e-30, p).unwrap();
        let e = &ln2 * &ln2 / Real::from_i64(2, p);
        assert!((&l11.value.re - &e).abs().to_f64() <= l11.bound);
        let one = Complex::one(p);
        let l2 = li_numeric(&c("(2)"), &one, 1e-30, p).unwrap();
        let z2 = zeta_int(2, p).unwrap();
        assert!((&l2.value.re - &z2).abs().to_f64() <= l2.bound + 1e-35);
        assert!(li_numeric(&c("(1)"), &one, 1e-10, p).is_err());
    }

    #[test]
    fn mzv_examples() {
        let p = 192;
        let z21 = mzv(&c("(2,1)"), 1e-40, p).unwrap();
        let z3 = zeta_int(3, p).unwrap();
        assert!(z21.bound <= 1e-40);
        assert!((&z21.value - &z3).abs().to_f64() <= z21.bound + 1e-50);
        let z2 = mzv(&c("(2)"), 1e-40, p).unwrap();
        assert!((&z2.value - &zeta_int(2, p).unwrap()).abs().to_f64() <= z2.bound);
        assert!(mzv(&c("(1,2)"), 1e-10, p).is_err());
    }
}
