use std::collections::HashMap;
use std::sync::{Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::{binomial, Q};
use crate::error::{Error, Result};

use super::Real;

const GUARD: usize = 32;

/// Exact Bernoulli number `B_n` (with `B_1 = -1/2`), memoized.
pub fn bernoulli(n: usize) -> Q {
    static TABLE: OnceLock<Mutex<Vec<Q>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![Q::one()]));
    let mut b = table.lock().expect("bernoulli table");
    while b.len() <= n {
        let m = b.len();
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut s = Q::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Q::from_integer(binomial(m as u64 + 1, k as u64)) * bk;
        }
        b.push(-s / Q::from_integer(BigInt::from(m + 1)));
    }
    b[n].clone()
}

/// `zeta(k)` for integer `k >= 2`, accurate to about `2^-prec` relative.
pub fn zeta_int(k: u32, prec: usize) -> Result<Real> {
    if k < 2 {
        return Err(Error::NonConvergent(format!("zeta({k})")));
    }
    Ok(zeta_cached(k, prec))
}

fn zeta_cached(k: u32, prec: usize) -> Real {
    static CACHE: OnceLock<RwLock<HashMap<(u32, usize), Real>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().expect("zeta cache").get(&(k, prec)) {
        return v.clone();
    }
    let v = zeta_em(k, prec);
    cache
        .write()
        .expect("zeta cache")
        .insert((k, prec), v.clone());
    v
}

/// Euler-Maclaurin: `sum_{n<N} n^-k + N^{1-k}/(k-1) + N^-k/2
/// + sum_j B_{2j}/(2j)! (k)_{2j-1} N^{-k-2j+1}`, stopping once the
/// correction terms fall below the working precision.
fn zeta_em(k: u32, prec: usize) -> Real {
    let wp = prec + GUARD;
    let n_cut = (wp / 2).max(16) as u64;
    let eps = -(wp as i64) - 4;
    let kk = k as usize;
    let mut sum = Real::zero(wp);
    for n in 1..n_cut {
        let t = Real::from_u64(n, wp).powi(kk).recip();
        let small = t.below_pow2(eps - 8);
        sum = sum + t;
        if small {
            // the remaining terms add up to less than n^{1-k}/(k-1)
            return sum.with_prec(prec);
        }
    }
    let n = Real::from_u64(n_cut, wp);
    let n_inv = n.recip();
    let n_pow_k = n.powi(kk);
    let kr = Real::from_u64(k as u64, wp);
    sum = sum + &n / &(&n_pow_k * &(&kr - &Real::one(wp)));
    sum = sum + (Real::one(wp) / (&n_pow_k * &Real::from_i64(2, wp)));
    // rising (k)_{2j-1} / (2j)! * N^{-k-2j+1}, built incrementally
    let mut factor = &kr * &(&n_inv / &n_pow_k);
    let mut fact = Q::from_integer(BigInt::from(2));
    for j in 1.. {
        let b = Real::from_q(&(bernoulli(2 * j) / &fact), wp);
        let term = &b * &factor;
        if term.below_pow2(eps) {
            break;
        }
        sum = sum + term;
        let a = (k as u64) + 2 * j as u64 - 1;
        factor = &factor * &(Real::from_u64(a * (a + 1), wp) * n_inv.powi(2));
        fact *= Q::from_integer(BigInt::from((2 * j + 1) * (2 * j + 2)));
        if j > 4 * wp {
            break;
        }
    }
    sum.with_prec(prec)
}

/// Euler's constant as `H_N - log N - 1/(2N) + sum_{j<=8} B_{2j}/(2j N^{2j})`
/// with `N` a power of two chosen from the precision.
pub fn euler_gamma(prec: usize) -> Real {
    static CACHE: OnceLock<RwLock<HashMap<usize, Real>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().expect("gamma cache").get(&prec) {
        return v.clone();
    }
    let wp = prec + GUARD;
    let log_n = (wp + 4).div_ceil(18).max(4) as u32;
    let n_cut = 1u64 << log_n;
    let mut h = Real::zero(wp);
    for n in 1..=n_cut {
        h = h + Real::from_u64(n, wp).recip();
    }
    let ln_n = Real::ln2(wp) * Real::from_u64(log_n as u64, wp);
    let n = Real::from_u64(n_cut, wp);
    let mut g = h - ln_n - (&n * &Real::from_i64(2, wp)).recip();
    let n2 = n.powi(2).recip();
    let mut pow = n2.clone();
    for j in 1..=8usize {
        let c = bernoulli(2 * j) / Q::from_integer(BigInt::from(2 * j));
        g = g + &Real::from_q(&c, wp) * &pow;
        pow = &pow * &n2;
    }
    let v = g.with_prec(prec);
    cache.write().expect("gamma cache").insert(prec, v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;

    #[test]
    fn small_bernoulli() {
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn zeta_two_and_four() {
        let p = 256;
        let pi = Real::pi(p);
        let z2 = zeta_int(2, p).unwrap();
        let e2 = &pi * &pi / Real::from_i64(6, p);
        assert!((z2 - e2).below_pow2(-250));
        let z4 = zeta_int(4, p).unwrap();
        let e4 = pi.powi(4) / Real::from_i64(90, p);
        assert!((z4 - e4).below_pow2(-250));
        assert!(zeta_int(1, p).is_err());
    }

    #[test]
    fn zeta_large_argument() {
        let p = 128;
        let z = zeta_int(200, p).unwrap();
        assert!((z - Real::one(p)).below_pow2(-199));
    }

    #[test]
    fn euler_gamma_digits() {
        let g = euler_gamma(128);
        let reference =
            Real::parse("0.57721566490153286060651209008240243104215933593992", 160).unwrap();
        assert!((g.with_prec(160) - reference).below_pow2(-125));
    }
}
