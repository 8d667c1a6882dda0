use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::{binomial, factorial, Q};
use crate::error::{Error, Result};
use crate::special::harmonic_sum;
use crate::words::{Alphabet, Composition};

use super::StarCombo;

fn check_negative(idx: &Composition) -> Result<Vec<u64>> {
    if idx.depth() == 0 || !idx.all_negative() {
        return Err(Error::InvalidComposition(format!(
            "{idx}: every part must be <= -1"
        )));
    }
    Ok(idx.parts().iter().map(|s| s.unsigned_abs()).collect())
}

/// `P(n)`, the coefficient of `z^n` in `Li_idx(z)`: `n^{|s1|} H_rest(n - 1)`.
fn li_coefficient(idx: &Composition, n: u64) -> Q {
    let parts = idx.parts();
    let lead = Q::from_integer(BigInt::from(n).pow(parts[0].unsigned_abs() as u32));
    if parts.len() == 1 {
        return lead;
    }
    let rest = Composition::new(parts[1..].to_vec()).expect("non-empty tail");
    lead * harmonic_sum(&rest, n - 1)
}

/// Solves `A x = b` exactly; `A` must be invertible.
fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Vec<Q> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("invertible system");
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for j in col..n {
            a[col][j] *= &inv;
        }
        b[col] *= &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in col..n {
                let d = &f * &a[col][j];
                a[r][j] -= d;
            }
            let d = &f * &b[col];
            b[r] -= d;
        }
    }
    b
}

/// The unique combination of `(k x1)*` with `Li_idx = Li_R` for an index of
/// negative parts, found by matching Taylor coefficients against
/// `(1 - z)^{-k} = sum_n C(n + k - 1, k - 1) z^n`.
pub fn negindex_to_starcombo(idx: &Composition) -> Result<StarCombo> {
    let s = check_negative(idx)?;
    let degree = s.iter().sum::<u64>() + s.len() as u64 - 1;
    let size = degree as usize + 1;
    let a: Vec<Vec<Q>> = (1..=size as u64)
        .map(|n| {
            (1..=size as u64)
                .map(|k| Q::from_integer(binomial(n + k - 1, k - 1)))
                .collect()
        })
        .collect();
    let b: Vec<Q> = (1..=size as u64).map(|n| li_coefficient(idx, n)).collect();
    let c = solve(a, b);
    // Li vanishes at z = 0
    let c0 = -c.iter().fold(Q::zero(), |acc, x| acc + x);
    Ok(StarCombo::from_integer_stars(Alphabet::X, c0, &c))
}

/// Stirling number of the second kind `S2(n, k)`.
pub fn stirling2(n: u32, k: u32) -> BigInt {
    let (n, k) = (n as usize, k as usize);
    if k > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::one()];
    for i in 1..=n {
        let mut next = vec![BigInt::zero(); i + 1];
        for j in 1..=i {
            let keep = if j < i { &row[j] * j } else { BigInt::zero() };
            next[j] = keep + &row[j - 1];
        }
        row = next;
    }
    row[k].clone()
}

fn poly_mul(p: &[Q], q: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn poly_add_scaled(acc: &mut Vec<Q>, p: &[Q], c: &Q) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Q::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a += c * b;
    }
}

/// `rho_k` as a polynomial in `u = x1*`.
fn rho(k: u64) -> Vec<Q> {
    let u_minus_1 = vec![-Q::one(), Q::one()];
    if k == 0 {
        return u_minus_1;
    }
    let mut sum = vec![Q::zero()];
    let mut pow = vec![Q::one()];
    for j in 1..=k {
        pow = poly_mul(&pow, &u_minus_1);
        let c = Q::from_integer(stirling2(k as u32, j as u32)) * factorial(j);
        poly_add_scaled(&mut sum, &pow, &c);
    }
    poly_mul(&[Q::zero(), Q::one()], &sum)
}

/// Literal evaluation of the Stirling-number formula
/// `sum_{k_1..k_r} prod_i C(s_1+..+s_i - k_1-..-k_{i-1}, k_i) rho_{k_1} ⧢ .. ⧢ rho_{k_r}`.
pub fn stirling_starcombo(idx: &Composition) -> Result<StarCombo> {
    let s = check_negative(idx)?;
    let mut total = vec![Q::zero()];
    walk(&s, 0, 0, 0, Q::one(), vec![Q::one()], &mut total);
    Ok(StarCombo::from_x1_polynomial(&total))
}

fn walk(s: &[u64], i: usize, s_sum: u64, k_sum: u64, weight: Q, prod: Vec<Q>, total: &mut Vec<Q>) {
    if i == s.len() {
        poly_add_scaled(total, &prod, &weight);
        return;
    }
    let m = s_sum + s[i] - k_sum;
    for k in 0..=m {
        let w = &weight * Q::from_integer(binomial(m, k));
        walk(
            s,
            i + 1,
            s_sum + s[i],
            k_sum + k,
            w,
            poly_mul(&prod, &rho(k)),
            total,
        );
    }
}
