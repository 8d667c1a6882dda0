use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::{factorial, Q};
use crate::error::{Error, Result};
use crate::special::{harmonic_sum, mzv, zeta_int, Real};
use crate::words::Composition;

/// Index families `{2}^k`, `{4}^k` and `{3,1}^k` whose MZVs are rational
/// multiples of a power of pi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Twos,
    Fours,
    ThreeOnes,
}

impl Family {
    pub fn index(self, k: usize) -> Composition {
        let block: &[i64] = match self {
            Family::Twos => &[2],
            Family::Fours => &[4],
            Family::ThreeOnes => &[3, 1],
        };
        Composition::new(block.repeat(k)).expect("non-empty")
    }

    pub fn weight(self, k: usize) -> u64 {
        match self {
            Family::Twos => 2 * k as u64,
            Family::Fours | Family::ThreeOnes => 4 * k as u64,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .replace(' ', "")
            .as_str()
        {
            "2" => Ok(Family::Twos),
            "4" => Ok(Family::Fours),
            "3,1" => Ok(Family::ThreeOnes),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Twos => "{2}",
            Family::Fours => "{4}",
            Family::ThreeOnes => "{3,1}",
        })
    }
}

/// The rational `q` with `zeta(family^k) = q pi^{weight}`:
/// `1/(2k+1)!`, `2^{2k+1}/(4k+2)!` and `2/(4k+2)!`.
pub fn repeated_mzv_exact(family: Family, k: usize) -> Result<Q> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let k = k as u64;
    Ok(match family {
        Family::Twos => factorial(2 * k + 1).recip(),
        Family::Fours => {
            Q::from_integer(BigInt::from(2) * BigInt::from(4).pow(k as u32)) / factorial(4 * k + 2)
        }
        Family::ThreeOnes => Q::from_integer(BigInt::from(2)) / factorial(4 * k + 2),
    })
}

/// Compositions of `k` with first part at least 2, grouped by depth `1..k-1`.
pub fn admissible_by_depth(k: u64) -> Vec<Vec<Composition>> {
    let mut out = vec![Vec::new(); (k as usize).saturating_sub(1).max(1)];
    for c in Composition::admissible_of_weight(k) {
        out[c.depth() - 1].push(c);
    }
    out
}

#[derive(Clone, Debug)]
pub struct DepthResidual {
    pub depth: usize,
    pub terms: usize,
    pub sum: Real,
    pub residual: Real,
    pub bound: f64,
}

/// Outcome of the sum-formula check at weight `k`.
#[derive(Clone, Debug)]
pub struct SumFormulaReport {
    pub k: u64,
    /// The reading the numbers support.
    pub reading: &'static str,
    pub zeta_k: Real,
    /// One entry per depth `2..k`; depth 1 is `zeta(k)` itself.
    pub per_depth: Vec<DepthResidual>,
    /// `|zeta(k) - sum over every admissible composition|`, the reading that
    /// mixes depths; it equals `(k - 2) zeta(k)` and is not adopted.
    pub mixed_residual: Real,
    pub residual: Real,
    pub bound: f64,
}

impl SumFormulaReport {
    pub fn holds(&self) -> bool {
        self.per_depth
            .iter()
            .all(|d| d.residual.to_f64() <= d.bound)
    }
}

pub const SUM_FORMULA_READING: &str =
    "for each depth l in 1..k-1: sum over depth-l compositions of k with s1 >= 2 of zeta(s) equals zeta(k)";

/// `zeta(k) = sum_{s1+..+sl=k, s1>=2} zeta(s)` checked separately at each depth.
pub fn sum_formula_check(k: u64, err: f64, prec: usize) -> Result<SumFormulaReport> {
    if k < 3 {
        return Err(Error::InvalidArgument("k must be at least 3".into()));
    }
    let groups = admissible_by_depth(k);
    let total_terms: usize = groups.iter().map(Vec::len).sum();
    let each = err / total_terms as f64;
    let zk = zeta_int(k as u32, prec)?;
    let zk_bound = 2f64.powi(4 - prec as i32) * 2.0;
    let mut per_depth = Vec::new();
    let mut everything = Real::zero(prec);
    let mut residual = Real::zero(prec);
    let mut bound: f64 = 0.0;
    for (i, group) in groups.iter().enumerate() {
        let depth = i + 1;
        if depth == 1 {
            everything = &everything + &zk;
            continue;
        }
        let mut sum = Real::zero(prec);
        let mut b = zk_bound;
        for c in group {
            let v = mzv(c, each, prec)?;
            b += v.bound;
            sum = sum + v.value;
        }
        everything = &everything + &sum;
        let r = (&zk - &sum).abs();
        residual = residual.max(&r);
        bound = bound.max(b);
        per_depth.push(DepthResidual {
            depth,
            terms: group.len(),
            sum,
            residual: r,
            bound: b,
        });
    }
    Ok(SumFormulaReport {
        k,
        reading: SUM_FORMULA_READING,
        mixed_residual: (&zk - &everything).abs(),
        zeta_k: zk,
        per_depth,
        residual,
        bound,
    })
}

fn poly_mul_trunc(p: &[Q], q: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, a) in p.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in q.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j] += a * b;
        }
    }
    out
}

/// `exp(f)` in `Q[t]/(t^len)` for `f(0) = 0`, from `m g_m = sum_j j f_j g_{m-j}`.
fn exp_trunc(f: &[Q], len: usize) -> Vec<Q> {
    let mut g = vec![Q::zero(); len];
    if len == 0 {
        return g;
    }
    g[0] = Q::one();
    for m in 1..len {
        let mut s = Q::zero();
        for j in 1..=m.min(f.len() - 1) {
            s += Q::from_integer(BigInt::from(j)) * &f[j] * &g[m - j];
        }
        g[m] = s / Q::from_integer(BigInt::from(m));
    }
    g
}

/// The three sides of the Newton-Girard identity for `H_{(t^r y_r)*}(N)` as
/// polynomials in a formal `t`, exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonGirardSides {
    /// `sum_k H_{y_r^k}(N) t^{kr}`.
    pub elementary: Vec<Q>,
    /// `prod_{n<=N} (1 + t^r / n^r)`.
    pub product: Vec<Q>,
    /// `exp(sum_k (-1)^{k-1} H_{y_{kr}}(N) t^{kr} / k)` truncated past degree `rN`.
    pub exponential: Vec<Q>,
}

pub fn newton_girard_sides(r: u32, n: u64) -> Result<NewtonGirardSides> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let r_us = r as usize;
    let len = r_us * n as usize + 1;
    let mut elementary = vec![Q::zero(); len];
    elementary[0] = Q::one();
    for k in 1..=n as usize {
        let idx = Composition::new(vec![r as i64; k])?;
        elementary[k * r_us] = harmonic_sum(&idx, n);
    }
    let mut product = vec![Q::zero(); len];
    product[0] = Q::one();
    for m in 1..=n {
        let mut factor = vec![Q::zero(); r_us + 1];
        factor[0] = Q::one();
        factor[r_us] = Q::from_integer(BigInt::from(m).pow(r)).recip();
        product = poly_mul_trunc(&product, &factor, len);
    }
    let mut log = vec![Q::zero(); len];
    for k in 1..=n as usize {
        let idx = Composition::new(vec![(k * r_us) as i64])?;
        let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
        log[k * r_us] = sign * harmonic_sum(&idx, n) / Q::from_integer(BigInt::from(k));
    }
    let exponential = exp_trunc(&log, len);
    Ok(NewtonGirardSides {
        elementary,
        product,
        exponential,
    })
}

/// True when all three sides of the identity agree exactly.
pub fn newton_girard_h_check(r: u32, n: u64) -> Result<bool> {
    let s = newton_girard_sides(r, n)?;
    Ok(s.elementary == s.product && s.product == s.exponential)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{q, qi};

    #[test]
    fn family_values() {
        assert_eq!(repeated_mzv_exact(Family::Twos, 1).unwrap(), q(1, 6));
        assert_eq!(repeated_mzv_exact(Family::Twos, 2).unwrap(), q(1, 120));
        assert_eq!(repeated_mzv_exact(Family::ThreeOnes, 1).unwrap(), q(1, 360));
        assert_eq!(repeated_mzv_exact(Family::Fours, 1).unwrap(), q(1, 90));
        assert!(repeated_mzv_exact(Family::Twos, 0).is_err());
        assert!("5".parse::<Family>().is_err());
        assert_eq!("(3,1)".parse::<Family>().unwrap(), Family::ThreeOnes);
    }

    #[test]
    fn fours_are_four_to_the_k_times_three_ones() {
        for k in 1..5 {
            let four_k = Q::from_integer(BigInt::from(4).pow(k as u32));
            assert_eq!(
                repeated_mzv_exact(Family::Fours, k).unwrap(),
                four_k * repeated_mzv_exact(Family::ThreeOnes, k).unwrap()
            );
        }
    }

    #[test]
    fn newton_girard_small() {
        let s = newton_girard_sides(1, 2).unwrap();
        assert_eq!(s.product, vec![qi(1), q(3, 2), q(1, 2)]);
        assert!(newton_girard_h_check(1, 2).unwrap());
        let s = newton_girard_sides(2, 1).unwrap();
        assert_eq!(s.product, vec![qi(1), qi(0), qi(1)]);
        assert_eq!(newton_girard_sides(1, 0).unwrap().product, vec![qi(1)]);
        assert!(newton_girard_h_check(3, 5).unwrap());
    }

    #[test]
    fn sum_formula_weight_three() {
        let rep = sum_formula_check(3, 1e-20, 128).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.per_depth.len(), 1);
        assert!(rep.mixed_residual.to_f64() > 1.0);
    }
}
