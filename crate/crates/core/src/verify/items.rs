use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::{factorial, QPoly, Q};
use crate::error::Result;
use crate::ncalg::{NcPoly, TruncSeries};
use crate::regular::{
    beta_gamma_check, finite_part, gamma_char, li_extended_eval, negindex_to_starcombo,
    newton_girard_h_check, partial_beta, repeated_mzv_exact, stirling_starcombo, sum_formula_check,
    zeta_shuffle_char, ExtendedExpr, Family, StarCombo,
};
use crate::special::{
    bernoulli, ell_r, gamma_yr, mzv, weierstrass3_check, zeta_even_rational, Complex, Real,
};
use crate::words::{Alphabet, Composition, Word};

use super::{Check, Outcome, Status};

/// Precision for the criteria stated at 256 bits.
pub const HIGH_PREC: usize = 256;
/// Residuals at `HIGH_PREC` must be below `2^HIGH_PREC_TOL_LOG2`.
pub const HIGH_PREC_TOL_LOG2: i64 = -200;
pub const MZV_REL_TOL: f64 = 1e-8;
pub const BETA_QUAD_TOL: f64 = 1e-8;
pub const BETA_GAMMA_TOL: f64 = 1e-20;
pub const SERIES_WEIGHT: usize = 8;

const DIGITS: usize = 30;

fn comp(s: &str) -> Composition {
    s.parse().expect("literal composition")
}

fn list(v: &[Q]) -> String {
    v.iter()
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub(super) fn all() -> Vec<Check> {
    let mut v = Vec::new();
    v.push(Check::new(
        "c01.zeta-even-rational",
        1,
        "zeta(2k)/pi^2k by compositions, sign corrected",
        |_| even_zeta(),
    ));
    for (id, fam, k) in [
        ("c02.mzv-2-2", Family::Twos, 2),
        ("c02.mzv-2-2-2", Family::Twos, 3),
        ("c02.mzv-3-1", Family::ThreeOnes, 1),
        ("c02.mzv-4-4", Family::Fours, 2),
    ] {
        v.push(Check::new(
            id,
            2,
            "repeated-index MZV families",
            move |cfg| repeated(fam, k, cfg.err, cfg.prec_bits),
        ));
    }
    for (idx, num, den) in [
        ("(-1,-1)", 11, 24),
        ("(-2,-1)", -73, 120),
        ("(-1,-2)", -67, 120),
    ] {
        v.push(Check::new(
            format!("c03.gamma{idx}"),
            3,
            "gamma character on negative indices",
            move |_| gamma_negative(idx, Q::new(num.into(), den.into())),
        ));
    }
    for (idx, want) in [
        ("(-1,-1)", vec![-1, 5, -7, 3]),
        ("(-2,-1)", vec![1, -11, 31, -33, 12]),
        ("(-1,-2)", vec![1, -9, 23, -23, 8]),
    ] {
        v.push(Check::new(
            format!("c04.negindex{idx}"),
            4,
            "Li of negative indices as (k x1)* combinations",
            move |_| negindex(idx, &want),
        ));
    }
    v.push(Check::new(
        "c05.stuffle-star-identity",
        5,
        "(sum a_s y_s)* stuffle (sum b_s y_s)* as one star",
        |_| stuffle_star_identity(),
    ));
    for r in 1..=3u32 {
        v.push(Check::new(
            format!("c05.newton-girard-r{r}"),
            5,
            "H of (t^r y_r)* by the Newton-Girard formula",
            move |_| newton_girard(r),
        ));
    }
    for r in 1..=2u32 {
        v.push(Check::new(
            format!("c06.y-star-exp-r{r}"),
            6,
            "y_r* as a stuffle exponential",
            move |_| y_star_exp(r),
        ));
    }
    v.push(Check::new(
        "c07.euler-complement",
        7,
        "Euler complement formula via l_1",
        |_| euler_complement(),
    ));
    v.push(Check::new(
        "c07.gamma-y2-sine",
        7,
        "Gamma_{y2}(1 + iz) = z pi / sin(z pi)",
        |_| gamma_y2_sine(),
    ));
    for (r, q) in [(1u32, 3u32), (2, 3)] {
        v.push(Check::new(
            format!("c08.weierstrass-r{r}-q{q}"),
            8,
            "e^{l_qr(z)} as a product over q-th roots",
            move |_| weierstrass3(r, q),
        ));
    }
    for k in 3..=5u64 {
        v.push(Check::new(
            format!("c09.sum-formula-k{k}"),
            9,
            "sum formula from the double generating series",
            move |cfg| sum_formula(k, cfg.err, cfg.prec_bits),
        ));
    }
    for (name, z, a, b) in [
        ("z1/2-a1/2-b1/2", (1, 2), (1, 2), (1, 2)),
        ("z2/3-a1/3-b2/3", (2, 3), (1, 3), (2, 3)),
    ] {
        for form in [0u8, 1] {
            v.push(Check::new(
                format!("c10.li-extended-x{form}-{name}"),
                10,
                "comparison formula for the partial Beta function",
                move |_| li_extended(form, z, a, b),
            ));
        }
    }
    for (name, a, b) in [
        ("a1/2-b1/2", (1, 2), (1, 2)),
        ("a1/3-b2/3", (1, 3), (2, 3)),
        ("a1-b1", (1, 1), (1, 1)),
    ] {
        v.push(Check::new(
            format!("c10.beta-gamma-{name}"),
            10,
            "B(a,b) as a quotient of gamma characters",
            move |_| beta_gamma(a, b),
        ));
    }
    for (idx, printed) in [("(-1,-1)", 0), ("(-2,-1)", -1), ("(-1,-2)", 0)] {
        v.push(Check::new(
            format!("c12.zeta-shuffle{idx}"),
            12,
            "zeta_shuffle on negative indices",
            move |_| zeta_shuffle_negative(idx, printed),
        ));
    }
    for idx in ["(-1)", "(-1,-1)", "(-2,-1)", "(-1,-2)"] {
        v.push(Check::new(
            format!("c12.stirling{idx}"),
            12,
            "Stirling-number formula for R_{y_s1...y_sr}",
            move |_| stirling(idx),
        ));
    }
    v
}

/// `zeta(2k)/pi^{2k} = (-1)^{k+1} B_{2k} 2^{2k-1} / (2k)!`.
fn even_zeta_bernoulli(k: u32) -> Q {
    let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
    sign * bernoulli(2 * k as usize) * Q::from_integer(BigInt::from(2).pow(2 * k - 1))
        / factorial(2 * k as u64)
}

fn even_zeta() -> Result<Outcome> {
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for k in 1..=12 {
        lhs.push(zeta_even_rational(k)?);
        rhs.push(even_zeta_bernoulli(k));
    }
    Ok(Outcome::new(
        lhs == rhs,
        list(&lhs),
        list(&rhs),
        "exact, k = 1..12",
    ))
}

fn repeated(fam: Family, k: usize, err: f64, prec: usize) -> Result<Outcome> {
    let idx = fam.index(k);
    let q = repeated_mzv_exact(fam, k)?;
    let v = mzv(&idx, err, prec)?;
    let exact = Real::from_q(&q, prec) * Real::pi(prec).powi(fam.weight(k) as usize);
    let rel = ((&v.value - &exact).abs() / exact.clone()).to_f64();
    Ok(Outcome::new(
        rel <= MZV_REL_TOL,
        format!("zeta{idx} = {}", v.value.to_decimal(DIGITS)),
        format!("({q}) pi^{} = {}", fam.weight(k), exact.to_decimal(DIGITS)),
        format!("relative {MZV_REL_TOL:e}"),
    )
    .with_note(format!(
        "relative error {rel:.3e}, numeric bound {:.3e}",
        v.bound
    )))
}

fn gamma_negative(idx: &str, want: Q) -> Result<Outcome> {
    let combo = negindex_to_starcombo(&comp(idx))?.to_harmonic()?;
    let got = gamma_char(&combo, 64)?;
    let exact = got.exact().cloned();
    Ok(Outcome::new(
        exact.as_ref() == Some(&want),
        format!(
            "gamma({combo}) = {}",
            exact.map_or_else(|| "non-exact".into(), |q| q.to_string())
        ),
        want.to_string(),
        "exact",
    ))
}

fn negindex(idx: &str, want: &[i64]) -> Result<Outcome> {
    let combo = negindex_to_starcombo(&comp(idx))?;
    let want_q: Vec<Q> = want.iter().map(|&c| Q::from_integer(c.into())).collect();
    let expected = StarCombo::from_integer_stars(Alphabet::X, Q::zero(), &want_q);
    Ok(Outcome::new(
        combo == expected,
        combo.to_string(),
        expected.to_string(),
        "exact",
    ))
}

fn y_letter_series(coeffs: &[(u32, QPoly)], w: usize) -> Result<TruncSeries<QPoly>> {
    let mut p = NcPoly::zero(Alphabet::Y);
    for (s, c) in coeffs {
        p.add_term(Word::from_y(&[*s]), c.clone());
    }
    TruncSeries::new(p, w).star()
}

/// `(a1 y1 + a2 y2)* ⧺ (b1 y1 + b2 y2)* = (sum (a_s + b_s) y_s + sum a_s b_r y_{s+r})*`
/// with `a1, a2, b1, b2` formal.
fn stuffle_star_identity() -> Result<Outcome> {
    let a = [QPoly::var(1), QPoly::var(3)];
    let b = [QPoly::var(2), QPoly::var(4)];
    let left = y_letter_series(&[(1, a[0].clone()), (2, a[1].clone())], SERIES_WEIGHT)?;
    let right = y_letter_series(&[(1, b[0].clone()), (2, b[1].clone())], SERIES_WEIGHT)?;
    let product = left.stuffle(&right)?;
    let mut merged: Vec<(u32, QPoly)> = vec![
        (1, a[0].clone() + b[0].clone()),
        (2, a[1].clone() + b[1].clone()),
    ];
    for (s, x) in a.iter().enumerate() {
        for (r, y) in b.iter().enumerate() {
            merged.push((s as u32 + r as u32 + 2, x.clone() * y.clone()));
        }
    }
    let single = y_letter_series(&merged, SERIES_WEIGHT)?;
    let words = single.terms().count();
    Ok(Outcome::new(
        product == single,
        "(a y1 + c y2)* ⧺ (b y1 + v4 y2)*",
        "((a+b) y1 + (c+v4+a*b) y2 + (a*v4+b*c) y3 + c*v4 y4)*",
        format!("exact to weight {SERIES_WEIGHT}"),
    )
    .with_note(format!("{words} coefficients compared")))
}

fn newton_girard(r: u32) -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 0..=20 {
        if !newton_girard_h_check(r, n)? {
            bad.push(n);
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!("sum_k H_{{y{r}^k}}(N) t^{{{r}k}}"),
        format!(
            "prod_n (1 + t^{r}/n^{r}) = exp(sum_k (-1)^(k-1) H_{{y{}k}}(N) t^{{{r}k}}/k)",
            r
        ),
        "exact, N = 0..20",
    )
    .with_note(if bad.is_empty() {
        "all N agree".to_string()
    } else {
        format!("mismatch at N = {bad:?}")
    }))
}

fn y_star_exp(r: u32) -> Result<Outcome> {
    let w = SERIES_WEIGHT;
    let star = TruncSeries::new(NcPoly::<Q>::letter(crate::words::Letter::y(r)), w).star()?;
    let mut log = NcPoly::zero(Alphabet::Y);
    let mut k = 1u32;
    while (k * r) as usize <= w {
        let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
        log.add_term(Word::from_y(&[k * r]), sign / Q::from_integer(k.into()));
        k += 1;
    }
    let exp = TruncSeries::new(log, w).exp_stuffle()?;
    Ok(Outcome::new(
        star == exp,
        format!("y{r}*"),
        format!("exp_⧺(sum_k (-1)^(k-1) y_{{{r}k}} / k)"),
        format!("exact to weight {w}"),
    ))
}

fn high_tol() -> f64 {
    2f64.powi(HIGH_PREC_TOL_LOG2 as i32)
}

const COMPLEMENT_POINTS: [(f64, f64); 3] = [(0.1, 0.0), (0.3, 0.2), (-0.45, 0.0)];
const COMPLEMENT_LABEL: &str = "z in {0.1, 0.3+0.2i, -0.45}";

fn sinc_pi(z: &Complex, p: usize) -> Complex {
    let piz = z.scale(&Real::pi(p));
    piz.sin() / piz
}

fn euler_complement() -> Result<Outcome> {
    let p = HIGH_PREC;
    let mut worst = Real::zero(p);
    for (re, im) in COMPLEMENT_POINTS {
        let z = Complex::from_f64(re, im, p);
        let lhs = &ell_r(1, &z, p)?.exp() * &ell_r(1, &(-z.clone()), p)?.exp();
        worst = worst.max(&(&lhs - &sinc_pi(&z, p)).abs());
    }
    Ok(Outcome::new(
        worst.below_pow2(HIGH_PREC_TOL_LOG2),
        format!("e^{{l_1(z)}} e^{{l_1(-z)}}, {COMPLEMENT_LABEL}"),
        "sin(z pi)/(z pi)",
        format!("{:e}", high_tol()),
    )
    .with_note(format!("max residual {:e}", worst.to_f64())))
}

fn gamma_y2_sine() -> Result<Outcome> {
    let p = HIGH_PREC;
    let mut worst = Real::zero(p);
    for (re, im) in COMPLEMENT_POINTS {
        let z = Complex::from_f64(re, im, p);
        let lhs = gamma_yr(2, &(&Complex::i(p) * &z), p)?;
        let d = (&lhs - &sinc_pi(&z, p).recip()).abs();
        worst = worst.max(&d);
    }
    Ok(Outcome::new(
        worst.below_pow2(HIGH_PREC_TOL_LOG2),
        format!("Gamma_{{y2}}(1 + iz), {COMPLEMENT_LABEL}"),
        "z pi / sin(z pi)",
        format!("{:e}", high_tol()),
    )
    .with_note(format!("max residual {:e}", worst.to_f64())))
}

fn weierstrass3(r: u32, q: u32) -> Result<Outcome> {
    let p = HIGH_PREC;
    let mut worst = Real::zero(p);
    for (re, im) in [(0.4, 0.0), (0.3, 0.2)] {
        let z = Complex::from_f64(re, im, p);
        worst = worst.max(&weierstrass3_check(r, q, &z, p)?);
    }
    Ok(Outcome::new(
        worst.below_pow2(HIGH_PREC_TOL_LOG2),
        format!("e^{{l_{}(z)}}, z in {{0.4, 0.3+0.2i}}", q * r),
        format!("prod_{{k<{q}}} e^{{l_{r}(chi^k z)}}"),
        format!("{:e}", high_tol()),
    )
    .with_note(format!("max residual {:e}", worst.to_f64())))
}

fn sum_formula(k: u64, err: f64, prec: usize) -> Result<Outcome> {
    let rep = sum_formula_check(k, err, prec)?;
    let sums = rep
        .per_depth
        .iter()
        .map(|d| format!("depth {}: {}", d.depth, d.sum.to_decimal(20)))
        .collect::<Vec<_>>()
        .join("; ");
    Ok(Outcome::new(
        rep.holds(),
        sums,
        format!("zeta({k}) = {}", rep.zeta_k.to_decimal(20)),
        format!("{:e}", rep.bound),
    )
    .with_note(format!(
        "adopted reading: {}; max residual {:e}; summing all depths together is off by {}",
        rep.reading,
        rep.residual.to_f64(),
        rep.mixed_residual.to_decimal(12)
    )))
}

fn qq((n, d): (i64, i64)) -> Q {
    Q::new(n.into(), d.into())
}

fn li_extended(form: u8, z: (i64, i64), a: (i64, i64), b: (i64, i64)) -> Result<Outcome> {
    let (zq, a, b) = (qq(z), qq(a), qq(b));
    let zf = Real::from_q(&zq, 64).to_f64();
    let expr = if form == 0 {
        ExtendedExpr::letter_then_star(0, a.clone(), Q::one() - &b)?
    } else {
        ExtendedExpr::letter_then_star(1, &a - Q::one(), -b.clone())?
    };
    let lhs = li_extended_eval(&expr, zf, 1e-12)?;
    let rhs = partial_beta(zf, &a, &b, 1e-12)?;
    let diff = (lhs.value - rhs.value).abs();
    Ok(Outcome::new(
        diff <= BETA_QUAD_TOL,
        format!("Li_{{{expr}}}({zq}) = {:.15}", lhs.value),
        format!("B({zq}; {a}, {b}) = {:.15}", rhs.value),
        format!("{BETA_QUAD_TOL:e}"),
    )
    .with_note(format!("difference {diff:.3e}")))
}

fn beta_gamma(a: (i64, i64), b: (i64, i64)) -> Result<Outcome> {
    let (a, b) = (qq(a), qq(b));
    let c = beta_gamma_check(&a, &b, HIGH_PREC)?;
    let ok = c.factorization_holds && c.residual.to_f64() < BETA_GAMMA_TOL;
    Ok(Outcome::new(
        ok,
        format!(
            "gamma((({}) y1)*) / gamma((({}) y1)* ⧺ (({}) y1)*) = {}",
            &a + &b - Q::one(),
            &a - Q::one(),
            &b - Q::one(),
            c.via_gamma_char.to_decimal(DIGITS)
        ),
        format!(
            "Gamma({a}) Gamma({b}) / Gamma({}) = {}",
            &a + &b,
            c.via_gamma_function.to_decimal(DIGITS)
        ),
        format!("{BETA_GAMMA_TOL:e}"),
    )
    .with_note(format!(
        "residual {:e}; stuffle factorization of the denominator {}",
        c.residual.to_f64(),
        if c.factorization_holds {
            "holds"
        } else {
            "fails"
        }
    )))
}

/// Taylor coefficients of `Li_idx` by direct nested summation.
fn li_brute(idx: &Composition, n_max: u64) -> Vec<Q> {
    fn inner(parts: &[i64], below: u64) -> Q {
        // sum_{below > m1 > ... > 0} m1^{-s1} ...
        if parts.is_empty() {
            return Q::one();
        }
        let mut s = Q::zero();
        for m in 1..below {
            let p = Q::from_integer(BigInt::from(m).pow(parts[0].unsigned_abs() as u32));
            s += p * inner(&parts[1..], m);
        }
        s
    }
    let parts = idx.parts();
    (0..n_max)
        .map(|n| {
            if n == 0 {
                return Q::zero();
            }
            Q::from_integer(BigInt::from(n).pow(parts[0].unsigned_abs() as u32))
                * inner(&parts[1..], n)
        })
        .collect()
}

const TAYLOR_TERMS: u64 = 12;

fn oracle_consistent(idx: &Composition, combo: &StarCombo) -> Result<bool> {
    Ok(combo.li_taylor(TAYLOR_TERMS as usize)? == li_brute(idx, TAYLOR_TERMS))
}

fn zeta_shuffle_negative(idx: &str, printed: i64) -> Result<Outcome> {
    let c = comp(idx);
    let combo = negindex_to_starcombo(&c)?;
    let by_char = zeta_shuffle_char(&combo)?;
    let by_fp = finite_part(&combo.scale_expansion()?);
    let consistent = by_char == by_fp && oracle_consistent(&c, &combo)?;
    let printed = Q::from_integer(printed.into());
    let status = if !consistent {
        Status::Fail
    } else if by_char != printed {
        Status::Discrepancy
    } else {
        Status::Pass
    };
    Ok(Outcome {
        status,
        lhs: format!("character: {by_char}, finite part: {by_fp}"),
        rhs: format!("printed: {printed}"),
        bound: "exact".into(),
        note: Some(format!("combination {combo}")),
    })
}

fn stirling(idx: &str) -> Result<Outcome> {
    let c = comp(idx);
    let oracle = negindex_to_starcombo(&c)?;
    let formula = stirling_starcombo(&c)?;
    let status = if !oracle_consistent(&c, &oracle)? {
        Status::Fail
    } else if formula != oracle {
        Status::Discrepancy
    } else {
        Status::Pass
    };
    Ok(Outcome {
        status,
        lhs: format!("formula: {formula}"),
        rhs: format!("linear solve: {oracle}"),
        bound: "exact".into(),
        note: Some(format!(
            "linear-solve combination matches {TAYLOR_TERMS} Taylor coefficients of Li{idx}"
        )),
    })
}
