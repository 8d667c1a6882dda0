use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use polyzeta::coeff::{factorial, Q};
use polyzeta::regular::{gamma_atom, repeated_mzv_exact, Family, StarAtom};
use polyzeta::special::{bernoulli, harmonic_sum, mzv, mzv_with_cutoff, zeta_even_rational, Real};
use polyzeta::words::Composition;

const PREC: usize = 160;

/// Bernoulli numbers with `B_1 = +1/2`, by the Akiyama-Tanigawa triangle.
fn akiyama_tanigawa(n: usize) -> Q {
    let mut a = vec![Q::zero(); n + 1];
    for m in 0..=n {
        a[m] = Q::new(1.into(), BigInt::from(m + 1));
        for j in (1..=m).rev() {
            a[j - 1] = Q::from_integer(BigInt::from(j)) * (&a[j - 1] - &a[j]);
        }
    }
    a[0].clone()
}

fn naive_harmonic(parts: &[i64], n: u64) -> Q {
    let Some((&s, rest)) = parts.split_first() else {
        return Q::one();
    };
    (1..=n)
        .map(|m| {
            let mm = Q::from_integer(BigInt::from(m));
            let p = if s > 0 {
                mm.pow(s as i32).recip()
            } else {
                mm.pow((-s) as i32)
            };
            p * naive_harmonic(rest, m - 1)
        })
        .fold(Q::zero(), |a, b| a + b)
}

#[test]
fn akiyama_tanigawa_agrees_with_the_library_bernoulli_numbers() {
    for n in 2..=24 {
        assert_eq!(akiyama_tanigawa(n), bernoulli(n), "B_{n}");
    }
    assert_eq!(akiyama_tanigawa(1), Q::new(1.into(), 2.into()));
}

#[test]
fn even_zeta_rationals_match_bernoulli() {
    for k in 1..=12u32 {
        let b = akiyama_tanigawa(2 * k as usize);
        let sign = if k % 2 == 1 { Q::one() } else { -Q::one() };
        let want =
            sign * b * Q::from_integer(BigInt::from(2).pow(2 * k - 1)) / factorial(2 * k as u64);
        assert_eq!(zeta_even_rational(k).unwrap(), want, "k = {k}");
    }
}

#[test]
fn harmonic_sums_match_nested_loops() {
    fn compositions(weight: i64, out: &mut Vec<Vec<i64>>, acc: &mut Vec<i64>) {
        if weight == 0 {
            if !acc.is_empty() {
                out.push(acc.clone());
            }
            return;
        }
        for s in 1..=weight {
            for signed in [s, -s] {
                acc.push(signed);
                compositions(weight - s, out, acc);
                acc.pop();
            }
        }
    }
    let mut all = Vec::new();
    for w in 1..=5 {
        compositions(w, &mut all, &mut Vec::new());
    }
    for parts in all {
        let idx = Composition::new(parts.clone()).unwrap();
        for n in [0, 1, 2, 7, 30] {
            assert_eq!(
                harmonic_sum(&idx, n),
                naive_harmonic(&parts, n),
                "{idx} at {n}"
            );
        }
    }
}

#[test]
fn repeated_families_match_numeric_mzvs() {
    let pi = Real::pi(PREC);
    for (family, k) in [
        (Family::Twos, 1),
        (Family::Twos, 2),
        (Family::Twos, 3),
        (Family::Twos, 6),
        (Family::ThreeOnes, 1),
        (Family::ThreeOnes, 2),
        (Family::Fours, 1),
        (Family::Fours, 2),
    ] {
        let exact = repeated_mzv_exact(family, k).unwrap();
        let want = &Real::from_q(&exact, PREC) * &pi.powi(family.weight(k) as usize);
        let got = mzv(&family.index(k), 1e-15, PREC).unwrap();
        let diff = (&got.value - &want).abs().to_f64();
        assert!(
            diff <= got.bound + 1e-40,
            "{family}^{k}: {diff:e} > {:e}",
            got.bound
        );
    }
}

#[test]
fn doubling_the_cutoff_stays_within_the_bound() {
    for idx in ["(2)", "(3,1)", "(2,1,1)", "(2,2)", "(5,3)"] {
        let c: Composition = idx.parse().unwrap();
        for n in [20u64, 40] {
            let a = mzv_with_cutoff(&c, n, PREC).unwrap();
            let b = mzv_with_cutoff(&c, 2 * n, PREC).unwrap();
            assert!(
                (&a.value - &b.value).abs().to_f64() <= a.bound,
                "{idx} at {n}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `(t y1)* ⧺ (-t y1)* = (-t^2 y2)*`, so gamma must factor accordingly.
    #[test]
    fn gamma_is_multiplicative(n in -9i64..=9, d in 10i64..=20) {
        prop_assume!(n != 0);
        let t = Q::new(n.into(), d.into());
        let g = |a: StarAtom| gamma_atom(&a, PREC).unwrap().to_real(PREC);
        let product = &g(StarAtom::y(1, t.clone())) * &g(StarAtom::y(1, -t.clone()));
        let single = g(StarAtom::y(2, -(&t * &t)));
        prop_assert!((&product - &single).abs().to_f64() < 1e-40);
        // and the Euler complement closes the loop: sin(pi t)/(pi t)
        let pt = &Real::pi(PREC) * &Real::from_q(&t, PREC);
        let sinc = &pt.sin() / &pt;
        prop_assert!((&product - &sinc).abs().to_f64() < 1e-40);
    }

    #[test]
    fn integer_gamma_atoms_are_inverse_factorials(n in -5i64..=12) {
        let v = gamma_atom(&StarAtom::y(1, Q::from_integer(n.into())), PREC).unwrap();
        let want = if n < 0 { Q::zero() } else { factorial(n as u64).recip() };
        prop_assert_eq!(v.exact().cloned(), Some(want));
    }

    #[test]
    fn small_mzvs_are_positive_and_decreasing_in_the_first_part(s in 2i64..=6, t in 1i64..=3) {
        let a = mzv(&Composition::new(vec![s, t]).unwrap(), 1e-12, 96).unwrap().value;
        let b = mzv(&Composition::new(vec![s + 1, t]).unwrap(), 1e-12, 96).unwrap().value;
        prop_assert!(b > Real::zero(96) && a > b);
    }
}
