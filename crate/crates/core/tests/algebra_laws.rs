mod common;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use proptest::prelude::*;

use common::{poly, rational, word};
use polyzeta::coeff::Q;
use polyzeta::ncalg::{lyndon_decompose, NcPoly, TruncSeries};
use polyzeta::ratseries::LinRep;
use polyzeta::regular::{y_star, GammaCharInput, StarAtom};
use polyzeta::words::{
    is_lyndon, lyndon_factorize, lyndon_words, Alphabet, Letter, LetterSet, Word,
};

fn all_words(letters: &[Letter], max_weight: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut i = 0;
    while i < out.len() {
        let w = out[i].clone();
        for l in letters {
            if w.weight() + l.weight() <= max_weight {
                out.push(w.concat(&Word::letter(*l)));
            }
        }
        i += 1;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shuffle_laws_over_x(p in poly(Alphabet::X, 3), q in poly(Alphabet::X, 2), r in poly(Alphabet::X, 1)) {
        prop_assert_eq!(p.shuffle(&q).unwrap(), q.shuffle(&p).unwrap());
        prop_assert_eq!(
            p.shuffle(&q).unwrap().shuffle(&r).unwrap(),
            p.shuffle(&q.shuffle(&r).unwrap()).unwrap()
        );
        let one = NcPoly::one(Alphabet::X);
        prop_assert_eq!(p.shuffle(&one).unwrap(), p);
    }

    #[test]
    fn stuffle_and_shuffle_laws_over_y(p in poly(Alphabet::Y, 3), q in poly(Alphabet::Y, 2), r in poly(Alphabet::Y, 1)) {
        for mul in [NcPoly::<Q>::shuffle, NcPoly::<Q>::stuffle] {
            prop_assert_eq!(mul(&p, &q).unwrap(), mul(&q, &p).unwrap());
            prop_assert_eq!(
                mul(&mul(&p, &q).unwrap(), &r).unwrap(),
                mul(&p, &mul(&q, &r).unwrap()).unwrap()
            );
            prop_assert_eq!(mul(&p, &NcPoly::one(Alphabet::Y)).unwrap(), p.clone());
        }
    }

    #[test]
    fn stuffle_is_shuffle_plus_contractions(u in word(Alphabet::Y, 3), v in word(Alphabet::Y, 3)) {
        // equal in top length, the difference lives in strictly shorter words
        let a = NcPoly::<Q>::monomial(Alphabet::Y, u.clone(), Q::one());
        let b = NcPoly::monomial(Alphabet::Y, v.clone(), Q::one());
        let d = a.stuffle(&b).unwrap() - a.shuffle(&b).unwrap();
        prop_assert!(d.terms().all(|(w, _)| w.len() < u.len() + v.len()));
    }

    #[test]
    fn stuffle_star_identity(a in rational(), b in rational(), c in rational(), d in rational()) {
        let input = GammaCharInput::new(vec![
            StarAtom::y(1, a.clone()), StarAtom::y(2, c.clone()),
        ]).unwrap();
        let left = |x: &Q, y: &Q| {
            let mut m = BTreeMap::new();
            m.insert(1, x.clone());
            m.insert(2, y.clone());
            m.retain(|_, v: &mut Q| !v.is_zero());
            y_star(&m, 6).unwrap()
        };
        let lhs = left(&a, &c).stuffle(&left(&b, &d)).unwrap();
        let mut rhs = BTreeMap::new();
        for (k, v) in [(1, &a + &b), (2, &c + &d + &a * &b), (3, &a * &d + &b * &c), (4, &c * &d)] {
            if !v.is_zero() {
                rhs.insert(k, v);
            }
        }
        prop_assert_eq!(lhs, y_star(&rhs, 6).unwrap());
        // (a y1)* ⧺ (c y2)* = (a y1 + c y2 + ac y3)*
        let mut single = BTreeMap::new();
        for (k, v) in [(1, a.clone()), (2, c.clone()), (3, &a * &c)] {
            if !v.is_zero() {
                single.insert(k, v);
            }
        }
        prop_assert_eq!(input.letter_coeffs(), single.clone());
        prop_assert_eq!(input.series(6).unwrap(), y_star(&single, 6).unwrap());
    }

    #[test]
    fn exp_and_log_stuffle_are_inverse(p in poly(Alphabet::Y, 4)) {
        let proper = TruncSeries::new(p.clone() - NcPoly::constant(Alphabet::Y, p.constant_term()), 5);
        let e = proper.exp_stuffle().unwrap();
        prop_assert_eq!(e.log_stuffle().unwrap(), proper);
        let unit = TruncSeries::new(p.clone() - NcPoly::constant(Alphabet::Y, p.constant_term() - Q::one()), 5);
        prop_assert_eq!(unit.log_stuffle().unwrap().exp_stuffle().unwrap(), unit);
    }

    #[test]
    fn radford_round_trip(p in poly(Alphabet::X, 6), q in poly(Alphabet::Y, 6)) {
        prop_assert_eq!(lyndon_decompose(&p).unwrap().expand().unwrap(), p);
        prop_assert_eq!(lyndon_decompose(&q).unwrap().expand().unwrap(), q);
    }

    #[test]
    fn lyndon_factorization(w in word(Alphabet::Y, 8)) {
        prop_assume!(!w.is_empty());
        let f = lyndon_factorize(&w).unwrap();
        prop_assert!(f.iter().all(is_lyndon));
        prop_assert!(f.windows(2).all(|p| p[0] >= p[1]));
        let joined = f.iter().fold(Word::empty(), |acc, l| acc.concat(l));
        prop_assert_eq!(joined, w);
    }

    #[test]
    fn conc_characters(a0 in rational(), a1 in rational(), u in word(Alphabet::X, 6), v in word(Alphabet::X, 6)) {
        let alphas = [(Letter::x(0), a0.clone()), (Letter::x(1), a1.clone())];
        let s = LinRep::conc_character(Alphabet::X, &alphas).unwrap();
        let direct = |w: &Word| w.letters().iter().fold(Q::one(), |acc, l| {
            acc * if *l == Letter::x(0) { a0.clone() } else { a1.clone() }
        });
        prop_assert_eq!(s.coeff(&u).unwrap(), direct(&u));
        prop_assert_eq!(s.coeff(&u.concat(&v)).unwrap(), s.coeff(&u).unwrap() * s.coeff(&v).unwrap());
    }
}

#[test]
fn lyndon_words_match_the_suffix_definition() {
    for (set, letters) in [
        (LetterSet::X, vec![Letter::x(0), Letter::x(1)]),
        (
            LetterSet::Y { max_index: 6 },
            (1..=6).map(Letter::y).collect(),
        ),
    ] {
        let mut brute: Vec<Word> = all_words(&letters, 6)
            .into_iter()
            .filter(|w| {
                let l = w.letters();
                !l.is_empty() && (1..l.len()).all(|i| l < &l[i..])
            })
            .collect();
        brute.sort();
        assert_eq!(lyndon_words(set, 6), brute);
    }
}

#[test]
fn shuffle_of_letters() {
    let p = NcPoly::<Q>::parse(Alphabet::X, "x0").unwrap();
    let q = NcPoly::<Q>::parse(Alphabet::X, "x1").unwrap();
    assert_eq!(p.shuffle(&q).unwrap().to_string(), "x0 x1 + x1 x0");
}
