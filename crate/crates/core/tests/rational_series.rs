mod common;

use proptest::prelude::*;

use common::ratexpr;
use polyzeta::coeff::Q;
use polyzeta::ratseries::{enumerate_exprs, minimize, RatExpr};
use polyzeta::words::Letter;

const WEIGHT: usize = 8;

fn x_letters() -> Vec<Letter> {
    vec![Letter::x(0), Letter::x(1)]
}

fn y_letters() -> Vec<Letter> {
    vec![Letter::y(1), Letter::y(2)]
}

fn y_walk() -> Vec<Letter> {
    (1..=WEIGHT as u32).map(Letter::y).collect()
}

#[test]
fn every_small_expression_matches_its_truncation() {
    for (letters, walk) in [(x_letters(), x_letters()), (y_letters(), y_walk())] {
        let exprs = enumerate_exprs::<Q>(&letters, 6, 6);
        assert!(exprs.len() > 900);
        for e in exprs {
            let rep = e.to_rep().unwrap().truncation(&walk, WEIGHT).unwrap();
            assert_eq!(rep, e.to_trunc(WEIGHT).unwrap(), "{e}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weighted_expressions_over_x(e in ratexpr(x_letters(), 4)) {
        let rep = e.to_rep().unwrap();
        prop_assert_eq!(rep.truncation(&x_letters(), 6).unwrap(), e.to_trunc(6).unwrap());
    }

    #[test]
    fn weighted_expressions_over_y(e in ratexpr(y_letters(), 4)) {
        let rep = e.to_rep().unwrap();
        prop_assert_eq!(rep.truncation(&y_walk(), 6).unwrap(), e.to_trunc(6).unwrap());
    }

    #[test]
    fn minimize_is_idempotent_and_faithful(e in ratexpr(x_letters(), 3)) {
        let rep = e.to_rep().unwrap();
        let m = minimize(&rep);
        prop_assert!(m.dim() <= rep.dim());
        prop_assert_eq!(minimize(&m).dim(), m.dim());
        prop_assert_eq!(m.truncation(&x_letters(), 6).unwrap(), rep.truncation(&x_letters(), 6).unwrap());
    }

    #[test]
    fn display_parses_back(e in ratexpr(y_letters(), 4)) {
        let back: RatExpr<Q> = e.to_string().parse().unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn json_round_trip(e in ratexpr(x_letters(), 3)) {
        let rep = minimize(&e.to_rep().unwrap());
        let back = polyzeta::ratseries::LinRep::from_json(rep.alphabet(), &rep.to_json()).unwrap();
        prop_assert_eq!(back.truncation(&x_letters(), 5).unwrap(), rep.truncation(&x_letters(), 5).unwrap());
    }
}
