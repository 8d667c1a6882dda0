#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;

use polyzeta::coeff::Q;
use polyzeta::ncalg::NcPoly;
use polyzeta::ratseries::RatExpr;
use polyzeta::words::{Alphabet, Letter, Word};

pub fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Q::new(BigInt::from(n), BigInt::from(d)))
}

pub fn nonzero_rational() -> impl Strategy<Value = Q> {
    rational().prop_filter("nonzero", |q| *q != Q::from_integer(0.into()))
}

pub fn letters(alphabet: Alphabet) -> Vec<Letter> {
    match alphabet {
        Alphabet::X => vec![Letter::x(0), Letter::x(1)],
        Alphabet::Y => (1..=3).map(Letter::y).collect(),
    }
}

/// Words over `letters` with total weight at most `max_weight`.
pub fn word(alphabet: Alphabet, max_weight: usize) -> impl Strategy<Value = Word> {
    let ls = letters(alphabet);
    prop::collection::vec(0..ls.len(), 0..=max_weight).prop_map(move |idx| {
        let mut w = Vec::new();
        let mut weight = 0;
        for i in idx {
            if weight + ls[i].weight() <= max_weight {
                weight += ls[i].weight();
                w.push(ls[i]);
            }
        }
        Word::new(w).unwrap()
    })
}

pub fn poly(alphabet: Alphabet, max_weight: usize) -> impl Strategy<Value = NcPoly<Q>> {
    prop::collection::vec((word(alphabet, max_weight), rational()), 0..=3).prop_map(move |terms| {
        let mut p = NcPoly::zero(alphabet);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    })
}

/// Random rational expressions over the given letters; stars are only taken
/// of proper subexpressions.
pub fn ratexpr(letters: Vec<Letter>, depth: u32) -> impl Strategy<Value = RatExpr<Q>> {
    let stuffle = letters[0].alphabet() == Alphabet::Y;
    let leaf =
        (prop::sample::select(letters), nonzero_rational()).prop_map(|(l, c)| RatExpr::Atom(c, l));
    leaf.prop_recursive(depth, 12, 2, move |inner| {
        let b = |e: RatExpr<Q>| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| RatExpr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| RatExpr::Conc(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| if stuffle {
                RatExpr::Stuffle(b(x), b(y))
            } else {
                RatExpr::Shuffle(b(x), b(y))
            }),
            inner.prop_map(move |x| if x.constant_term() == Q::from_integer(0.into()) {
                RatExpr::Star(b(x))
            } else {
                x
            }),
        ]
    })
}
