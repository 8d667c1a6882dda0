use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::Q;
use crate::error::Result;
use crate::ncalg::{lyndon_decompose, NcPoly};
use crate::ratseries::{enumerate_exprs, minimize, LinRep, RatExpr};
use crate::words::{lyndon_words, Alphabet, Letter, LetterSet, Word};

use super::{Check, Outcome};

pub const PROPERTY_SAMPLES: usize = 200;
pub const PROPERTY_WEIGHT: usize = 6;
pub const RATEXPR_SIZE: usize = 6;
pub const RATEXPR_WEIGHT: usize = 8;
const MINIMIZE_SIZE: usize = 5;
const SEED: u64 = 0x5eed_2ea1;

pub(super) fn all() -> Vec<Check> {
    vec![
        Check::new("c11.algebra-laws-x", 11, "shuffle algebra laws", |_| {
            algebra_laws(Alphabet::X)
        }),
        Check::new(
            "c11.algebra-laws-y",
            11,
            "shuffle and stuffle algebra laws",
            |_| algebra_laws(Alphabet::Y),
        ),
        Check::new(
            "c11.ratexpr-oracle-x",
            11,
            "linear representation vs truncation",
            |_| ratexpr_oracle(&[Letter::x(0), Letter::x(1)]),
        ),
        Check::new(
            "c11.ratexpr-oracle-y",
            11,
            "linear representation vs truncation",
            |_| ratexpr_oracle(&[Letter::y(1), Letter::y(2)]),
        ),
        Check::new(
            "c11.conc-character",
            11,
            "stars of letters are conc-characters",
            |_| conc_character(),
        ),
        Check::new("c11.minimize", 11, "minimization", |_| minimize_law()),
        Check::new("c11.lyndon", 11, "Lyndon words vs suffix oracle", |_| {
            lyndon_oracle()
        }),
        Check::new(
            "c11.radford",
            11,
            "Radford decomposition round trip",
            |_| radford(),
        ),
    ]
}

fn letters_of(alphabet: Alphabet) -> Vec<Letter> {
    match alphabet {
        Alphabet::X => vec![Letter::x(0), Letter::x(1)],
        Alphabet::Y => (1..=3).map(Letter::y).collect(),
    }
}

fn random_word(rng: &mut ChaCha8Rng, letters: &[Letter], max_weight: usize) -> Word {
    let target = rng.gen_range(0..=max_weight);
    let mut w = Vec::new();
    let mut weight = 0;
    while weight < target {
        let fits: Vec<Letter> = letters
            .iter()
            .copied()
            .filter(|l| weight + l.weight() <= target)
            .collect();
        let l = fits[rng.gen_range(0..fits.len())];
        weight += l.weight();
        w.push(l);
    }
    Word::new(w).expect("single alphabet")
}

pub(crate) fn random_poly(
    rng: &mut ChaCha8Rng,
    alphabet: Alphabet,
    max_weight: usize,
) -> NcPoly<Q> {
    let letters = letters_of(alphabet);
    let mut p = NcPoly::zero(alphabet);
    for _ in 0..rng.gen_range(1..=3) {
        let c = Q::new(
            rng.gen_range(-5i64..=5).into(),
            rng.gen_range(1i64..=3).into(),
        );
        p.add_term(random_word(rng, &letters, max_weight), c);
    }
    p
}

type Product = fn(&NcPoly<Q>, &NcPoly<Q>) -> Result<NcPoly<Q>>;

fn algebra_laws(alphabet: Alphabet) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut products: Vec<(&str, Product)> = vec![("shuffle", |a, b| a.shuffle(b))];
    if alphabet == Alphabet::Y {
        products.push(("stuffle", |a, b| a.stuffle(b)));
    }
    let one = NcPoly::one(alphabet);
    let mut failures = Vec::new();
    for i in 0..PROPERTY_SAMPLES {
        // the three factors together stay within the weight bound
        let w1 = rng.gen_range(0..=PROPERTY_WEIGHT);
        let w2 = rng.gen_range(0..=PROPERTY_WEIGHT - w1);
        let w3 = PROPERTY_WEIGHT - w1 - w2;
        let (p, q, r) = (
            random_poly(&mut rng, alphabet, w1),
            random_poly(&mut rng, alphabet, w2),
            random_poly(&mut rng, alphabet, w3),
        );
        for (name, mul) in &products {
            let comm = mul(&p, &q)? == mul(&q, &p)?;
            let assoc = mul(&mul(&p, &q)?, &r)? == mul(&p, &mul(&q, &r)?)?;
            let unit = mul(&p, &one)? == p && mul(&one, &p)? == p;
            if !(comm && assoc && unit) {
                failures.push(format!("{name} sample {i}"));
            }
        }
    }
    let names: Vec<&str> = products.iter().map(|(n, _)| *n).collect();
    Ok(Outcome::new(
        failures.is_empty(),
        format!(
            "{} laws on {PROPERTY_SAMPLES} random triples over {alphabet:?}",
            names.join("/")
        ),
        "commutative, associative, unital",
        format!("exact, total weight <= {PROPERTY_WEIGHT}"),
    )
    .with_note(if failures.is_empty() {
        "no counterexample".into()
    } else {
        failures.join(", ")
    }))
}

fn ratexpr_oracle(letters: &[Letter]) -> Result<Outcome> {
    let exprs: Vec<RatExpr<Q>> = enumerate_exprs(letters, RATEXPR_SIZE, RATEXPR_SIZE);
    let walk: Vec<Letter> = match letters[0].alphabet() {
        Alphabet::X => letters.to_vec(),
        Alphabet::Y => (1..=RATEXPR_WEIGHT as u32).map(Letter::y).collect(),
    };
    let mut bad = Vec::new();
    for e in &exprs {
        let rep = e.to_rep()?.truncation(&walk, RATEXPR_WEIGHT)?;
        if rep != e.to_trunc(RATEXPR_WEIGHT)? {
            bad.push(format!("{e:?}"));
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!(
            "{} expressions of size <= {RATEXPR_SIZE}: linear representation",
            exprs.len()
        ),
        "truncated-series evaluation",
        format!("exact to weight {RATEXPR_WEIGHT}"),
    )
    .with_note(format!("{} mismatches", bad.len())))
}

fn words_up_to(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in letters {
                let mut v: Vec<Letter> = w.clone();
                v.push(*l);
                out.push(Word::new(v.clone()).expect("single alphabet"));
                next.push(v);
            }
        }
        frontier = next;
    }
    out
}

fn conc_character() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let letters = [Letter::x(0), Letter::x(1)];
    let words = words_up_to(&letters, PROPERTY_WEIGHT);
    let mut bad = 0usize;
    for _ in 0..20 {
        let alphas: Vec<(Letter, Q)> = letters
            .iter()
            .map(|l| {
                (
                    *l,
                    Q::new(
                        rng.gen_range(-4i64..=4).into(),
                        rng.gen_range(1i64..=3).into(),
                    ),
                )
            })
            .collect();
        let s = LinRep::conc_character(Alphabet::X, &alphas)?;
        for w in &words {
            let direct = w.letters().iter().fold(Q::one(), |acc, l| {
                acc * alphas
                    .iter()
                    .find(|(m, _)| m == l)
                    .map(|(_, a)| a.clone())
                    .unwrap_or_else(Q::zero)
            });
            let c = s.coeff(w)?;
            let split_ok = (0..=w.len()).all(|k| {
                let (u, v) = w.letters().split_at(k);
                let u = Word::new(u.to_vec()).expect("letters");
                let v = Word::new(v.to_vec()).expect("letters");
                s.coeff(&u).ok().zip(s.coeff(&v).ok()).map(|(a, b)| a * b) == Some(c.clone())
            });
            if c != direct || !split_ok {
                bad += 1;
            }
        }
    }
    Ok(Outcome::new(
        bad == 0,
        "S(uv) for S = (a0 x0 + a1 x1)*, 20 random (a0, a1)",
        "S(u) S(v) = prod of the letter parameters",
        format!("exact, words of length <= {PROPERTY_WEIGHT}"),
    )
    .with_note(format!("{bad} violations")))
}

fn minimize_law() -> Result<Outcome> {
    let letters = [Letter::x(0), Letter::x(1)];
    let exprs: Vec<RatExpr<Q>> = enumerate_exprs(&letters, MINIMIZE_SIZE, MINIMIZE_SIZE);
    let mut bad = 0usize;
    for e in &exprs {
        let rep = e.to_rep()?;
        let m = minimize(&rep);
        let mm = minimize(&m);
        let same =
            m.truncation(&letters, RATEXPR_WEIGHT)? == rep.truncation(&letters, RATEXPR_WEIGHT)?;
        if mm.dim() != m.dim() || m.dim() > rep.dim() || !same {
            bad += 1;
        }
    }
    Ok(Outcome::new(
        bad == 0,
        format!(
            "minimize on {} expressions of size <= {MINIMIZE_SIZE}",
            exprs.len()
        ),
        "idempotent, never larger, same coefficients",
        format!("exact to weight {RATEXPR_WEIGHT}"),
    )
    .with_note(format!("{bad} violations")))
}

fn brute_lyndon(letters: &[Letter], max_weight: usize) -> Vec<Word> {
    let mut out: Vec<Word> = words_up_to(letters, max_weight)
        .into_iter()
        .filter(|w| w.weight() <= max_weight && !w.is_empty())
        .filter(|w| {
            let l = w.letters();
            (1..l.len()).all(|i| l < &l[i..])
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn lyndon_oracle() -> Result<Outcome> {
    let x = lyndon_words(LetterSet::X, PROPERTY_WEIGHT)
        == brute_lyndon(&letters_of(Alphabet::X), PROPERTY_WEIGHT);
    let y_letters: Vec<Letter> = (1..=PROPERTY_WEIGHT as u32).map(Letter::y).collect();
    let y = lyndon_words(
        LetterSet::Y {
            max_index: PROPERTY_WEIGHT as u32,
        },
        PROPERTY_WEIGHT,
    ) == brute_lyndon(&y_letters, PROPERTY_WEIGHT);
    Ok(Outcome::new(
        x && y,
        "Duval enumeration over X and Y",
        "words smaller than all their proper suffixes",
        format!("exact, weight <= {PROPERTY_WEIGHT}"),
    ))
}

fn radford() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut bad = 0usize;
    for i in 0..PROPERTY_SAMPLES {
        let alphabet = if i % 2 == 0 { Alphabet::X } else { Alphabet::Y };
        let p = random_poly(&mut rng, alphabet, PROPERTY_WEIGHT);
        if lyndon_decompose(&p)?.expand()? != p {
            bad += 1;
        }
    }
    Ok(Outcome::new(
        bad == 0,
        format!("expand(lyndon_decompose(p)) on {PROPERTY_SAMPLES} random p"),
        "p",
        format!("exact, weight <= {PROPERTY_WEIGHT}"),
    )
    .with_note(format!("{bad} failures")))
}
