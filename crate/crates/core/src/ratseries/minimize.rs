use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;

use crate::coeff::{Coeff, Q};
use crate::ncalg::TruncSeries;
use crate::words::Letter;

use super::{LinRep, Mat};

/// Row space kept in reduced echelon form; the coordinates of a vector of
/// the span are its entries at the pivot columns.
struct Echelon {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// Inserts `v`; returns whether it enlarged the span.
    fn insert(&mut self, v: &[Q]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = r[p].clone();
        for x in r.iter_mut() {
            *x /= &lead;
        }
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    fn coords(&self, v: &[Q]) -> Vec<Q> {
        debug_assert!(self.reduce(v).iter().all(Zero::is_zero));
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }
}

fn transpose(m: &Mat<Q>) -> Mat<Q> {
    let mut t = Mat::zeros(m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            t.set(j, i, m.get(i, j).clone());
        }
    }
    t
}

fn transpose_rep(r: &LinRep<Q>) -> LinRep<Q> {
    LinRep {
        alphabet: r.alphabet,
        beta: r.eta.clone(),
        eta: r.beta.clone(),
        mu: r.mu.iter().map(|(l, m)| (*l, transpose(m))).collect(),
    }
}

/// Restricts to the span of the row vectors `beta mu(w)`. The resulting
/// representation computes the same series.
fn left_reduce(r: &LinRep<Q>) -> LinRep<Q> {
    let mut basis = Echelon::new();
    let mut queue = VecDeque::from([r.beta.clone()]);
    while let Some(v) = queue.pop_front() {
        if basis.insert(&v) {
            for m in r.mu.values() {
                queue.push_back(m.left_apply(&v));
            }
        }
    }
    if basis.rows.is_empty() {
        return LinRep::zero(r.alphabet);
    }
    let mu =
        r.mu.iter()
            .map(|(l, m)| {
                let rows = basis
                    .rows
                    .iter()
                    .map(|row| basis.coords(&m.left_apply(row)))
                    .collect();
                (*l, Mat::from_rows(rows).unwrap())
            })
            .collect::<BTreeMap<_, _>>();
    let eta = basis
        .rows
        .iter()
        .map(|row| super::matrix::dot(row, &r.eta))
        .collect();
    LinRep::new(r.alphabet, basis.coords(&r.beta), mu, eta).expect("square by construction")
}

/// A representation of minimal dimension for the same series: reduction to
/// the reachable row space, then (by transposition) to the observable one.
pub fn minimize(r: &LinRep<Q>) -> LinRep<Q> {
    let left = left_reduce(r);
    let right = left_reduce(&transpose_rep(&left));
    transpose_rep(&right)
}

/// Decides whether the series is exchangeable through commutation of the
/// matrices of a minimal representation.
pub fn is_exchangeable_rational(r: &LinRep<Q>) -> bool {
    let m = minimize(r);
    let mats: Vec<&Mat<Q>> = m.mu.values().collect();
    for (i, a) in mats.iter().enumerate() {
        for b in &mats[i + 1..] {
            if a.mul(b) != b.mul(a) {
                return false;
            }
        }
    }
    true
}

/// Decides whether every coefficient of the truncation is constant on the
/// class of words with the same letters.
pub fn is_exchangeable_syntactic<C: Coeff>(s: &TruncSeries<C>) -> bool {
    let mut classes: BTreeMap<Vec<Letter>, Vec<&C>> = BTreeMap::new();
    for (w, c) in s.terms() {
        classes.entry(w.letter_multiset()).or_default().push(c);
    }
    classes.iter().all(|(letters, coeffs)| {
        let first = coeffs[0];
        coeffs.len() as u128 == distinct_permutations(letters) && coeffs.iter().all(|c| *c == first)
    })
}

fn distinct_permutations(sorted: &[Letter]) -> u128 {
    let mut total: u128 = 1;
    let mut run = 0u128;
    for (i, l) in sorted.iter().enumerate() {
        run = if i > 0 && sorted[i - 1] == *l {
            run + 1
        } else {
            1
        };
        total = total * (i as u128 + 1) / run;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::qi;
    use crate::ncalg::NcPoly;
    use crate::words::{Alphabet, Word};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn minimize_examples() {
        let r = LinRep::conc_character(Alphabet::X, &[(Letter::x(1), qi(2))]).unwrap();
        let s = r.add(&r).unwrap();
        assert_eq!(s.dim(), 2);
        let m = minimize(&s);
        assert_eq!(m.dim(), 1);
        assert_eq!(m.constant_term(), qi(2));
        assert_eq!(m.coeff(&w("x1 x1 x1")).unwrap(), qi(16));

        assert_eq!(minimize(&r).dim(), 1);

        let x1 = LinRep::letter(Letter::x(1), qi(1));
        let s = x1.add(&x1).unwrap();
        assert_eq!(s.dim(), 4);
        let m = minimize(&s);
        assert!(m.dim() <= 2);
        assert_eq!(m.coeff(&w("x1")).unwrap(), qi(2));
    }

    #[test]
    fn minimize_zero_series() {
        let x1 = LinRep::letter(Letter::x(1), qi(1));
        let neg = LinRep::letter(Letter::x(1), qi(-1));
        let m = minimize(&x1.add(&neg).unwrap());
        assert_eq!(m.dim(), 1);
        assert_eq!(m.coeff(&w("x1")).unwrap(), qi(0));
    }

    #[test]
    fn exchangeability_examples() {
        let s =
            LinRep::conc_character(Alphabet::X, &[(Letter::x(0), qi(3)), (Letter::x(1), qi(5))])
                .unwrap();
        assert!(is_exchangeable_rational(&s));

        let x0x1 = LinRep::letter(Letter::x(0), qi(1))
            .conc(&LinRep::letter(Letter::x(1), qi(1)))
            .unwrap();
        assert!(!is_exchangeable_rational(&x0x1));
        let t = TruncSeries::new(NcPoly::<Q>::parse(Alphabet::X, "x0 x1").unwrap(), 4);
        assert!(!is_exchangeable_syntactic(&t));

        let t = TruncSeries::new(NcPoly::<Q>::parse(Alphabet::X, "x0 x1 + x1 x0").unwrap(), 4);
        assert!(is_exchangeable_syntactic(&t));
    }

    #[test]
    fn permutation_counts() {
        let l = [Letter::x(0), Letter::x(0), Letter::x(1)];
        assert_eq!(distinct_permutations(&l), 3);
    }
}
