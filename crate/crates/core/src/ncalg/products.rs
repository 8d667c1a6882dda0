use std::collections::{BTreeMap, HashMap};

use crate::words::{Letter, Word};

type Table = HashMap<(usize, usize), BTreeMap<Vec<Letter>, u64>>;

/// Shuffle of two words as a multiset of words.
pub fn shuffle_words(u: &Word, v: &Word) -> BTreeMap<Word, u64> {
    product(u.letters(), v.letters(), false)
}

/// Quasi-shuffle of two words over Y, merging `y_i, y_j` into `y_{i+j}`.
pub fn stuffle_words(u: &Word, v: &Word) -> BTreeMap<Word, u64> {
    product(u.letters(), v.letters(), true)
}

fn product(u: &[Letter], v: &[Letter], merge: bool) -> BTreeMap<Word, u64> {
    let mut memo = Table::new();
    rec(u, v, 0, 0, merge, &mut memo);
    memo.remove(&(0, 0))
        .unwrap_or_default()
        .into_iter()
        .map(|(w, n)| (Word::new(w).expect("homogeneous by construction"), n))
        .collect()
}

fn rec(u: &[Letter], v: &[Letter], i: usize, j: usize, merge: bool, memo: &mut Table) {
    if memo.contains_key(&(i, j)) {
        return;
    }
    let mut out = BTreeMap::new();
    if i == u.len() || j == v.len() {
        let rest = if i == u.len() { &v[j..] } else { &u[i..] };
        out.insert(rest.to_vec(), 1);
        memo.insert((i, j), out);
        return;
    }
    let push = |head: Letter,
                ii: usize,
                jj: usize,
                memo: &mut Table,
                out: &mut BTreeMap<Vec<Letter>, u64>| {
        rec(u, v, ii, jj, merge, memo);
        for (tail, n) in &memo[&(ii, jj)] {
            let mut w = Vec::with_capacity(tail.len() + 1);
            w.push(head);
            w.extend_from_slice(tail);
            *out.entry(w).or_insert(0) += n;
        }
    };
    push(u[i], i + 1, j, memo, &mut out);
    push(v[j], i, j + 1, memo, &mut out);
    if merge {
        if let (Letter::Y(a), Letter::Y(b)) = (u[i], v[j]) {
            push(Letter::Y(a + b), i + 1, j + 1, memo, &mut out);
        }
    }
    memo.insert((i, j), out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_counts_are_binomial() {
        let u = Word::from_x(&[0, 0, 1]);
        let v = Word::from_x(&[1, 0]);
        let total: u64 = shuffle_words(&u, &v).values().sum();
        assert_eq!(total, 10);
    }

    #[test]
    fn stuffle_with_empty() {
        let u = Word::from_y(&[2, 1]);
        let r = stuffle_words(&u, &Word::empty());
        assert_eq!(r.len(), 1);
        assert_eq!(r[&u], 1);
    }

    #[test]
    fn stuffle_counts_delannoy() {
        // number of terms (with multiplicity) of y^a stuffle y^b is the Delannoy number
        let u = Word::from_y(&[1, 1]);
        let v = Word::from_y(&[1, 1]);
        let total: u64 = stuffle_words(&u, &v).values().sum();
        assert_eq!(total, 13);
    }
}
