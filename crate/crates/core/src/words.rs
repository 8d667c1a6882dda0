//! Letters, words and compositions over the two alphabets `X = {x0, x1}` and
//! `Y = {y1, y2, ...}`, with Lyndon words and the `Y <-> X` encoding of
//! compositions.
//!
//! Letters are ordered `x0 < x1` and `y1 < y2 < ...`. Weights are `|x_i| = 1`
//! and `|y_k| = k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Alphabet {
    X,
    Y,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::X => f.write_str("X"),
            Alphabet::Y => f.write_str("Y"),
        }
    }
}

/// A single letter: `x0`, `x1` or `y_k` with `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X(u8),
    Y(u32),
}

impl Letter {
    pub fn x(i: u8) -> Self {
        assert!(i <= 1, "X letters are x0 and x1");
        Letter::X(i)
    }

    pub fn y(k: u32) -> Self {
        assert!(k >= 1, "Y letters start at y1");
        Letter::Y(k)
    }

    pub fn alphabet(self) -> Alphabet {
        match self {
            Letter::X(_) => Alphabet::X,
            Letter::Y(_) => Alphabet::Y,
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Letter::X(i) => i as u32,
            Letter::Y(k) => k,
        }
    }

    pub fn weight(self) -> usize {
        match self {
            Letter::X(_) => 1,
            Letter::Y(k) => k as usize,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X(i) => write!(f, "x{i}"),
            Letter::Y(k) => write!(f, "y{k}"),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let idx: u32 = tail
            .parse()
            .map_err(|_| Error::parse(0, format!("bad letter `{s}`")))?;
        match head {
            "x" if idx <= 1 => Ok(Letter::X(idx as u8)),
            "y" if idx >= 1 => Ok(Letter::Y(idx)),
            _ => Err(Error::parse(0, format!("bad letter `{s}`"))),
        }
    }
}

/// A word over a single alphabet. The empty word is the unit `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if let Some(first) = letters.first() {
            let a = first.alphabet();
            if letters.iter().any(|l| l.alphabet() != a) {
                return Err(Error::AlphabetMismatch("word mixes X and Y letters".into()));
            }
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Word over X from a slice of bits, e.g. `[0, 1, 1]` is `x0 x1 x1`.
    pub fn from_x(bits: &[u8]) -> Self {
        Word(bits.iter().map(|&b| Letter::x(b)).collect())
    }

    /// Word over Y from letter indices, e.g. `[2, 1]` is `y2 y1`.
    pub fn from_y(idx: &[u32]) -> Self {
        Word(idx.iter().map(|&k| Letter::y(k)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|l| l.weight()).sum()
    }

    /// `None` for the empty word, which belongs to every alphabet.
    pub fn alphabet(&self) -> Option<Alphabet> {
        self.0.first().map(|l| l.alphabet())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Number of occurrences of each letter, sorted by letter.
    pub fn letter_multiset(&self) -> Vec<Letter> {
        let mut v = self.0.clone();
        v.sort();
        v
    }
}

impl From<Letter> for Word {
    fn from(l: Letter) -> Self {
        Word::letter(l)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut offset = 0;
        for tok in s.split(' ') {
            if !tok.is_empty() {
                let l = tok
                    .parse::<Letter>()
                    .map_err(|_| Error::parse(offset, format!("bad letter `{tok}`")))?;
                letters.push(l);
            }
            offset += tok.len() + 1;
        }
        Word::new(letters)
    }
}

/// A composition `(s1, ..., sr)` of nonzero integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition(Vec<i64>);

impl Composition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("empty composition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition("zero part".into()));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|s| s.unsigned_abs()).sum()
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&s| s >= 1)
    }

    pub fn all_negative(&self) -> bool {
        self.0.iter().all(|&s| s <= -1)
    }

    /// `s1 >= 2` and every part `>= 1`.
    pub fn is_convergent(&self) -> bool {
        self.all_positive() && self.0[0] >= 2
    }

    /// The word `y_{s1} ... y_{sr}` (positive parts only).
    pub fn to_y_word(&self) -> Result<Word> {
        if !self.all_positive() {
            return Err(Error::InvalidComposition(format!(
                "{self} has non-positive parts"
            )));
        }
        Ok(Word(self.0.iter().map(|&s| Letter::Y(s as u32)).collect()))
    }

    pub fn from_y_word(w: &Word) -> Result<Self> {
        let parts = w
            .letters()
            .iter()
            .map(|l| match l {
                Letter::Y(k) => Ok(*k as i64),
                Letter::X(_) => Err(Error::AlphabetMismatch("expected a Y word".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }

    /// All compositions of `weight` into positive parts with first part `>= 2`.
    pub fn admissible_of_weight(weight: u64) -> Vec<Composition> {
        fn rec(rest: u64, acc: &mut Vec<i64>, out: &mut Vec<Composition>) {
            if rest == 0 {
                if acc.first().is_some_and(|&s| s >= 2) {
                    out.push(Composition(acc.clone()));
                }
                return;
            }
            for s in 1..=rest {
                acc.push(s as i64);
                rec(rest - s, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(weight, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "composition must be written `(s1,...,sr)`"))?;
        let mut parts = Vec::new();
        let mut pos = 1;
        for tok in inner.split(',') {
            let v: i64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::parse(pos, format!("bad integer `{}`", tok.trim())))?;
            parts.push(v);
            pos += tok.len() + 1;
        }
        Composition::new(parts)
    }
}

/// `(s1, ..., sr) -> x0^{s1-1} x1 ... x0^{sr-1} x1`.
pub fn pi_x(c: &Composition) -> Result<Word> {
    if !c.all_positive() {
        return Err(Error::InvalidComposition(format!(
            "{c} has non-positive parts"
        )));
    }
    let mut v = Vec::with_capacity(c.weight() as usize);
    for &s in c.parts() {
        v.extend(std::iter::repeat_n(Letter::X(0), (s - 1) as usize));
        v.push(Letter::X(1));
    }
    Ok(Word(v))
}

/// Inverse of [`pi_x`] on `X* x1`.
pub fn pi_y(w: &Word) -> Result<Composition> {
    if w.letters().iter().any(|l| matches!(l, Letter::Y(_))) {
        return Err(Error::AlphabetMismatch("pi_Y expects an X word".into()));
    }
    if w.letters().last() != Some(&Letter::X(1)) {
        return Err(Error::NotInXStarX1);
    }
    let mut parts = Vec::new();
    let mut run = 1i64;
    for l in w.letters() {
        match l {
            Letter::X(0) => run += 1,
            _ => {
                parts.push(run);
                run = 1;
            }
        }
    }
    Composition::new(parts)
}

/// The letters a Lyndon enumeration ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LetterSet {
    X,
    /// `y1, ..., y_{max_index}`
    Y {
        max_index: u32,
    },
}

impl LetterSet {
    fn letters(self) -> Vec<Letter> {
        match self {
            LetterSet::X => vec![Letter::X(0), Letter::X(1)],
            LetterSet::Y { max_index } => (1..=max_index).map(Letter::Y).collect(),
        }
    }
}

/// Strictly smaller than every proper nonempty suffix.
pub fn is_lyndon(w: &Word) -> bool {
    let l = w.letters();
    !l.is_empty() && (1..l.len()).all(|i| l < &l[i..])
}

/// Lyndon words of weight `<= max_weight` in lexicographic order.
///
/// Duval's successor iteration, with prefixes pruned once their weight exceeds
/// the bound (letter weights are increasing, so nothing below an overweight
/// prefix survives).
pub fn lyndon_words(set: LetterSet, max_weight: usize) -> Vec<Word> {
    let alphabet = set.letters();
    let mut out = Vec::new();
    if alphabet.is_empty() || alphabet[0].weight() > max_weight {
        return out;
    }
    let top = alphabet.len() - 1;
    let wt = |w: &[usize]| -> usize { w.iter().map(|&i| alphabet[i].weight()).sum() };
    let mut w: Vec<usize> = vec![0];
    loop {
        out.push(Word(w.iter().map(|&i| alphabet[i]).collect()));
        // periodic extension while the weight bound allows
        let period = w.len();
        let mut weight = wt(&w);
        let mut i = period;
        while i < max_weight {
            let next = w[i - period];
            let lw = alphabet[next].weight();
            if weight + lw > max_weight {
                break;
            }
            weight += lw;
            w.push(next);
            i += 1;
        }
        if !advance(&mut w, top, |w| wt(w) <= max_weight) {
            break;
        }
    }
    out
}

fn advance(w: &mut Vec<usize>, top: usize, fits: impl Fn(&[usize]) -> bool) -> bool {
    loop {
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            None => return false,
            Some(last) => *last += 1,
        }
        if fits(w) {
            return true;
        }
        w.pop();
    }
}

/// Chen–Fox–Lyndon factorization (Duval). Factors are Lyndon and non-increasing.
pub fn lyndon_factorize(w: &Word) -> Result<Vec<Word>> {
    let s = w.letters();
    if s.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = s.len();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            factors.push(Word(s[i..i + j - k].to_vec()));
            i += j - k;
        }
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(v: &[&str]) -> Vec<Word> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn lyndon_x_weight_three() {
        assert_eq!(
            lyndon_words(LetterSet::X, 3),
            words(&["x0", "x0 x0 x1", "x0 x1", "x0 x1 x1", "x1"])
        );
        assert_eq!(lyndon_words(LetterSet::X, 1), words(&["x0", "x1"]));
    }

    #[test]
    fn lyndon_y_weight_three() {
        assert_eq!(
            lyndon_words(LetterSet::Y { max_index: 3 }, 3),
            words(&["y1", "y1 y2", "y2", "y3"])
        );
        assert!(lyndon_words(LetterSet::Y { max_index: 0 }, 3).is_empty());
        assert!(lyndon_words(LetterSet::X, 0).is_empty());
    }

    #[test]
    fn factorize_examples() {
        let f = |s: &str| lyndon_factorize(&s.parse().unwrap()).unwrap();
        assert_eq!(f("x1 x0"), words(&["x1", "x0"]));
        assert_eq!(f("x0 x1 x0 x1"), words(&["x0 x1", "x0 x1"]));
        assert_eq!(f("x0 x0 x1"), words(&["x0 x0 x1"]));
        assert_eq!(lyndon_factorize(&Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn pi_maps() {
        let c: Composition = "(2,1)".parse().unwrap();
        assert_eq!(pi_x(&c).unwrap(), "x0 x1 x1".parse().unwrap());
        assert_eq!(
            pi_x(&"(1)".parse().unwrap()).unwrap(),
            "x1".parse().unwrap()
        );
        assert_eq!(
            pi_y(&"x0 x0 x1 x1".parse().unwrap()).unwrap(),
            "(3,1)".parse().unwrap()
        );
        assert_eq!(pi_y(&"x0 x1 x0".parse().unwrap()), Err(Error::NotInXStarX1));
    }

    #[test]
    fn text_encodings() {
        let w: Word = "y2 y1".parse().unwrap();
        assert_eq!(w.to_string(), "y2 y1");
        assert_eq!(w.weight(), 3);
        assert!("x0 y1".parse::<Word>().is_err());
        assert!(matches!(
            "x0 x7".parse::<Word>(),
            Err(Error::Parse { pos: 3, .. })
        ));
        let c: Composition = "(-2, -1)".parse().unwrap();
        assert_eq!(c.to_string(), "(-2,-1)");
        assert!("(2,0)".parse::<Composition>().is_err());
        assert!("2,1".parse::<Composition>().is_err());
    }

    #[test]
    fn admissible_counts() {
        // 2^(k-2) admissible compositions of weight k
        for k in 2..9 {
            assert_eq!(Composition::admissible_of_weight(k).len(), 1 << (k - 2));
        }
    }
}
