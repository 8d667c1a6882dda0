use std::str::FromStr;

use crate::coeff::{parse_rational, Q};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter};

use super::RatExpr;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Plus,
    Dot,
    Shuffle,
    Stuffle,
    Star,
    Num(Q),
    Letter(Letter),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '+' => Some(Tok::Plus),
            '.' => Some(Tok::Dot),
            '*' => Some(Tok::Star),
            '⧢' => Some(Tok::Shuffle),
            '⧺' => Some(Tok::Stuffle),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((pos, t));
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        if c == '-' || c.is_ascii_digit() {
            while j < chars.len() && (chars[j].1.is_ascii_digit() || chars[j].1 == '/') {
                j += 1;
            }
            let end = chars.get(j).map_or(s.len(), |&(p, _)| p);
            let q = parse_rational(&s[pos..end])
                .ok_or_else(|| Error::parse(pos, format!("bad number `{}`", &s[pos..end])))?;
            out.push((pos, Tok::Num(q)));
        } else if c.is_ascii_alphabetic() {
            while j < chars.len() && chars[j].1.is_ascii_alphanumeric() {
                j += 1;
            }
            let end = chars.get(j).map_or(s.len(), |&(p, _)| p);
            let t = match &s[pos..end] {
                "sh" => Tok::Shuffle,
                "st" => Tok::Stuffle,
                w => Tok::Letter(
                    w.parse()
                        .map_err(|_| Error::parse(pos, format!("bad letter `{w}`")))?,
                ),
            };
            out.push((pos, t));
        } else {
            return Err(Error::parse(pos, format!("unexpected `{c}`")));
        }
        i = j;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.at + k).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek(0) == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<RatExpr<Q>> {
        let mut e = self.product()?;
        while self.eat(&Tok::Plus) {
            e = RatExpr::Add(Box::new(e), Box::new(self.product()?));
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<RatExpr<Q>> {
        let mut e = self.conc()?;
        loop {
            if self.eat(&Tok::Shuffle) {
                e = RatExpr::Shuffle(Box::new(e), Box::new(self.conc()?));
            } else if self.eat(&Tok::Stuffle) {
                e = RatExpr::Stuffle(Box::new(e), Box::new(self.conc()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn conc(&mut self) -> Result<RatExpr<Q>> {
        let mut e = self.postfix()?;
        while self.eat(&Tok::Dot) {
            e = RatExpr::Conc(Box::new(e), Box::new(self.postfix()?));
        }
        Ok(e)
    }

    fn postfix(&mut self) -> Result<RatExpr<Q>> {
        let mut e = self.primary()?;
        while self.eat(&Tok::Star) {
            e = RatExpr::Star(Box::new(e));
        }
        Ok(e)
    }

    fn letter(&mut self) -> Result<Letter> {
        match self.peek(0) {
            Some(Tok::Letter(l)) => {
                let l = *l;
                self.at += 1;
                Ok(l)
            }
            _ => Err(Error::parse(self.pos(), "expected a letter")),
        }
    }

    fn primary(&mut self) -> Result<RatExpr<Q>> {
        let pos = self.pos();
        match self.peek(0).cloned() {
            // `(c)*l` is a weighted letter, not the star of `(c)`
            Some(Tok::LParen) => match (
                self.peek(1).cloned(),
                self.peek(2),
                self.peek(3),
                self.peek(4),
            ) {
                (Some(Tok::Num(c)), Some(Tok::RParen), Some(Tok::Star), Some(Tok::Letter(_))) => {
                    self.at += 4;
                    Ok(RatExpr::Atom(c, self.letter()?))
                }
                _ => {
                    self.at += 1;
                    let e = self.sum()?;
                    if !self.eat(&Tok::RParen) {
                        return Err(Error::parse(self.pos(), "expected `)`"));
                    }
                    Ok(e)
                }
            },
            Some(Tok::Num(c)) => {
                self.at += 1;
                self.eat(&Tok::Star);
                Ok(RatExpr::Atom(c, self.letter()?))
            }
            Some(Tok::Letter(l)) => {
                self.at += 1;
                Ok(RatExpr::Atom(Q::from_integer(1.into()), l))
            }
            _ => Err(Error::parse(pos, "expected a letter, a coefficient or `(`")),
        }
    }
}

fn letters_of(e: &RatExpr<Q>, out: &mut Vec<Letter>) {
    match e {
        RatExpr::Atom(_, l) => out.push(*l),
        RatExpr::Add(a, b)
        | RatExpr::Conc(a, b)
        | RatExpr::Shuffle(a, b)
        | RatExpr::Stuffle(a, b) => {
            letters_of(a, out);
            letters_of(b, out);
        }
        RatExpr::Star(a) => letters_of(a, out),
    }
}

/// Parses the notation printed by `Display`: `+`, `.` (concatenation),
/// `⧢` or `sh`, `⧺` or `st`, postfix `*`, parentheses, and weighted letters
/// `(c)*l`, `c*l` or `c l`. Precedence from loose to tight: `+`, the two
/// commutative products, concatenation, star.
impl FromStr for RatExpr<Q> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            toks: tokenize(s)?,
            at: 0,
            end: s.len(),
        };
        let e = p.sum()?;
        if p.at != p.toks.len() {
            return Err(Error::parse(p.pos(), "trailing input"));
        }
        let mut letters = Vec::new();
        letters_of(&e, &mut letters);
        let alphabet = letters[0].alphabet();
        if letters.iter().any(|l| l.alphabet() != alphabet) {
            return Err(Error::AlphabetMismatch(
                "expression mixes X and Y letters".into(),
            ));
        }
        if alphabet == Alphabet::X && has_stuffle(&e) {
            return Err(Error::StuffleOnX);
        }
        Ok(e)
    }
}

fn has_stuffle(e: &RatExpr<Q>) -> bool {
    match e {
        RatExpr::Atom(..) => false,
        RatExpr::Stuffle(..) => true,
        RatExpr::Add(a, b) | RatExpr::Conc(a, b) | RatExpr::Shuffle(a, b) => {
            has_stuffle(a) || has_stuffle(b)
        }
        RatExpr::Star(a) => has_stuffle(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;
    use crate::ratseries::enumerate_exprs;

    #[test]
    fn display_round_trips() {
        let letters = [Letter::y(1), Letter::y(2)];
        for e in enumerate_exprs::<Q>(&letters, 5, 2) {
            let back: RatExpr<Q> = e.to_string().parse().unwrap();
            assert_eq!(back, e, "{e}");
        }
        let w = RatExpr::Star(Box::new(RatExpr::Atom(q(-3, 2), Letter::x(1))));
        assert_eq!(w.to_string().parse::<RatExpr<Q>>().unwrap(), w);
    }

    #[test]
    fn precedence_and_sugar() {
        let e: RatExpr<Q> = "2 x0 . x1* sh x1".parse().unwrap();
        assert_eq!(e.to_string(), "(((2)*x0 . x1*) ⧢ x1)");
        let e: RatExpr<Q> = "(y1 + 1/2*y2)*".parse().unwrap();
        assert_eq!(e.to_string(), "(y1 + (1/2)*y2)*");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            "x0 + ".parse::<RatExpr<Q>>().unwrap_err(),
            Error::parse(5, "expected a letter, a coefficient or `(`")
        );
        assert!(matches!(
            "(x0 + x1".parse::<RatExpr<Q>>(),
            Err(Error::Parse { pos: 8, .. })
        ));
        assert!(matches!(
            "x0 ? x1".parse::<RatExpr<Q>>(),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert_eq!(
            "x0 ⧺ x1".parse::<RatExpr<Q>>().unwrap_err(),
            Error::StuffleOnX
        );
        assert!("x0 + y1".parse::<RatExpr<Q>>().is_err());
    }
}
