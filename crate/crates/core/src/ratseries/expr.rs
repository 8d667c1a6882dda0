use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::ncalg::{NcPoly, TruncSeries};
use crate::words::{Alphabet, Letter, Word};

use super::LinRep;

/// Syntax tree of a rational expression.
#[derive(Clone, PartialEq)]
pub enum RatExpr<C> {
    Atom(C, Letter),
    Add(Box<RatExpr<C>>, Box<RatExpr<C>>),
    Conc(Box<RatExpr<C>>, Box<RatExpr<C>>),
    Shuffle(Box<RatExpr<C>>, Box<RatExpr<C>>),
    Stuffle(Box<RatExpr<C>>, Box<RatExpr<C>>),
    Star(Box<RatExpr<C>>),
}

impl<C: Coeff> RatExpr<C> {
    pub fn alphabet(&self) -> Alphabet {
        match self {
            RatExpr::Atom(_, l) => l.alphabet(),
            RatExpr::Add(a, _)
            | RatExpr::Conc(a, _)
            | RatExpr::Shuffle(a, _)
            | RatExpr::Stuffle(a, _)
            | RatExpr::Star(a) => a.alphabet(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            RatExpr::Atom(..) => 1,
            RatExpr::Add(a, b)
            | RatExpr::Conc(a, b)
            | RatExpr::Shuffle(a, b)
            | RatExpr::Stuffle(a, b) => 1 + a.size() + b.size(),
            RatExpr::Star(a) => 1 + a.size(),
        }
    }

    pub fn star_height(&self) -> usize {
        match self {
            RatExpr::Atom(..) => 0,
            RatExpr::Add(a, b)
            | RatExpr::Conc(a, b)
            | RatExpr::Shuffle(a, b)
            | RatExpr::Stuffle(a, b) => a.star_height().max(b.star_height()),
            RatExpr::Star(a) => 1 + a.star_height(),
        }
    }

    pub fn constant_term(&self) -> C {
        match self {
            RatExpr::Atom(..) => C::zero(),
            RatExpr::Add(a, b) => a.constant_term() + b.constant_term(),
            RatExpr::Conc(a, b) | RatExpr::Shuffle(a, b) | RatExpr::Stuffle(a, b) => {
                a.constant_term() * b.constant_term()
            }
            RatExpr::Star(_) => C::one(),
        }
    }

    pub fn to_rep(&self) -> Result<LinRep<C>> {
        match self {
            RatExpr::Atom(c, l) => Ok(LinRep::letter(*l, c.clone())),
            RatExpr::Add(a, b) => a.to_rep()?.add(&b.to_rep()?),
            RatExpr::Conc(a, b) => a.to_rep()?.conc(&b.to_rep()?),
            RatExpr::Shuffle(a, b) => a.to_rep()?.shuffle(&b.to_rep()?),
            RatExpr::Stuffle(a, b) => a.to_rep()?.stuffle(&b.to_rep()?),
            RatExpr::Star(a) => a.to_rep()?.star(),
        }
    }

    /// Evaluation as a truncated series with the algebra of `ncalg`.
    pub fn to_trunc(&self, max_weight: usize) -> Result<TruncSeries<C>> {
        match self {
            RatExpr::Atom(c, l) => Ok(TruncSeries::new(
                NcPoly::term(Word::letter(*l), c.clone()),
                max_weight,
            )),
            RatExpr::Add(a, b) => a.to_trunc(max_weight)?.add(&b.to_trunc(max_weight)?),
            RatExpr::Conc(a, b) => a.to_trunc(max_weight)?.conc(&b.to_trunc(max_weight)?),
            RatExpr::Shuffle(a, b) => a.to_trunc(max_weight)?.shuffle(&b.to_trunc(max_weight)?),
            RatExpr::Stuffle(a, b) => a.to_trunc(max_weight)?.stuffle(&b.to_trunc(max_weight)?),
            RatExpr::Star(a) => {
                let s = a.to_trunc(max_weight)?;
                if !s.poly().constant_term().is_zero() {
                    return Err(Error::ImproperStar);
                }
                s.star()
            }
        }
    }
}

impl<C: Coeff> fmt::Display for RatExpr<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatExpr::Atom(c, l) if c.is_one() => write!(f, "{l}"),
            RatExpr::Atom(c, l) => write!(f, "({c})*{l}"),
            RatExpr::Add(a, b) => write!(f, "({a} + {b})"),
            RatExpr::Conc(a, b) => write!(f, "({a} . {b})"),
            RatExpr::Shuffle(a, b) => write!(f, "({a} ⧢ {b})"),
            RatExpr::Stuffle(a, b) => write!(f, "({a} ⧺ {b})"),
            RatExpr::Star(a) => write!(f, "{a}*"),
        }
    }
}

impl<C: Coeff> fmt::Debug for RatExpr<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All expressions with at most `max_size` nodes built from unit atoms on
/// `letters`, binary operations `+`, concatenation, shuffle (and stuffle over
/// Y), and star of proper subexpressions, with star height at most
/// `max_star_height`.
pub fn enumerate_exprs<C: Coeff>(
    letters: &[Letter],
    max_size: usize,
    max_star_height: usize,
) -> Vec<RatExpr<C>> {
    let with_stuffle = letters.first().is_some_and(|l| l.alphabet() == Alphabet::Y);
    let mut by_size: Vec<Vec<RatExpr<C>>> = vec![Vec::new(); max_size + 1];
    for n in 1..=max_size {
        let mut out = Vec::new();
        if n == 1 {
            out.extend(letters.iter().map(|l| RatExpr::Atom(C::one(), *l)));
        }
        if n >= 2 {
            for e in &by_size[n - 1] {
                if e.constant_term().is_zero() && e.star_height() < max_star_height {
                    out.push(RatExpr::Star(Box::new(e.clone())));
                }
            }
        }
        for k in 1..n.saturating_sub(1) {
            let (left, right) = (&by_size[k], &by_size[n - 1 - k]);
            for a in left {
                for b in right {
                    let (a, b) = (Box::new(a.clone()), Box::new(b.clone()));
                    out.push(RatExpr::Add(a.clone(), b.clone()));
                    out.push(RatExpr::Conc(a.clone(), b.clone()));
                    out.push(RatExpr::Shuffle(a.clone(), b.clone()));
                    if with_stuffle {
                        out.push(RatExpr::Stuffle(a, b));
                    }
                }
            }
        }
        by_size[n] = out;
    }
    by_size.into_iter().flatten().collect()
}
