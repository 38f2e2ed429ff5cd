//! Small recursive-descent parser for the text format.
//!
//! Variables are one ASCII letter with an optional subscript (`X_3`,
//! `X_{12}`), so `p^53t^30` reads as `p^53 * t^30`. Juxtaposition means
//! multiplication, `^` takes a signed integer (optionally braced), and
//! `/` is allowed whenever the divisor factors into monomials and
//! binomials `(1 - m)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::LaurentPoly;
use super::rational::RatFunc;
use super::var::Var;
use super::Coeff;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '\u{00b7}' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '{' => {
                out.push(Tok::LBrace);
                i += 1
            }
            '}' => {
                out.push(Tok::RBrace);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("digits")));
            }
            l if l.is_ascii_alphabetic() => {
                let mut name = l.to_string();
                i += 1;
                if i < chars.len() && chars[i] == '_' {
                    name.push('_');
                    i += 1;
                    if i < chars.len() && chars[i] == '{' {
                        let start = i;
                        while i < chars.len() && chars[i] != '}' {
                            i += 1;
                        }
                        if i == chars.len() {
                            return Err(Error::Parse("unclosed subscript".into()));
                        }
                        i += 1;
                        name.extend(&chars[start..i]);
                    } else {
                        let start = i;
                        while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                            i += 1;
                        }
                        if start == i {
                            return Err(Error::Parse(format!("empty subscript after {l}_")));
                        }
                        name.extend(&chars[start..i]);
                    }
                }
                out.push(Tok::Ident(name));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref u) if *u == t => Ok(()),
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    terms.push(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    terms.push(self.term()?.neg());
                }
                _ => break,
            }
        }
        Ok(RatFunc::sum(terms))
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let d = self.unary()?;
                    acc = acc.mul(&invert(&d)?);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i64> {
        let braced = matches!(self.peek(), Some(Tok::LBrace));
        if braced {
            self.next();
        }
        let neg = matches!(self.peek(), Some(Tok::Minus));
        if neg {
            self.next();
        }
        let n = match self.next() {
            Some(Tok::Num(n)) => i64::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?,
            other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
        };
        if braced {
            self.expect(Tok::RBrace)?;
        }
        Ok(if neg { -n } else { n })
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            let e = self.exponent()?;
            if e >= 0 {
                return Ok(base.pow(e as u32));
            }
            return Ok(invert(&base)?.pow((-e) as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(RatFunc::constant(Coeff::from_integer(n))),
            Some(Tok::Ident(name)) => Ok(RatFunc::var(Var::named(&name))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Splits a polynomial into `c * x^a * prod (1 - m)^k` if possible.
fn factor_binomials(p: &LaurentPoly) -> Option<(Coeff, Monomial, Vec<(Monomial, u32)>)> {
    let mut p = p.clone();
    let mut factors: Vec<(Monomial, u32)> = Vec::new();
    'outer: loop {
        if p.is_zero() {
            return None;
        }
        if p.len() == 1 {
            let (m, c) = p.terms()[0].clone();
            return Some((c, m, factors));
        }
        let low = p.terms()[0].0.clone();
        let candidates: Vec<Monomial> = p.terms()[1..].iter().map(|(m, _)| m.div(&low)).collect();
        for m in candidates {
            if let Some(q) = p.div_one_minus(&m) {
                p = q;
                factors.push((m, 1));
                continue 'outer;
            }
        }
        return None;
    }
}

fn invert(d: &RatFunc) -> Result<RatFunc> {
    let (c, x, fs) = factor_binomials(d.numerator())
        .ok_or_else(|| Error::Parse(format!("cannot divide by {}", d.numerator())))?;
    if c.is_zero() {
        return Err(Error::Parse("division by zero".into()));
    }
    let mut num = LaurentPoly::monomial(d.denominator_monomial().clone());
    for (m, k) in d.factors() {
        for _ in 0..k {
            num = num.mul_one_minus(m);
        }
    }
    let num = num.scale(&(Coeff::one() / c));
    Ok(RatFunc::with_monomial(num, x, fs))
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0 };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(r)
}

pub fn parse_poly(s: &str) -> Result<LaurentPoly> {
    parse_ratfunc(s)?
        .as_poly()
        .ok_or_else(|| Error::Parse(format!("{s} is not a Laurent polynomial")))
}

pub fn parse_monomial(s: &str) -> Result<Monomial> {
    parse_poly(s)?
        .as_monomial()
        .cloned()
        .ok_or_else(|| Error::Parse(format!("{s} is not a monomial")))
}
