//! Infix polynomial syntax.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' UINT)?
//! atom   := UINT ('/' UINT)? | IDENT | '(' expr ')'
//! IDENT  := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is ignored. `a/b` is only accepted between integer literals.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{MultiPoly, Rational, Roster};
use crate::error::{Error, Result};

const MAX_DEPTH: usize = 64;
const MAX_EXPONENT: u32 = 64;
const MAX_DEGREE: u32 = 4096;
const MAX_TERMS: usize = 100_000;
const MAX_LITERAL_DIGITS: usize = 4096;

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
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i - start > MAX_LITERAL_DIGITS {
                    return Err(Error::parse(start, "integer literal too long"));
                }
                out.push((start, Tok::Num(src[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(Error::parse(start, format!("unexpected character {ch:?}")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    roster: &'a Roster,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn check_size(&self, p: &MultiPoly) -> Result<()> {
        if p.num_terms() > MAX_TERMS {
            return Err(Error::parse(self.offset(), "too many terms"));
        }
        if p.total_degree().unwrap_or(0) > MAX_DEGREE {
            return Err(Error::parse(self.offset(), "degree too large"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::parse(self.offset(), "nesting too deep"));
        }
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
            self.check_size(&acc)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let rhs = self.unary()?;
            if acc.num_terms().saturating_mul(rhs.num_terms()) > MAX_TERMS * 10 {
                return Err(Error::parse(self.offset(), "product too large"));
            }
            if acc.total_degree().unwrap_or(0) + rhs.total_degree().unwrap_or(0) > MAX_DEGREE {
                return Err(Error::parse(self.offset(), "degree too large"));
            }
            acc = &acc * &rhs;
            self.check_size(&acc)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        let mut negate = false;
        let mut signs = 0;
        loop {
            match self.peek() {
                Some(Tok::Minus) => negate = !negate,
                Some(Tok::Plus) => {}
                _ => break,
            }
            self.bump();
            signs += 1;
            if signs > MAX_DEPTH {
                return Err(Error::parse(self.offset(), "too many signs"));
            }
        }
        let p = self.power()?;
        Ok(if negate { -&p } else { p })
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let at = self.offset();
            let k = match self.bump() {
                Some(Tok::Num(k)) => k,
                _ => return Err(Error::parse(at, "expected unsigned integer exponent")),
            };
            let k: u32 = match u32::try_from(&k) {
                Ok(k) if k <= MAX_EXPONENT => k,
                _ => return Err(Error::parse(at, format!("exponent exceeds {MAX_EXPONENT}"))),
            };
            if base.total_degree().unwrap_or(0).saturating_mul(k) > MAX_DEGREE {
                return Err(Error::parse(at, "degree too large"));
            }
            if base.num_terms() > 1 && k > 1 {
                // the multinomial count bounds the result size
                let bound = binomial_bound(base.num_terms(), k);
                if bound > MAX_TERMS as u128 {
                    return Err(Error::parse(at, "power too large"));
                }
            }
            let p = base.pow(i64::from(k))?;
            self.check_size(&p)?;
            return Ok(p);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let at_den = self.offset();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => Ok(MultiPoly::constant(self.roster, Rational::new(n, d))),
                        Some(Tok::Num(_)) => Err(Error::parse(at_den, "zero denominator")),
                        _ => Err(Error::parse(at_den, "expected integer denominator")),
                    }
                } else {
                    Ok(MultiPoly::constant(self.roster, Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => match self.roster.index_of(&name) {
                Some(i) => Ok(MultiPoly::var(self.roster, i)),
                None => Err(Error::UnboundVariable(name)),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::parse(close, "expected ')'")),
                }
            }
            Some(t) => Err(Error::parse(at, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

/// Number of monomials of degree `k` in `n` symbols, saturating.
fn binomial_bound(n: usize, k: u32) -> u128 {
    let (n, k) = (n as u128, k as u128);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n + i) / (i + 1);
        if acc > u64::MAX as u128 {
            return acc;
        }
    }
    acc
}

/// Parses `src` over a fixed roster. Unknown identifiers are an error.
pub fn parse_poly(src: &str, roster: &Roster) -> Result<MultiPoly> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), roster, depth: 0 };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::parse(p.offset(), "trailing input"));
    }
    Ok(out)
}

/// Parses `src`, taking the roster to be its identifiers in order of first
/// appearance.
pub fn parse_poly_infer(src: &str) -> Result<MultiPoly> {
    let mut names: Vec<String> = Vec::new();
    for (_, t) in lex(src)? {
        if let Tok::Ident(s) = t {
            if !names.contains(&s) {
                names.push(s);
            }
        }
    }
    let roster = Roster::new(names)?;
    parse_poly(src, &roster)
}
