//! Polynomial text syntax: sums of products of integers, variables, the
//! field parameter and parenthesised subexpressions, with `^` for
//! nonnegative integer powers and `/` for division by nonzero constants.
//! Whitespace is insignificant. The printed form of every polynomial parses
//! back to the same polynomial.

use std::fmt;

use num_bigint::BigInt;

use super::poly::{Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
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

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '@'
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Num(digits.parse().expect("digits")), col));
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError { column: col, message: format!("unexpected character '{other}'") })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column, message: message.into() })
    }

    fn alg<T>(&self, column: usize, r: super::Result<T>) -> Result<T, ParseError> {
        r.map_err(|e| ParseError { column, message: e.to_string() })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            let col = self.col();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg(col, acc.add(&t))?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg(col, acc.sub(&t))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let col = self.col();
                    let f = self.factor()?;
                    acc = self.alg(col, acc.mul(&f))?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let f = self.factor()?;
                    if !f.is_constant() {
                        return self.err(col, "division by a non-constant expression");
                    }
                    let inv = self.alg(col, f.constant_term().inverse())?;
                    acc = self.alg(col, acc.scale(&inv))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        match self.toks.get(self.pos) {
            Some((Tok::Num(n), _)) => {
                let exp: u32 = match n.try_into() {
                    Ok(e) => e,
                    Err(_) => return self.err(col, "exponent too large"),
                };
                self.pos += 1;
                Ok(base.pow(exp))
            }
            _ => self.err(col, "expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let col = self.col();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return self.err(col, "unexpected end of input");
        };
        self.pos += 1;
        let field = self.ring.field();
        match tok {
            Tok::Num(n) => self.alg(col, Polynomial::constant(self.ring, field.from_bigint(&n))),
            Tok::Ident(name) => {
                if let Some(i) = self.ring.index_of(&name) {
                    Ok(Polynomial::var(self.ring, i))
                } else if field.param() == Some(name.as_str()) {
                    let s = field.param_element().expect("parameter field");
                    self.alg(col, Polynomial::constant(self.ring, s))
                } else {
                    self.err(col, format!("unknown identifier '{name}'"))
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err(self.col(), "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            other => self.err(col, format!("unexpected token {other:?}")),
        }
    }
}

/// Parses `src` as a polynomial in `ring`.
pub fn parse_polynomial(src: &str, ring: &Ring) -> Result<Polynomial, ParseError> {
    let toks = tokenize(src)?;
    let end_col = src.chars().count() + 1;
    if toks.is_empty() {
        return Err(ParseError { column: 1, message: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end_col, ring };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err(p.col(), "unexpected trailing input");
    }
    Ok(poly)
}
