//! Canonical text form and the polynomial expression parser.
//!
//! Printed form: terms in canonical order, `*` between factors, `^` for
//! powers, fractional coefficients as `n/d`, e.g. `1 - 1/2*x + 4*x^2*y`.
//! The parser accepts that form plus parentheses, unary minus and
//! multi-character identifiers.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::monomial::Var;
use super::polynomial::Polynomial;
use crate::rational::Rational;
use crate::scalar::Scalar;

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based column within the parsed text.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn tokenize(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Spanned { tok: Tok::Num(chars[start..i].iter().collect()), col });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), col });
        } else if "+-*/^()".contains(c) {
            out.push(Spanned { tok: Tok::Op(c), col });
            i += 1;
        } else {
            return Err(ParseError { column: col, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

type RPoly = Polynomial<Rational>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    /// Errors at end of input point at the last token consumed.
    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let column = match self.toks.get(self.pos) {
            Some(s) => s.col,
            None => self.toks.last().map(|s| s.col).unwrap_or(1),
        };
        ParseError { column, message: message.into() }
    }

    fn expr(&mut self) -> Result<RPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.bump();
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            let op_col = self.toks[self.pos].col;
            self.bump();
            let rhs = self.unary()?;
            if c == '*' {
                acc = &acc * &rhs;
            } else {
                match rhs.as_constant() {
                    Some(d) if !d.is_zero() => acc = acc.scale(&(Rational::one() / d)),
                    Some(_) => return Err(ParseError { column: op_col, message: "division by zero".into() }),
                    None => {
                        return Err(ParseError {
                            column: op_col,
                            message: "division is only allowed by a nonzero constant".into(),
                        })
                    }
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RPoly, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RPoly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Spanned { tok: Tok::Num(n), col }) => {
                    let e: u32 = n
                        .parse()
                        .map_err(|_| ParseError { column: col, message: format!("exponent `{n}` too large") })?;
                    Ok(base.pow(e))
                }
                Some(_) => {
                    self.pos -= 1;
                    Err(self.error_here("exponent must be a nonnegative integer literal"))
                }
                None => {
                    self.pos -= 1;
                    Err(self.error_here("expected exponent after `^`"))
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RPoly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.bump();
                let r: Rational = n.parse().expect("digits form an integer");
                Ok(Polynomial::constant(r))
            }
            Some(Tok::Ident(name)) => {
                self.bump();
                Ok(Polynomial::var(Var::new(&name)))
            }
            Some(Tok::Op('(')) => {
                self.bump();
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.bump();
                        Ok(inner)
                    }
                    Some(_) => Err(self.error_here("expected `)`")),
                    None => Err(self.error_here("unclosed `(`")),
                }
            }
            Some(Tok::Op(c)) => Err(self.error_here(format!("unexpected `{c}`"))),
            None => Err(self.error_here("unexpected end of input")),
        }
    }
}

/// Parses a polynomial expression with exact rational coefficients.
pub fn parse_poly(src: &str) -> Result<Polynomial<Rational>, ParseError> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(ParseError { column: 1, message: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.error_here("unexpected trailing input"));
    }
    Ok(out)
}

impl<C: Scalar> FromStr for Polynomial<C> {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)?.convert().ok_or_else(|| ParseError {
            column: 1,
            message: "coefficient not representable in this scalar type".into(),
        })
    }
}
