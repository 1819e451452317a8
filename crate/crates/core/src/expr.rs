//! The expression grammar shared with the command line: identifiers are
//! basis names, `+ - * / ^` with integer powers, rational and imaginary
//! literals, parentheses, and the builtin functions `star(...)` and
//! `beta(...)`. Expressions evaluate to enveloping-algebra elements;
//! `beta` re-imports the Cartan projection as an element of the Cartan part,
//! so printed output re-parses to the same element.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::enveloping::EnvElement;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::structure::SuperAlgebra;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Imag,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, col, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut p = 0;
    while p < chars.len() {
        let c = chars[p];
        let col = p + 1;
        if c.is_whitespace() {
            p += 1;
            continue;
        }
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            _ if c.is_ascii_digit() => {
                let start = p;
                while p < chars.len() && chars[p].is_ascii_digit() {
                    p += 1;
                }
                let text: String = chars[start..p].iter().collect();
                toks.push((Token::Int(text.parse().unwrap()), col));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = p;
                while p < chars.len() && (chars[p].is_ascii_alphanumeric() || chars[p] == '_') {
                    p += 1;
                }
                let text: String = chars[start..p].iter().collect();
                if text == "i" {
                    toks.push((Token::Imag, col));
                } else {
                    toks.push((Token::Ident(text), col));
                }
                continue;
            }
            other => return Err(err(col, format!("unexpected character `{other}`"))),
        };
        toks.push((tok, col));
        p += 1;
    }
    Ok(toks)
}

struct Parser<'a> {
    alg: &'a Arc<SuperAlgebra>,
    toks: Vec<(Token, usize)>,
    pos: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        let col = self.col();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(err(col, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<EnvElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<EnvElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs)?;
                }
                Some(Token::Slash) => {
                    let col = self.col();
                    self.bump();
                    let rhs = self.factor()?;
                    let scalar = as_scalar(&rhs)
                        .and_then(|s| s.inv())
                        .ok_or_else(|| {
                            let _ = col;
                            Error::DivisionByNonScalar
                        })?;
                    acc = acc.scale(&scalar);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<EnvElement> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<EnvElement> {
        let mut base = self.atom()?;
        while matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let col = self.col();
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e = u32::try_from(n)
                        .map_err(|_| err(col, "exponent out of range"))?;
                    base = base.pow(e)?;
                }
                _ => return Err(err(col, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<EnvElement> {
        let col = self.col();
        match self.bump() {
            Some(Token::Int(n)) => Ok(EnvElement::scalar(
                self.alg,
                Scalar::from_rational(BigRational::from_integer(n)),
            )),
            Some(Token::Imag) => Ok(EnvElement::scalar(self.alg, Scalar::i())),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                if matches!(self.peek(), Some(Token::LParen)) {
                    self.bump();
                    let inner = self.expr()?;
                    self.expect(Token::RParen, "`)`")?;
                    match name.as_str() {
                        "star" => inner.star(),
                        "beta" => {
                            EnvElement::from_cartan_poly(self.alg, &inner.hc_project())
                        }
                        other => Err(err(col, format!("unknown function `{other}`"))),
                    }
                } else {
                    EnvElement::generator_named(self.alg, &name)
                }
            }
            _ => Err(err(col, "expected an expression")),
        }
    }
}

fn as_scalar(e: &EnvElement) -> Option<Scalar> {
    if e.is_zero() {
        return Some(Scalar::zero());
    }
    if e.num_terms() != 1 {
        return None;
    }
    let (mono, coeff) = e.terms().next().unwrap();
    if mono.degree() != 0 {
        return None;
    }
    coeff.as_constant()
}

/// Parse and evaluate an expression over the given algebra.
pub fn eval_expression(alg: &Arc<SuperAlgebra>, text: &str) -> Result<EnvElement> {
    let toks = tokenize(text)?;
    let end_col = text.chars().count() + 1;
    let mut parser = Parser { alg, toks, pos: 0, end_col };
    let value = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(err(parser.col(), "unexpected trailing input"));
    }
    Ok(value)
}
