//! Recursive-descent parser for the polynomial expression language.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ['^' nat]
//! atom     := rational | variable | '(' expr ')'
//! rational := nat ['/' nat]
//! variable := 'x' | 'y' | 'z' | 'x' nat
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::polynomial::Polynomial;
use super::rational::Rational;
use super::univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    UnknownVariable(String),
    VariableOutOfRange { name: String, nvars: usize },
    MalformedRational(String),
    ExponentTooLarge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Zero-based character offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(position: usize, kind: ParseErrorKind) -> Self {
        ParseError { position, kind }
    }

    pub(crate) fn malformed_rational(position: usize, text: &str) -> Self {
        ParseError::new(position, ParseErrorKind::MalformedRational(text.to_string()))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "found {found}, expected {expected}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "unexpected end of input, expected {expected}")
            }
            ParseErrorKind::UnknownVariable(name) => write!(f, "unknown variable {name:?}"),
            ParseErrorKind::VariableOutOfRange { name, nvars } => {
                write!(f, "variable {name} exceeds the {nvars} available variables")
            }
            ParseErrorKind::MalformedRational(text) => write!(f, "malformed rational {text:?}"),
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent too large"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Nat(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Nat(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                tokens.push((start, Tok::Nat(digits.parse().expect("ascii digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                tokens.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(ParseError::new(start, ParseErrorKind::UnexpectedChar(other))),
        };
        tokens.push((start, tok));
        i += 1;
    }
    Ok(tokens)
}

struct Parser<'a, R> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    nvars: usize,
    resolve: &'a R,
}

impl<'a, R> Parser<'a, R>
where
    R: Fn(&str) -> Result<usize, ParseErrorKind>,
{
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.tokens.get(self.pos) {
            Some((p, t)) => {
                ParseError::new(*p, ParseErrorKind::UnexpectedToken { found: t.describe(), expected })
            }
            None => ParseError::new(self.end, ParseErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.here();
        match self.tokens.get(self.pos) {
            Some((_, Tok::Nat(n))) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| ParseError::new(at, ParseErrorKind::ExponentTooLarge))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(self.unexpected("exponent")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.here();
        match self.tokens.get(self.pos).cloned() {
            Some((_, Tok::Nat(numer))) => {
                self.pos += 1;
                let mut denom = BigInt::one();
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.tokens.get(self.pos).cloned() {
                        Some((p, Tok::Nat(d))) => {
                            if d.is_zero() {
                                return Err(ParseError::new(
                                    p,
                                    ParseErrorKind::MalformedRational(format!("{numer}/0")),
                                ));
                            }
                            denom = d;
                            self.pos += 1;
                        }
                        _ => return Err(self.unexpected("denominator")),
                    }
                }
                Ok(Polynomial::constant(self.nvars, Rational::new(numer, denom)))
            }
            Some((_, Tok::Ident(name))) => {
                let index = (self.resolve)(&name).map_err(|kind| ParseError::new(at, kind))?;
                self.pos += 1;
                Ok(Polynomial::var(self.nvars, index))
            }
            Some((_, Tok::LParen)) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected("')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected("number, variable or '('")),
        }
    }
}

fn parse_with<R>(text: &str, nvars: usize, resolve: &R) -> Result<Polynomial, ParseError>
where
    R: Fn(&str) -> Result<usize, ParseErrorKind>,
{
    let tokens = tokenize(text)?;
    let end = text.chars().count();
    let mut parser = Parser { tokens, pos: 0, end, nvars, resolve };
    let poly = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.unexpected("operator or end of input"));
    }
    Ok(poly)
}

fn standard_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => {
            let digits = name.strip_prefix('x')?;
            let k: usize = digits.parse().ok()?;
            if k == 0 || digits.starts_with('0') {
                return None;
            }
            Some(k - 1)
        }
    }
}

/// Parses an expression in `x, y, z, x1, ..., xn` into a polynomial with `nvars` variables.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    let resolve = |name: &str| match standard_index(name) {
        Some(i) if i < nvars => Ok(i),
        Some(_) => Err(ParseErrorKind::VariableOutOfRange { name: name.to_string(), nvars }),
        None => Err(ParseErrorKind::UnknownVariable(name.to_string())),
    };
    parse_with(text, nvars, &resolve)
}

/// Parses a univariate expression whose only variable is `letter`.
pub fn parse_univariate(text: &str, letter: char) -> Result<UniPoly, ParseError> {
    let resolve = |name: &str| {
        let mut chars = name.chars();
        if chars.next() == Some(letter) && chars.next().is_none() {
            Ok(0)
        } else {
            Err(ParseErrorKind::UnknownVariable(name.to_string()))
        }
    };
    let poly = parse_with(text, 1, &resolve)?;
    Ok(UniPoly::from_polynomial(&poly, 0).expect("single variable"))
}
