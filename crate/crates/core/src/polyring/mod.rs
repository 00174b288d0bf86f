//! Exact sparse multivariate polynomial arithmetic over the rationals, the
//! expression parser/printer and the lexicographic leading-term order on `k[x, y]`.

mod lex;
mod monomial;
mod parse;
mod polynomial;
mod rational;
mod univariate;

pub use lex::{leading_term_lex, LexTerm};
pub use monomial::Monomial;
pub use parse::{parse_polynomial, parse_univariate, ParseError, ParseErrorKind};
pub use polynomial::{standard_var_name, Degree, PolyError, Polynomial};
pub use rational::{format_rational, parse_rational, rat, rat_frac, Rational};
pub use univariate::UniPoly;
