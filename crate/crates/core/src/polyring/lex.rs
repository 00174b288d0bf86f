use std::cmp::Ordering;

use super::polynomial::{PolyError, Polynomial};
use super::rational::Rational;

/// A term `x^i y^j` of `k[x, y]`, ordered by y-degree first, then x-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LexTerm {
    pub x_degree: u32,
    pub y_degree: u32,
}

impl LexTerm {
    pub fn new(x_degree: u32, y_degree: u32) -> Self {
        LexTerm { x_degree, y_degree }
    }
}

impl Ord for LexTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.y_degree.cmp(&other.y_degree).then(self.x_degree.cmp(&other.x_degree))
    }
}

impl PartialOrd for LexTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Leading term and coefficient of a nonzero polynomial in `x, y` only.
pub fn leading_term_lex(p: &Polynomial) -> Result<(LexTerm, Rational), PolyError> {
    let mut best: Option<(LexTerm, &Rational)> = None;
    for (m, c) in p.terms() {
        if let Some(i) = (2..m.nvars()).find(|&i| m.exponent(i) > 0) {
            return Err(PolyError::NotBivariate { index: i + 1 });
        }
        let y = if m.nvars() > 1 { m.exponent(1) } else { 0 };
        let t = LexTerm::new(m.exponent(0), y);
        if best.as_ref().is_none_or(|(b, _)| t > *b) {
            best = Some((t, c));
        }
    }
    best.map(|(t, c)| (t, c.clone())).ok_or(PolyError::ZeroPolynomial)
}
