use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::parse::{parse_univariate, ParseError};
use super::polynomial::{Degree, PolyError, Polynomial};
use super::rational::Rational;

/// Dense univariate polynomial, coefficients ascending, no trailing zeros.
///
/// Used for the one-variable data of the classified families: `p(T)`,
/// `a(x)`, the shifts `b_i(x)` and the nice polynomials `P_i(T)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * T^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn identity() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn parse(text: &str, letter: char) -> Result<Self, ParseError> {
        parse_univariate(text, letter)
    }

    /// Reads a polynomial that involves at most the variable `var`.
    pub fn from_polynomial(poly: &Polynomial, var: usize) -> Option<Self> {
        let mut coeffs = Vec::new();
        for (m, c) in poly.terms() {
            if m.exponents().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            let k = m.exponent(var) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(Self::from_coeffs(coeffs))
    }

    /// Embeds as a polynomial in the zero-based variable `var` of `nvars`.
    pub fn to_polynomial(&self, nvars: usize, var: usize) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
                (Monomial::one(nvars).with_exponent(var, k as u32), c.clone())
            }),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            len => Degree::Finite((len - 1) as u32),
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn derivative(&self) -> UniPoly {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> UniPoly {
        (0..order).fold(self.clone(), |acc, _| acc.derivative())
    }

    pub fn scale(&self, factor: &Rational) -> UniPoly {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// `self(arg)` by Horner's rule.
    pub fn compose_poly(&self, arg: &Polynomial) -> Polynomial {
        let n = arg.nvars();
        self.coeffs.iter().rev().fold(Polynomial::zero(n), |acc, c| {
            &(&acc * arg) + &Polynomial::constant(n, c.clone())
        })
    }

    /// `self(inner(T))`
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, c| acc.mul(inner).add(&UniPoly::constant(c.clone())))
    }

    pub fn to_string_in(&self, letter: char) -> String {
        self.to_polynomial(1, 0).to_string_with(|_| letter.to_string())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in('T'))
    }
}

impl TryFrom<&Polynomial> for UniPoly {
    type Error = PolyError;

    fn try_from(poly: &Polynomial) -> Result<Self, PolyError> {
        if let Some(extra) = poly.support().into_iter().find(|&i| i != 0) {
            return Err(PolyError::VariableStillPresent { index: extra + 1 });
        }
        Ok(Self::from_polynomial(poly, 0).expect("checked support"))
    }
}
