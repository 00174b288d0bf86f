use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::polyring::{format_rational, rat, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NiceError {
    #[error("degree must be at least 1")]
    Degree,
    #[error("coefficient of T^{power} is {value}, must be 0")]
    SubleadingNonzero { power: usize, value: String },
}

/// Univariate `P(T)` of degree `d >= 1` whose `T^{d-1}` coefficient vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicePoly {
    poly: UniPoly,
}

impl NicePoly {
    pub fn new(poly: UniPoly) -> Result<Self, NiceError> {
        let d = match poly.degree().finite() {
            Some(d) if d >= 1 => d as usize,
            _ => return Err(NiceError::Degree),
        };
        let sub = poly.coeff(d - 1);
        if !sub.is_zero() {
            return Err(NiceError::SubleadingNonzero { power: d - 1, value: format_rational(&sub) });
        }
        Ok(NicePoly { poly })
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self, NiceError> {
        Self::new(UniPoly::from_coeffs(coeffs))
    }

    /// `leading · T`
    pub fn linear(leading: Rational) -> Result<Self, NiceError> {
        Self::from_coeffs(vec![Rational::zero(), leading])
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree().finite().expect("nonzero")
    }

    /// The coefficient of `T^d`.
    pub fn leading(&self) -> Rational {
        self.poly.leading_coeff().cloned().expect("nonzero")
    }

    /// `d · leading`
    pub fn scaled_leading(&self) -> Rational {
        self.leading() * rat(self.degree() as i64)
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }
}

impl fmt::Display for NicePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}
