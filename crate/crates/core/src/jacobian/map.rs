use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{ParseError, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map dimension must be at least 1")]
    Empty,
    #[error("component {component} lives in {found} variables, expected {expected}")]
    ComponentArity { component: usize, found: usize, expected: usize },
    #[error("map file declares n = {declared} but lists {found} components")]
    ComponentCount { declared: usize, found: usize },
    #[error("component {component}: {source}")]
    Parse { component: usize, source: ParseError },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Polynomial map `k^n -> k^n` given by its `n` component polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolynomialMap {
    components: Vec<Polynomial>,
}

impl PolynomialMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, MapError> {
        let n = components.len();
        if n == 0 {
            return Err(MapError::Empty);
        }
        for (i, c) in components.iter().enumerate() {
            if c.nvars() != n {
                return Err(MapError::ComponentArity { component: i + 1, found: c.nvars(), expected: n });
            }
        }
        Ok(PolynomialMap { components })
    }

    pub fn identity(n: usize) -> Self {
        PolynomialMap { components: (0..n).map(|i| Polynomial::var(n, i)).collect() }
    }

    pub fn zero(n: usize) -> Self {
        PolynomialMap { components: vec![Polynomial::zero(n); n] }
    }

    pub fn parse<S: AsRef<str>>(components: &[S], n: usize) -> Result<Self, MapError> {
        if components.len() != n {
            return Err(MapError::ComponentCount { declared: n, found: components.len() });
        }
        let parsed = components
            .iter()
            .enumerate()
            .map(|(i, s)| {
                Polynomial::parse(s.as_ref(), n).map_err(|source| MapError::Parse { component: i + 1, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parsed)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// Zero-based component access.
    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// `self ∘ inner`, i.e. `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &PolynomialMap) -> Result<PolynomialMap, MapError> {
        if inner.dim() != self.dim() {
            return Err(PolyError::DimensionMismatch { left: self.dim(), right: inner.dim() }.into());
        }
        let components = self
            .components
            .iter()
            .map(|c| c.eval_polys(&inner.components))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolynomialMap { components })
    }

    pub fn add(&self, other: &PolynomialMap) -> Result<PolynomialMap, MapError> {
        if self.dim() != other.dim() {
            return Err(PolyError::DimensionMismatch { left: self.dim(), right: other.dim() }.into());
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolynomialMap { components })
    }

    /// `X + self`
    pub fn plus_identity(&self) -> PolynomialMap {
        self.add(&Self::identity(self.dim())).expect("same dimension")
    }

    /// `self - X`
    pub fn minus_identity(&self) -> PolynomialMap {
        let n = self.dim();
        PolynomialMap {
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(i, c)| c - &Polynomial::var(n, i))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.components.iter().filter_map(|c| c.total_degree().finite()).max().unwrap_or(0)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.components.iter().map(ToString::to_string).collect()
    }

    pub fn to_map_file(&self) -> MapFile {
        MapFile { n: self.dim(), components: self.to_strings() }
    }

    pub fn from_map_file(file: &MapFile) -> Result<Self, MapError> {
        Self::parse(&file.components, file.n)
    }
}

impl fmt::Display for PolynomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// JSON map file: `{"n": 3, "components": ["y - x^2", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub n: usize,
    pub components: Vec<String>,
}
