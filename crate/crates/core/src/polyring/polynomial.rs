use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use thiserror::Error;

use super::monomial::Monomial;
use super::parse::{self, ParseError};
use super::rational::{format_rational, is_unit_magnitude, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("leading term of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("polynomial involves variable x{index}, expected only x and y")]
    NotBivariate { index: usize },
    #[error("polynomial still involves x{index}, cannot drop it")]
    VariableStillPresent { index: usize },
}

/// Total or partial degree. The zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse polynomial in `x1, ..., xn` with rational coefficients.
///
/// Terms are kept sorted ascending in the [`Monomial`] order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, value: Rational) -> Self {
        Self::from_sorted_unchecked(nvars, vec![(Monomial::one(nvars), value)])
    }

    /// The variable `x_{index+1}` (indices are zero-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range for {nvars} variables");
        Polynomial { nvars, terms: vec![(Monomial::var(nvars, index), Rational::one())] }
    }

    pub fn term(monomial: Monomial, coeff: Rational) -> Self {
        let nvars = monomial.nvars();
        Self::from_sorted_unchecked(nvars, vec![(monomial, coeff)])
    }

    fn from_sorted_unchecked(nvars: usize, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_sorted_unchecked(nvars, acc.into_iter().collect())
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Self, ParseError> {
        parse::parse_polynomial(text, nvars)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(m, _)| m.cmp(monomial)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .iter()
            .map(|(m, _)| Degree::Finite(m.total_degree()))
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms
            .iter()
            .map(|(m, _)| Degree::Finite(m.exponent(var)))
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    /// Zero-based indices of the variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.involves(i)).collect()
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    fn check_var(&self, var: usize) -> Result<(), PolyError> {
        if var >= self.nvars {
            return Err(PolyError::VariableOutOfRange { index: var + 1, nvars: self.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.mul_impl(other, None))
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Less => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((mb.clone(), if negate_other { -cb } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate_other { -c } else { c.clone() })),
        );
        Polynomial { nvars: self.nvars, terms: out }
    }

    fn mul_impl(&self, other: &Polynomial, max_degree: Option<u32>) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if other.terms.len() == 1 && other.terms[0].0.is_one() && max_degree.is_none() {
            return self.scale(&other.terms[0].1);
        }
        let (da, na) = cleared(&self.terms);
        let (db, nb) = cleared(&other.terms);
        let denom = da * db;
        let keep = |i: usize, j: usize| match max_degree {
            Some(limit) => self.terms[i].0.total_degree() + other.terms[j].0.total_degree() <= limit,
            None => true,
        };
        let small = |v: &[BigInt]| v.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>();
        let terms: Vec<(Monomial, Rational)> = match (small(&na), small(&nb)) {
            (Some(sa), Some(sb)) if fits_i128(&sa, &sb) => {
                let mut acc: FxHashMap<Monomial, i128> = FxHashMap::default();
                acc.reserve(self.terms.len() * other.terms.len());
                for (i, (ma, _)) in self.terms.iter().enumerate() {
                    for (j, (mb, _)) in other.terms.iter().enumerate() {
                        if keep(i, j) {
                            *acc.entry(ma.mul(mb)).or_insert(0) += sa[i] as i128 * sb[j] as i128;
                        }
                    }
                }
                acc.into_iter()
                    .filter(|(_, c)| *c != 0)
                    .map(|(m, c)| (m, Rational::new(BigInt::from(c), denom.clone())))
                    .collect()
            }
            _ => {
                let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
                for (i, (ma, _)) in self.terms.iter().enumerate() {
                    for (j, (mb, _)) in other.terms.iter().enumerate() {
                        if keep(i, j) {
                            *acc.entry(ma.mul(mb)).or_default() += &na[i] * &nb[j];
                        }
                    }
                }
                acc.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (m, Rational::new(c, denom.clone())))
                    .collect()
            }
        };
        let mut terms = terms;
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial { nvars: self.nvars, terms }
    }

    /// Product with every term of total degree above `max_degree` discarded.
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: u32) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "ambient dimension mismatch");
        self.mul_impl(other, Some(max_degree))
    }

    pub fn truncate_degree(&self, max_degree: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= max_degree)
                .cloned()
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.total_degree() == degree).cloned().collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        if exponent == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut e = exponent;
        loop {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        result
    }

    /// Formal partial derivative with respect to the zero-based variable `var`.
    pub fn derive(&self, var: usize) -> Result<Polynomial, PolyError> {
        self.check_var(var)?;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .map(|(m, c)| {
                let e = m.exponent(var);
                (m.with_exponent(var, e - 1), c * Rational::from_integer(e.into()))
            })
            .collect::<Vec<_>>();
        Ok(Polynomial::from_sorted_unchecked(self.nvars, terms))
    }

    /// Coefficient of `x_var^k`, as a polynomial free of `x_var`.
    pub fn coeff_in_var(&self, var: usize, k: u32) -> Result<Polynomial, PolyError> {
        self.check_var(var)?;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) == k)
            .map(|(m, c)| (m.with_exponent(var, 0), c.clone()))
            .collect::<Vec<_>>();
        Ok(Polynomial::from_sorted_unchecked(self.nvars, terms))
    }

    /// Replaces each variable `x_i` by `values[i]`; all values must share one
    /// ambient dimension, which becomes the ambient dimension of the result.
    pub fn eval_polys(&self, values: &[Polynomial]) -> Result<Polynomial, PolyError> {
        self.eval_polys_impl(values, None)
    }

    /// As [`eval_polys`](Self::eval_polys) but discards terms above `max_degree`.
    pub fn eval_polys_truncated(
        &self,
        values: &[Polynomial],
        max_degree: u32,
    ) -> Result<Polynomial, PolyError> {
        self.eval_polys_impl(values, Some(max_degree))
    }

    fn eval_polys_impl(
        &self,
        values: &[Polynomial],
        max_degree: Option<u32>,
    ) -> Result<Polynomial, PolyError> {
        if values.len() != self.nvars {
            return Err(PolyError::DimensionMismatch { left: self.nvars, right: values.len() });
        }
        let target = match values.first() {
            Some(v) => v.nvars,
            None => return Ok(self.clone()),
        };
        for v in values {
            if v.nvars != target {
                return Err(PolyError::DimensionMismatch { left: target, right: v.nvars });
            }
        }
        let mut powers: Vec<Vec<Polynomial>> =
            (0..self.nvars).map(|_| vec![Polynomial::one(target)]).collect();
        let terms: Vec<&(Monomial, Rational)> = self.terms.iter().collect();
        Ok(horner(&terms, self.nvars, target, values, &mut powers, max_degree))
    }

    /// Substitutes the given polynomials for the listed (zero-based) variables;
    /// unassigned variables map to themselves.
    pub fn substitute(&self, assignments: &[(usize, Polynomial)]) -> Result<Polynomial, PolyError> {
        if assignments.is_empty() {
            return Ok(self.clone());
        }
        let mut values: Vec<Polynomial> = (0..self.nvars).map(|i| Polynomial::var(self.nvars, i)).collect();
        for (var, value) in assignments {
            self.check_var(*var)?;
            self.check_same(value)?;
            values[*var] = value.clone();
        }
        self.eval_polys(&values)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong arity");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    value *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += value;
        }
        total
    }

    /// Re-embeds into `nvars >= self.nvars()` variables.
    pub fn extend_vars(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars, "extend_vars cannot shrink");
        Polynomial {
            nvars,
            terms: self.terms.iter().map(|(m, c)| (m.resized(nvars), c.clone())).collect(),
        }
    }

    /// Drops trailing variables, which must not occur.
    pub fn restrict_vars(&self, nvars: usize) -> Result<Polynomial, PolyError> {
        for i in nvars..self.nvars {
            if self.involves(i) {
                return Err(PolyError::VariableStillPresent { index: i + 1 });
            }
        }
        Ok(Polynomial::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| (m.resized(nvars), c.clone())),
        ))
    }

    /// Renders with custom variable names, terms in descending order.
    pub fn to_string_with<F: Fn(usize) -> String>(&self, name: F) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if m.is_one() || !is_unit_magnitude(c) {
                factors.push(format_rational(&magnitude));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(name(i)),
                    _ => factors.push(format!("{}^{}", name(i), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Printer name of the zero-based variable `index`: `x`, `y`, then `x3`, `x4`, ...
pub fn standard_var_name(index: usize) -> String {
    match index {
        0 => "x".to_string(),
        1 => "y".to_string(),
        k => format!("x{}", k + 1),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(standard_var_name))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}


fn mul_limited(a: &Polynomial, b: &Polynomial, max_degree: Option<u32>) -> Polynomial {
    match max_degree {
        Some(limit) => a.mul_truncated(b, limit),
        None => a * b,
    }
}

/// Nested Horner evaluation in the variables `0..depth`, outermost last.
fn horner(
    terms: &[&(Monomial, Rational)],
    depth: usize,
    target: usize,
    values: &[Polynomial],
    powers: &mut [Vec<Polynomial>],
    max_degree: Option<u32>,
) -> Polynomial {
    if depth == 0 {
        let mut c = Rational::zero();
        for (_, coeff) in terms {
            c += coeff;
        }
        return Polynomial::constant(target, c);
    }
    let var = depth - 1;
    let mut groups: BTreeMap<u32, Vec<&(Monomial, Rational)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0.exponent(var)).or_default().push(t);
    }
    let mut acc: Option<Polynomial> = None;
    let mut previous = 0;
    for (&e, group) in groups.iter().rev() {
        let inner = horner(group, var, target, values, powers, max_degree);
        acc = Some(match acc {
            None => inner,
            Some(a) => {
                let step = power_of(powers, values, var, previous - e, max_degree);
                &mul_limited(&a, &step, max_degree) + &inner
            }
        });
        previous = e;
    }
    let Some(acc) = acc else {
        return Polynomial::zero(target);
    };
    if previous == 0 {
        acc
    } else {
        let step = power_of(powers, values, var, previous, max_degree);
        mul_limited(&acc, &step, max_degree)
    }
}

fn power_of(
    powers: &mut [Vec<Polynomial>],
    values: &[Polynomial],
    var: usize,
    e: u32,
    max_degree: Option<u32>,
) -> Polynomial {
    let cache = &mut powers[var];
    while cache.len() <= e as usize {
        let next = mul_limited(cache.last().expect("nonempty"), &values[var], max_degree);
        cache.push(next);
    }
    cache[e as usize].clone()
}

/// Common denominator and the integer numerators over it.
fn cleared(terms: &[(Monomial, Rational)]) -> (BigInt, Vec<BigInt>) {
    let denom = terms.iter().fold(BigInt::one(), |d, (_, c)| d.lcm(c.denom()));
    let numers = terms.iter().map(|(_, c)| c.numer() * (&denom / c.denom())).collect();
    (denom, numers)
}

fn fits_i128(a: &[i64], b: &[i64]) -> bool {
    let bits = |v: &[i64]| v.iter().map(|x| 64 - x.unsigned_abs().leading_zeros()).max().unwrap_or(0);
    let count = 64 - (a.len().min(b.len()) as u64).leading_zeros();
    bits(a) + bits(b) + count < 126
}
