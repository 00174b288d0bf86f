use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::jacobian::PolynomialMap;
use crate::polyring::{format_rational, parse_rational, Polynomial, Rational};

use super::error::InverterError;

/// An invertible building block of a factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// `(x_1, ..., x_i + a, ..., x_n)` with `a` free of `x_i`; `i` is one-based.
    Elementary { i: usize, a: Polynomial },
    /// `x ↦ x + c`
    Translation { c: Vec<Rational> },
    /// `x ↦ M x`
    Linear { m: Vec<Vec<Rational>> },
}

impl Factor {
    pub fn elementary(i: usize, a: Polynomial) -> Result<Self, InverterError> {
        let n = a.nvars();
        if !(1..=n).contains(&i) {
            return Err(InverterError::IndexOutOfRange { i, n });
        }
        if a.involves(i - 1) {
            return Err(InverterError::SelfReferential { i });
        }
        Ok(Factor::Elementary { i, a })
    }

    pub fn linear(m: Vec<Vec<Rational>>) -> Result<Self, InverterError> {
        if m.iter().any(|row| row.len() != m.len()) {
            return Err(InverterError::Dimension { expected: m.len(), found: m.first().map_or(0, Vec::len) });
        }
        invert_matrix(&m)?;
        Ok(Factor::Linear { m })
    }

    pub fn dim(&self) -> usize {
        match self {
            Factor::Elementary { a, .. } => a.nvars(),
            Factor::Translation { c } => c.len(),
            Factor::Linear { m } => m.len(),
        }
    }

    pub fn is_affine(&self) -> bool {
        !matches!(self, Factor::Elementary { .. })
    }

    pub fn inverse(&self) -> Result<Factor, InverterError> {
        Ok(match self {
            Factor::Elementary { i, a } => Factor::Elementary { i: *i, a: -a },
            Factor::Translation { c } => Factor::Translation { c: c.iter().map(|v| -v.clone()).collect() },
            Factor::Linear { m } => Factor::Linear { m: invert_matrix(m)? },
        })
    }

    pub fn to_map(&self) -> PolynomialMap {
        self.after(&PolynomialMap::identity(self.dim()))
    }

    /// `self ∘ g`
    pub fn after(&self, g: &PolynomialMap) -> PolynomialMap {
        let mut components = g.components().to_vec();
        let n = g.dim();
        match self {
            Factor::Elementary { i, a } => {
                let shift = a.eval_polys(g.components()).expect("same dimension");
                components[i - 1] = &components[i - 1] + &shift;
            }
            Factor::Translation { c } => {
                for (comp, v) in components.iter_mut().zip(c) {
                    *comp = &*comp + &Polynomial::constant(n, v.clone());
                }
            }
            Factor::Linear { m } => {
                components = m
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(g.components())
                            .filter(|(v, _)| !v.is_zero())
                            .fold(Polynomial::zero(n), |acc, (v, p)| &acc + &p.scale(v))
                    })
                    .collect();
            }
        }
        PolynomialMap::new(components).expect("same dimension")
    }

    /// `g ∘ self`
    pub fn before(&self, g: &PolynomialMap) -> PolynomialMap {
        match self {
            Factor::Elementary { i, a } => {
                let replacement = &Polynomial::var(g.dim(), i - 1) + a;
                let components = g
                    .components()
                    .iter()
                    .map(|p| if p.involves(i - 1) { p.substitute(&[(i - 1, replacement.clone())]).expect("in range") } else { p.clone() })
                    .collect();
                PolynomialMap::new(components).expect("same dimension")
            }
            _ => g.compose(&self.to_map()).expect("same dimension"),
        }
    }

    fn to_file(&self) -> FactorFile {
        let row = |r: &[Rational]| r.iter().map(format_rational).collect::<Vec<_>>();
        match self {
            Factor::Elementary { i, a } => FactorFile::Elementary { i: *i, a: a.to_string() },
            Factor::Translation { c } => FactorFile::Translation { c: row(c) },
            Factor::Linear { m } => FactorFile::Linear { m: m.iter().map(|r| row(r)).collect() },
        }
    }

    fn from_file(file: &FactorFile, n: usize) -> Result<Factor, String> {
        let rational = |s: &String| parse_rational(s.trim()).map_err(|e| e.to_string());
        let row = |r: &[String]| r.iter().map(rational).collect::<Result<Vec<_>, _>>();
        let factor = match file {
            FactorFile::Elementary { i, a } => {
                let a = Polynomial::parse(a, n).map_err(|e| e.to_string())?;
                Factor::elementary(*i, a).map_err(|e| e.to_string())?
            }
            FactorFile::Translation { c } => Factor::Translation { c: row(c)? },
            FactorFile::Linear { m } => {
                Factor::linear(m.iter().map(|r| row(r)).collect::<Result<_, _>>()?).map_err(|e| e.to_string())?
            }
        };
        if factor.dim() != n {
            return Err(format!("factor has dimension {} instead of {n}", factor.dim()));
        }
        Ok(factor)
    }
}

/// Exact Gauss-Jordan inverse.
pub(crate) fn invert_matrix(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, InverterError> {
    let n = m.len();
    let mut work: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero()).ok_or(InverterError::SingularLinear)?;
        work.swap(col, pivot);
        let inv = work[col][col].recip();
        for v in work[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = work[col].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &factor * p;
                }
            }
        }
    }
    Ok(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Ordered product `f_1 ∘ f_2 ∘ ⋯ ∘ f_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSequence {
    pub n: usize,
    pub factors: Vec<Factor>,
}

impl FactorSequence {
    pub fn new(n: usize, factors: Vec<Factor>) -> Result<Self, InverterError> {
        if let Some(f) = factors.iter().find(|f| f.dim() != n) {
            return Err(InverterError::Dimension { expected: n, found: f.dim() });
        }
        Ok(FactorSequence { n, factors })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// True when no translation or linear factor occurs.
    pub fn elementary_only(&self) -> bool {
        !self.factors.iter().any(Factor::is_affine)
    }

    pub fn to_json_file(&self) -> FactorSequenceFile {
        FactorSequenceFile {
            n: self.n,
            factors: self.factors.iter().map(Factor::to_file).collect(),
            elementary_only: self.elementary_only(),
        }
    }

    pub fn from_json_file(file: &FactorSequenceFile) -> Result<Self, String> {
        let factors = file.factors.iter().map(|f| Factor::from_file(f, file.n)).collect::<Result<_, _>>()?;
        Ok(FactorSequence { n: file.n, factors })
    }
}

pub fn compose_factors(seq: &FactorSequence) -> PolynomialMap {
    seq.factors.iter().rev().fold(PolynomialMap::identity(seq.n), |acc, f| f.after(&acc))
}

pub fn invert_factor_sequence(seq: &FactorSequence) -> Result<FactorSequence, InverterError> {
    let factors = seq.factors.iter().rev().map(Factor::inverse).collect::<Result<_, _>>()?;
    Ok(FactorSequence { n: seq.n, factors })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorFile {
    Elementary { i: usize, a: String },
    Translation { c: Vec<String> },
    Linear { m: Vec<Vec<String>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSequenceFile {
    pub n: usize,
    pub factors: Vec<FactorFile>,
    pub elementary_only: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn poly(s: &str) -> Polynomial {
        Polynomial::parse(s, 3).unwrap()
    }

    #[test]
    fn empty_and_single() {
        let empty = FactorSequence::new(3, vec![]).unwrap();
        assert!(compose_factors(&empty).is_identity());
        let seq = FactorSequence::new(3, vec![Factor::elementary(1, poly("y^2")).unwrap()]).unwrap();
        assert_eq!(compose_factors(&seq), PolynomialMap::parse(&["x + y^2", "y", "z"], 3).unwrap());
        let inv = invert_factor_sequence(&seq).unwrap();
        assert_eq!(inv.factors, vec![Factor::Elementary { i: 1, a: poly("-y^2") }]);
        assert!(Factor::elementary(2, poly("x*y")).is_err());
    }

    #[test]
    fn affine_inverses() {
        let t = Factor::Translation { c: vec![rat(1), rat(-2), rat(0)] };
        assert_eq!(t.inverse().unwrap(), Factor::Translation { c: vec![rat(-1), rat(2), rat(0)] });
        let m = vec![vec![rat(2), rat(3), rat(0)], vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]];
        let s = Factor::linear(m).unwrap();
        let seq = FactorSequence::new(3, vec![t.clone(), s.clone(), Factor::elementary(3, poly("x*y")).unwrap()]).unwrap();
        let both = compose_factors(&seq).compose(&compose_factors(&invert_factor_sequence(&seq).unwrap())).unwrap();
        assert!(both.is_identity());
        assert!(!seq.elementary_only());
        let singular = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        assert_eq!(Factor::linear(singular), Err(InverterError::SingularLinear));
    }

    #[test]
    fn before_and_after_agree_with_composition() {
        let g = PolynomialMap::parse(&["x + z^2", "y*x", "z + 1"], 3).unwrap();
        let e = Factor::elementary(2, poly("x^2 - z")).unwrap();
        assert_eq!(e.after(&g), e.to_map().compose(&g).unwrap());
        assert_eq!(e.before(&g), g.compose(&e.to_map()).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let seq = FactorSequence::new(
            3,
            vec![
                Factor::elementary(1, poly("y^2")).unwrap(),
                Factor::Translation { c: vec![rat(1), rat(0), rat(0)] },
            ],
        )
        .unwrap();
        let text = serde_json::to_string(&seq.to_json_file()).unwrap();
        assert!(text.contains("\"kind\":\"elementary\""));
        let back: FactorSequenceFile = serde_json::from_str(&text).unwrap();
        assert_eq!(FactorSequence::from_json_file(&back).unwrap(), seq);
    }
}
