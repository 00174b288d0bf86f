use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::polyring::Polynomial;

use super::dependence::linear_dependence_rank;
use super::map::PolynomialMap;
use super::nilpotency::{char_coefficients, jacobian_matrix, nilpotency_equations, nilpotency_index, NilpotencyMethod};
use super::shape::{validate_structured_shape, ShapeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSelector {
    One(NilpotencyMethod),
    All,
}

impl FromStr for MethodSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            Ok(MethodSelector::All)
        } else {
            s.parse().map(MethodSelector::One)
        }
    }
}

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("equations method needs a structured map: {0}")]
    Shape(#[from] ShapeError),
    #[error("internal inconsistency: nilpotency methods disagree ({0})")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MethodVerdict {
    pub method: String,
    pub nilpotent: bool,
}

/// JSON-ready summary of a nilpotency check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotencyReport {
    pub nilpotent: bool,
    pub method: String,
    pub verdicts: Vec<MethodVerdict>,
    pub residuals: Vec<String>,
    pub rank: usize,
    pub kernel: Vec<Vec<String>>,
    pub structured: bool,
    pub nilpotency_index: Option<usize>,
}

/// Runs the selected methods and cross-checks them. Residuals are the
/// structured equations when the shape allows, otherwise the characteristic
/// coefficients. With `All`, the equations method is skipped on unstructured maps.
pub fn check_nilpotency(h: &PolynomialMap, selector: MethodSelector) -> Result<NilpotencyReport, CheckError> {
    let structured = validate_structured_shape(h);
    let methods: Vec<NilpotencyMethod> = match selector {
        MethodSelector::One(NilpotencyMethod::Equations) => {
            structured.clone()?;
            vec![NilpotencyMethod::Equations]
        }
        MethodSelector::One(m) => vec![m],
        MethodSelector::All if structured.is_ok() => NilpotencyMethod::ALL.to_vec(),
        MethodSelector::All => vec![NilpotencyMethod::Power, NilpotencyMethod::Char],
    };
    let j = jacobian_matrix(h);
    let index = nilpotency_index(&j);
    let equations = nilpotency_equations(h).ok();
    let chars = char_coefficients(&j);
    let verdicts: Vec<MethodVerdict> = methods
        .iter()
        .map(|&m| MethodVerdict {
            method: m.name().to_string(),
            nilpotent: match m {
                NilpotencyMethod::Power => index.is_some(),
                NilpotencyMethod::Char => chars.iter().all(Polynomial::is_zero),
                NilpotencyMethod::Equations => {
                    equations.as_ref().expect("shape checked").iter().all(Polynomial::is_zero)
                }
            },
        })
        .collect();
    let nilpotent = verdicts[0].nilpotent;
    if verdicts.iter().any(|v| v.nilpotent != nilpotent) {
        let summary: Vec<String> = verdicts.iter().map(|v| format!("{}={}", v.method, v.nilpotent)).collect();
        return Err(CheckError::Inconsistent(summary.join(", ")));
    }
    let residuals = equations.unwrap_or(chars).iter().map(ToString::to_string).collect();
    let deps = linear_dependence_rank(h.components()).to_json();
    Ok(NilpotencyReport {
        nilpotent,
        method: match selector {
            MethodSelector::All => "all".to_string(),
            MethodSelector::One(m) => m.name().to_string(),
        },
        verdicts,
        residuals,
        rank: deps.rank,
        kernel: deps.kernel,
        structured: structured.is_ok(),
        nilpotency_index: index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_methods_on_example() {
        let h = PolynomialMap::parse(&["y - x^2", "z + 2*x*(y - x^2)", "-(y - x^2)^2"], 3).unwrap();
        let report = check_nilpotency(&h, MethodSelector::All).unwrap();
        assert!(report.nilpotent);
        assert_eq!(report.verdicts.len(), 3);
        assert_eq!(report.rank, 3);
        assert_eq!(report.nilpotency_index, Some(3));
        assert!(report.residuals.iter().all(|r| r == "0"));
    }

    #[test]
    fn unstructured_map() {
        let h = PolynomialMap::parse(&["z", "0", "0"], 3).unwrap();
        assert!(matches!(
            check_nilpotency(&h, MethodSelector::One(NilpotencyMethod::Equations)),
            Err(CheckError::Shape(_))
        ));
        let report = check_nilpotency(&h, MethodSelector::All).unwrap();
        assert!(report.nilpotent);
        assert!(!report.structured);
        assert_eq!(report.verdicts.len(), 2);
    }
}
