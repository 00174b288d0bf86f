use thiserror::Error;

use crate::jacobian::ShapeError;

use super::nice::NiceError;

/// Validation, construction and recovery failures. Messages name the
/// violated classification condition (a)–(d) where one applies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("structured maps need n >= 3, got n = {n}")]
    TooSmall { n: usize },
    #[error("condition (a): p must have degree >= 1")]
    ConstantP,
    #[error("r = {r} must lie in [3, {n}]")]
    RangeR { r: usize, n: usize },
    #[error("levels must list i = 2..{last} in order, found i = {found} at position {position}")]
    LevelIndex { position: usize, found: usize, last: usize },
    #[error("condition {condition}: P_{level} is not nice: {reason}")]
    NotNice { condition: &'static str, level: usize, reason: NiceError },
    #[error("condition (a): d_2 = {d} >= 2 requires a'' = 0, got a'' = {second}")]
    SecondDerivative { d: u32, second: String },
    #[error("condition {condition}: d_{level} = {d} >= 2 requires c'_{level},{j} = 0, got {derivative}")]
    DerivativeNonzero { condition: &'static str, level: usize, j: usize, d: u32, derivative: String },
    #[error("condition (c): c_{r},{j} = {value} must be constant at the terminal level")]
    TerminalNotConstant { r: usize, j: usize, value: String },
    #[error("declared c_{level},{j} = {declared} differs from the value {derived} forced by the lower levels")]
    DeclaredMismatch { level: usize, j: usize, declared: String, derived: String },
    #[error("condition (d): component {i}: {reason}")]
    FreeComponent { i: usize, reason: String },
    #[error("component {i}: {reason}")]
    Component { i: usize, reason: String },
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("outside the classified family: component {component}: {reason}")]
    NotInFamily { component: usize, reason: String },
    #[error("params file: {0}")]
    File(String),
}
