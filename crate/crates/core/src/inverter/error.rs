use thiserror::Error;

use crate::family::FamilyError;
use crate::jacobian::{MapError, ShapeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InverterError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("factor dimension {found} does not match n = {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("elementary factor for x{i} must not contain x{i}")]
    SelfReferential { i: usize },
    #[error("factor index {i} is outside 1..={n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("linear factor is singular")]
    SingularLinear,
    #[error("H is not of the structured shape: {0}")]
    NotStructured(#[from] ShapeError),
    #[error("JH is not nilpotent")]
    NotNilpotent,
    #[error("{0}")]
    OutsideFamily(FamilyError),
    #[error("no polynomial inverse found up to degree {bound}")]
    NoClosure { bound: u32 },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
