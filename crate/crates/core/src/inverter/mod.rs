//! Invertible factors, exact composition, the elementary decomposition of
//! `F = X + H` for every classified `H`, and an independent degree-by-degree
//! inversion oracle.

mod decompose;
mod error;
mod factor;
mod formal;

pub use decompose::{decompose, decompose_verified, decompose_with, DecompositionState};
pub use error::InverterError;
pub use factor::{
    compose_factors, invert_factor_sequence, Factor, FactorFile, FactorSequence, FactorSequenceFile,
};
pub use formal::{default_degree_bound, formal_inverse, verify_inverse};
