//! Jacobian matrices of polynomial maps and three independent nilpotency tests:
//! matrix powers, characteristic coefficients of `det(I + T·J)`, and the
//! structured equation system, plus linear-dependence rank checks.

mod dependence;
mod map;
mod matrix;
mod nilpotency;
mod report;
mod shape;

pub use dependence::{
    linear_dependence_rank, row_dependence_rank, vector_dependence_rank, DependenceJson, DependenceReport,
};
pub use map::{MapError, MapFile, PolynomialMap};
pub use matrix::PolyMatrix;
pub use nilpotency::{
    char_coefficients, det_identity_plus_t, is_nilpotent, is_nilpotent_power, jacobian_matrix,
    nilpotency_equations, nilpotency_index, structured_char_recursion, NilpotencyMethod,
};
pub use report::{check_nilpotency, CheckError, MethodSelector, MethodVerdict, NilpotencyReport};
pub use shape::{validate_structured_shape, ShapeError, StructuredShape};
