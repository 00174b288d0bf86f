//! Parameter schema, validation and constructors for every classified family
//! of structured maps with nilpotent Jacobian, plus recovery of parameters from
//! a concrete map.

mod build;
mod error;
mod nice;
mod params;
mod recover;
mod sample;
mod tower;
mod validate;

pub use build::{build, build_cor1, build_cor2, build_main};
pub use error::FamilyError;
pub use nice::{NiceError, NicePoly};
pub use params::{
    Case, Cor1Params, Cor2Params, FamilyParams, FreeComponent, FreeFile, LevelFile, MainLevel, MainParams,
    ParamsFile, TerminalFile,
};
pub use recover::recover_params;
pub use sample::{random_cor1, random_cor2, random_main, random_main_bounded, random_params};
pub use tower::{closed_form_component, closed_form_mismatch, derivative_ladder_holds};
pub use validate::{validate_cor1, validate_cor2, validate_main, validate_params, DerivedConstants};
