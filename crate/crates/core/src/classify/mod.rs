//! Parameter transport, invariants, canonical forms and isomorphism witnesses.

pub mod invariants;
pub mod transform;
pub mod tree;
pub mod witness;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::families::FamilyError;
use crate::scalar::ScalarError;

pub use invariants::{invariants_a6, nabla, InvariantSetA6};
pub use transform::{
    transform_a6_complete, transform_a6_params, transform_b4_params, ChangeB4, CompleteChange, GeneratorChange,
};
pub use tree::{canonical_form_a6, canonical_form_b4, CanonicalForm};
pub use witness::{witness_isomorphism, Witness, WitnessConfig, WitnessMode};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("inadmissible change of generators: {0}")]
    InadmissibleChange(&'static str),
    #[error("parameters {params} could not be placed: {reason}")]
    UnclassifiedParameters { params: String, reason: String },
    #[error("no witness found after {tried} candidates; this does not prove non-isomorphism")]
    BudgetExhausted { tried: u64 },
    #[error("algebra is not of family a6 or b4 shape")]
    NotFamilyShaped,
    #[error("algebras have different shapes or dimensions")]
    ShapeMismatch,
    #[error("coefficients do not reduce modulo {p}")]
    BadPrime { p: u64 },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
