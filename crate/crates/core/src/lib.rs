//! Exact arithmetic, grading and classification for naturally graded
//! nilpotent associative algebras of nilindex n−3 with characteristic
//! sequence (n−3, 2, 1).

pub mod acceptance;
pub mod algebra;
pub mod classify;
pub mod families;
pub mod grading;
pub mod json;
pub mod linalg;
pub mod nonexistence;
pub mod scalar;

pub use algebra::{Algebra, AlgebraError, AssociativityViolation, BasisChange};
pub use classify::{
    canonical_form_a6, canonical_form_b4, witness_isomorphism, CanonicalForm, ClassifyError, Witness, WitnessConfig,
    WitnessMode,
};
pub use families::{
    family_a6, family_b4, null_filiform, representative, FamilyError, FamilyParamsA6, FamilyParamsB4, RepresentativeId,
    Theorem,
};
pub use grading::{characteristic_sequence, is_naturally_graded, CharacteristicSequence, Gradation};
pub use nonexistence::{reduce_mod_p, search_completion, CompletionProblem, NonexistenceError, Scenario};
pub use scalar::{ApproxComplex, Field, FieldDescriptor, Fp, Gaussian, QuadExt, Rational, Scalar, ScalarError};
