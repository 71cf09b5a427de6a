//! Versioned JSON documents for algebras. Indices are 1-based on the wire.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::scalar::{coerce_to, FieldDescriptor, Gaussian, Scalar, ScalarError};

pub const SCHEMA: &str = "nilgrade/1";

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported schema `{0}`, expected `{SCHEMA}`")]
    Schema(String),
    #[error("basis index {index} outside 1..={dim}")]
    Index { index: usize, dim: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("field {0} has no exact Gaussian-rational representation")]
    NotGaussian(FieldDescriptor),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<(usize, Scalar)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub schema: String,
    pub dim: usize,
    pub field: FieldDescriptor,
    pub table: Vec<ProductEntry>,
}

impl AlgebraDoc {
    pub fn from_algebra(a: &Algebra<Scalar>) -> Self {
        let table = a
            .entries()
            .map(|(&(i, j), coeffs)| ProductEntry {
                i: i + 1,
                j: j + 1,
                coeffs: coeffs.iter().map(|(k, c)| (k + 1, c.clone())).collect(),
            })
            .collect();
        AlgebraDoc { schema: SCHEMA.to_string(), dim: a.dim(), field: a.field(), table }
    }

    pub fn to_algebra(&self) -> Result<Algebra<Scalar>, JsonError> {
        if self.schema != SCHEMA {
            return Err(JsonError::Schema(self.schema.clone()));
        }
        let dim = self.dim;
        let idx = |index: usize| {
            if (1..=dim).contains(&index) {
                Ok(index - 1)
            } else {
                Err(JsonError::Index { index, dim })
            }
        };
        let mut a = Algebra::zero_algebra(dim, &Scalar::zero(&self.field));
        for e in &self.table {
            let coeffs = e
                .coeffs
                .iter()
                .map(|(k, c)| Ok((idx(*k)?, coerce_to(&self.field, c.clone())?)))
                .collect::<Result<Vec<_>, JsonError>>()?;
            a.set_product(idx(e.i)?, idx(e.j)?, coeffs)?;
        }
        Ok(a)
    }
}

pub fn algebra_to_json(a: &Algebra<Scalar>) -> serde_json::Value {
    serde_json::to_value(AlgebraDoc::from_algebra(a)).expect("algebra documents always serialize")
}

pub fn algebra_from_json(text: &str) -> Result<Algebra<Scalar>, JsonError> {
    serde_json::from_str::<AlgebraDoc>(text)?.to_algebra()
}

pub fn gaussian_to_scalar(a: &Algebra<Gaussian>) -> Algebra<Scalar> {
    a.map_scalars(&Scalar::Gaussian(Gaussian::zero()), |g| Ok::<_, ScalarError>(Scalar::Gaussian(g.clone())))
        .expect("infallible")
}

/// Views an algebra over ℚ or ℚ(i) as one over ℚ(i).
pub fn scalar_to_gaussian(a: &Algebra<Scalar>) -> Result<Algebra<Gaussian>, JsonError> {
    match a.field() {
        FieldDescriptor::Q | FieldDescriptor::QI => {}
        other => return Err(JsonError::NotGaussian(other)),
    }
    a.map_scalars(&Gaussian::zero(), |s| s.to_gaussian().ok_or_else(|| JsonError::NotGaussian(s.descriptor())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_a6, FamilyParamsA6};

    #[test]
    fn round_trip_preserves_table() {
        let g = Gaussian::zero();
        let mut p = FamilyParamsA6::from_ints(&g, [1, 1, 0, 0, 1, 2]);
        p.alpha[3] = "1/2-i".parse().unwrap();
        let a = gaussian_to_scalar(&family_a6(7, &p).unwrap());
        let text = serde_json::to_string(&algebra_to_json(&a)).unwrap();
        let back = algebra_from_json(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(scalar_to_gaussian(&back).unwrap(), family_a6(7, &p).unwrap());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["table"][0]["i"], 1);
    }

    #[test]
    fn rejects_bad_documents() {
        let bad_index = r#"{"schema":"nilgrade/1","dim":2,"field":{"kind":"Q"},"table":[{"i":3,"j":1,"coeffs":[]}]}"#;
        assert!(matches!(algebra_from_json(bad_index), Err(JsonError::Index { index: 3, .. })));
        let bad_schema = r#"{"schema":"other","dim":1,"field":{"kind":"Q"},"table":[]}"#;
        assert!(matches!(algebra_from_json(bad_schema), Err(JsonError::Schema(_))));
    }
}
