//! Relative invariants of family a6.

use serde::Serialize;

use crate::families::FamilyParamsA6;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantSetA6<F> {
    /// α5 − α3
    pub i1: F,
    /// α2α6 − α3α5
    pub i2: F,
    /// (α3 + α5)² − 4α2α6
    pub i3: F,
    /// α1α5 − α2α4
    pub i4: F,
    /// α1α6 − α3α4
    pub i5: F,
    pub nabla: F,
    /// I2 / I1² when I1 ≠ 0.
    pub delta_candidate: Option<F>,
}

pub fn invariants_a6<F: Field>(p: &FamilyParamsA6<F>) -> InvariantSetA6<F> {
    let [a1, a2, a3, a4, a5, a6] = &p.alpha;
    let i1 = a5.sub(a3);
    let i2 = a2.mul(a6).sub(&a3.mul(a5));
    let i3 = a3.add(a5).square().sub(&a1.from_int_like(4).mul(a2).mul(a6));
    let i4 = a1.mul(a5).sub(&a2.mul(a4));
    let i5 = a1.mul(a6).sub(&a3.mul(a4));
    let delta_candidate = i1.square().inv().map(|d| i2.mul(&d));
    InvariantSetA6 { i1, i2, i3, i4, i5, nabla: nabla(p), delta_candidate }
}

/// The degree-5 polynomial ∇(α), as a signed sum of 17 monomials.
pub fn nabla<F: Field>(p: &FamilyParamsA6<F>) -> F {
    // (coefficient, exponents of α1..α6)
    const TERMS: [(i64, [u32; 6]); 17] = [
        (1, [0, 0, 3, 1, 0, 0]),
        (1, [0, 0, 2, 1, 1, 0]),
        (-1, [1, 0, 2, 1, 1, 0]),
        (1, [0, 1, 1, 2, 1, 0]),
        (-1, [1, 0, 1, 1, 2, 0]),
        (-1, [1, 0, 2, 0, 0, 1]),
        (-3, [0, 1, 1, 1, 0, 1]),
        (1, [1, 1, 1, 1, 0, 1]),
        (-1, [0, 2, 0, 2, 0, 1]),
        (1, [0, 0, 1, 0, 1, 1]),
        (1, [2, 0, 1, 0, 1, 1]),
        (1, [0, 1, 0, 1, 1, 1]),
        (1, [1, 1, 0, 1, 1, 1]),
        (-1, [1, 0, 0, 0, 2, 1]),
        (-1, [0, 1, 0, 0, 0, 2]),
        (2, [1, 1, 0, 0, 0, 2]),
        (-1, [2, 1, 0, 0, 0, 2]),
    ];
    let proto = &p.alpha[0];
    TERMS.iter().fold(proto.zero_like(), |acc, (c, e)| {
        let mono = (0..6).fold(proto.from_int_like(*c), |m, k| m.mul(&p.alpha[k].pow(e[k])));
        acc.add(&mono)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gaussian;

    #[test]
    fn zero_params_have_zero_invariants() {
        let z = Gaussian::zero();
        let inv = invariants_a6(&FamilyParamsA6::from_ints(&z, [0; 6]));
        for v in [&inv.i1, &inv.i2, &inv.i3, &inv.i4, &inv.i5, &inv.nabla] {
            assert!(v.is_zero());
        }
        assert!(inv.delta_candidate.is_none());
    }

    #[test]
    fn delta_candidate_value() {
        let p = FamilyParamsA6::from_ints(&Gaussian::zero(), [1, 1, 0, 0, 1, 2]);
        let inv = invariants_a6(&p);
        assert_eq!(inv.i1, Gaussian::from_int(1));
        assert_eq!(inv.i2, Gaussian::from_int(2));
        assert_eq!(inv.delta_candidate, Some(Gaussian::from_int(2)));
        assert_eq!(inv.nabla, Gaussian::from_int(-2));
    }
}
