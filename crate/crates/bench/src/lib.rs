//! Fixed inputs shared by the benchmarks.

use nilgrade_core::classify::transform::{transform_a6_params, GeneratorChange};
use nilgrade_core::{family_a6, Algebra, FamilyParamsA6, Fp, Gaussian};

/// Generic a6 tuple with every parameter nonzero.
pub fn generic_a6(proto: &Gaussian) -> FamilyParamsA6<Gaussian> {
    FamilyParamsA6::from_ints(proto, [2, 3, 1, -1, 5, 7])
}

/// An a6 algebra over F_p and its image under a nontrivial generator
/// change, so an exact witness exists but is not the identity.
pub fn fp_pair(n: usize, p: u64) -> (Algebra<Fp>, Algebra<Fp>) {
    let f = |v: i64| Fp::new(v, p);
    let a = FamilyParamsA6::from_ints(&f(0), [1, 2, 0, 1, 3, 1]);
    let g = GeneratorChange { a1: f(2), a2: f(1), a3: f(3), b2: f(3), b3: f(1), c3: f(4) };
    let b = transform_a6_params(&a, &g).expect("admissible change");
    (family_a6(n, &a).expect("valid n"), family_a6(n, &b).expect("valid n"))
}
