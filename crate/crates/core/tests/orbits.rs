//! Exhaustive checks over small prime fields.

use nilgrade_core::classify::tree::b221_normalization;
use nilgrade_core::classify::transform::transform_a6_params;
use nilgrade_core::classify::witness::witness_exact;
use nilgrade_core::classify::{invariants_a6, nabla};
use nilgrade_core::nonexistence::SearchConfig;
use nilgrade_core::{
    canonical_form_b4, family_b4, search_completion, CompletionProblem, FamilyParamsA6, FamilyParamsB4, Field, Fp,
    Scenario,
};

const N: usize = 7;

/// Every b4 tuple over F_5 with (β2, β4) ≠ 0 is isomorphic to the
/// representative the decision rule assigns to it.
#[test]
fn b4_rule_agrees_with_orbit_search_over_f5() {
    let p = 5;
    let f = |v: u64| Fp::from_u64(v, p);
    let mut checked = 0;
    for code in 0..p.pow(4) {
        let beta = [code % p, code / p % p, code / 25 % p, code / 125];
        if beta[1] == 0 && beta[3] == 0 {
            continue;
        }
        let params = FamilyParamsB4::new(beta.map(f));
        let form = canonical_form_b4(&params).unwrap();
        let rep = FamilyParamsB4::new([
            form.params[0].clone(),
            form.params[1].clone(),
            form.params[2].clone(),
            form.params[3].clone(),
        ]);
        let a = family_b4(N, &params).unwrap();
        let b = family_b4(N, &rep).unwrap();
        assert!(witness_exact(&a, &b, None).is_ok(), "β = {beta:?} not isomorphic to {}", form.id.entry().label);
        checked += 1;
    }
    assert_eq!(checked, 600);
}

/// After the ∇ = 0 normalization the transformed tuple satisfies
/// α6'(α1' − 1)² + (α4' − α1')(α4' − 1) = 0.
#[test]
fn nabla_zero_normalization_relation() {
    let p = 101;
    let f = |v: u64| Fp::from_u64(v, p);
    let mut found = 0;
    let mut seed = 7u64;
    let mut next = || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (seed >> 33) % p
    };
    while found < 50 {
        let mut alpha = [0u64; 6].map(|_| f(next()));
        // solve ∇ = 0 for α4 by scanning F_p
        let Some(a4) = (0..p).map(f).find(|v| {
            alpha[3] = v.clone();
            nabla(&FamilyParamsA6::new(alpha.clone())).is_zero()
        }) else {
            continue;
        };
        alpha[3] = a4;
        let params = FamilyParamsA6::new(alpha);
        let inv = invariants_a6(&params);
        if inv.i1.is_zero() || inv.i2.is_zero() {
            continue;
        }
        let Some(change) = b221_normalization(&params, f(next()), f(next())) else { continue };
        let Ok(q) = transform_a6_params(&params, &change) else { continue };
        let [a1, a2, a3, a4, a5, a6] = &q.alpha;
        assert!(a2.is_one() && a5.is_one() && a3.is_zero(), "normal form {q}");
        let one = a1.one_like();
        let rel = a6.mul(&a1.sub(&one).square()).add(&a4.sub(a1).mul(&a4.sub(&one)));
        assert!(rel.is_zero(), "relation fails for {params} -> {q}");
        found += 1;
    }
}

/// Every completion returned by the search is associative, has the
/// required Jordan type and respects the imposed degrees.
#[test]
fn completions_are_sound() {
    for (scenario, p) in [("r:1,1", 5), ("r:1,2", 5), ("r:1,1", 7)] {
        let prob = CompletionProblem::new(N, scenario.parse::<Scenario>().unwrap(), p).unwrap();
        let report = search_completion(&prob, &SearchConfig::default()).unwrap();
        assert!(!report.is_empty(), "{scenario} over F_{p}");
        for a in &report.solutions {
            assert!(a.is_associative());
            assert!(prob.accepts(a));
            let l = a.left_mult_matrix(&a.basis_vector(0)).unwrap();
            let sizes = nilgrade_core::grading::jordan_block_sizes(&l).unwrap();
            assert_eq!(sizes.parts(), prob.shape.as_slice());
        }
    }
}
