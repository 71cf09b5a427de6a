use proptest::prelude::*;

use nilgrade_core::classify::transform::{
    d_value, e_value, transform_a6_complete, transform_a6_params, transport_a6, CompleteChange, GeneratorChange,
};
use nilgrade_core::classify::{invariants_a6, nabla};
use nilgrade_core::grading::jordan_block_sizes;
use nilgrade_core::json::{algebra_from_json, algebra_to_json, gaussian_to_scalar};
use nilgrade_core::linalg::Matrix;
use nilgrade_core::scalar::rat;
use nilgrade_core::{family_a6, family_b4, BasisChange, FamilyParamsA6, FamilyParamsB4, Field, Fp, Gaussian};

const P: u64 = 101;

fn fp(v: u64) -> Fp {
    Fp::from_u64(v, P)
}

fn gaussian() -> impl Strategy<Value = Gaussian> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| Gaussian::new(rat(a, b), rat(c, d)))
}

fn fp_vec(len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..P, len)
}

/// Rank by plain Gaussian elimination over u64, written independently of the library.
fn rank_oracle(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else { continue };
        rows.swap(rank, piv);
        let inv = (1..p).find(|k| rows[rank][c] * k % p == 1).unwrap();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % p;
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + p * p - f * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn fp_matrix(n: usize, entries: &[u64]) -> Matrix<Fp> {
    let rows = entries.chunks(n).map(|r| r.iter().map(|&v| fp(v)).collect()).collect();
    Matrix::from_rows(rows, &fp(0)).unwrap()
}

fn a6_params(v: &[u64]) -> FamilyParamsA6<Fp> {
    FamilyParamsA6::new([fp(v[0]), fp(v[1]), fp(v[2]), fp(v[3]), fp(v[4]), fp(v[5])])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Gaussian::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn gaussian_sqrt_of_square(a in gaussian()) {
        let sq = &a * &a;
        let r = sq.sqrt_exact().expect("a perfect square has an exact root");
        prop_assert_eq!(&r * &r, sq);
        prop_assert!(r == a || r == -&a);
    }

    #[test]
    fn gaussian_display_parses_back(a in gaussian()) {
        prop_assert_eq!(a.to_string().parse::<Gaussian>().unwrap(), a);
    }

    #[test]
    fn fp_matches_integer_arithmetic(x in -10_000i64..10_000, y in -10_000i64..10_000) {
        let p = 97u64;
        let m = |v: i128| v.rem_euclid(p as i128) as u64;
        let (a, b) = (Fp::new(x, p), Fp::new(y, p));
        prop_assert_eq!(a.add(&b).value(), m(x as i128 + y as i128));
        prop_assert_eq!(a.sub(&b).value(), m(x as i128 - y as i128));
        prop_assert_eq!(a.mul(&b).value(), m(x as i128 * y as i128));
        if let Some(q) = a.div(&b) {
            prop_assert_eq!(q.mul(&b), a);
        } else {
            prop_assert_eq!(m(y as i128), 0);
        }
        if let Some(r) = a.sqrt_in_field() {
            prop_assert_eq!(r.square(), a);
        }
    }

    #[test]
    fn rank_mod_p_matches_oracle(entries in prop::collection::vec(0u64..7, 5 * 6)) {
        let rows: Vec<Vec<u64>> = entries.chunks(6).map(<[u64]>::to_vec).collect();
        let m = Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Fp::from_u64(v, 7)).collect()).collect(),
            &Fp::from_u64(0, 7),
        ).unwrap();
        prop_assert_eq!(m.rank(), rank_oracle(rows, 7));
    }

    #[test]
    fn basis_change_preserves_associativity(params in fp_vec(6), entries in fp_vec(49)) {
        let m = fp_matrix(7, &entries);
        prop_assume!(m.rank() == 7);
        let a = family_a6(7, &a6_params(&params)).unwrap();
        let moved = a.apply_basis_change(&BasisChange::new(m).unwrap()).unwrap();
        prop_assert!(moved.is_associative());
        prop_assert_eq!(moved.power_filtration().unwrap().dims(), a.power_filtration().unwrap().dims());
    }

    #[test]
    fn jordan_type_is_conjugation_invariant(params in fp_vec(4), entries in fp_vec(64)) {
        let m = fp_matrix(8, &entries);
        prop_assume!(m.rank() == 8);
        let b = family_b4(8, &FamilyParamsB4::new([fp(params[0]), fp(params[1]), fp(params[2]), fp(params[3])])).unwrap();
        let l = b.left_mult_matrix(&b.basis_vector(0)).unwrap();
        let conj = m.inverse().unwrap().mul(&l).unwrap().mul(&m).unwrap();
        prop_assert_eq!(jordan_block_sizes(&conj).unwrap(), jordan_block_sizes(&l).unwrap());
    }

    #[test]
    fn closed_form_transport_matches_table(params in fp_vec(6), g in fp_vec(6), n in 7usize..10) {
        let p = a6_params(&params);
        let change = CompleteChange::from_array([fp(g[0]), fp(g[1]), fp(g[2]), fp(g[3]), fp(g[4]), fp(g[5])]);
        let Ok(formula) = transform_a6_complete(&p, &change) else { return Ok(()) };
        let (moved, read) = transport_a6(n, &p, &change).unwrap();
        prop_assert!(moved.is_associative());
        prop_assert_eq!(read, Some(formula));
    }

    #[test]
    fn invariance_laws(params in fp_vec(6), g in fp_vec(6)) {
        let p = a6_params(&params);
        let ch = GeneratorChange { a1: fp(g[0]), a2: fp(g[1]), a3: fp(g[2]), b2: fp(g[3]), b3: fp(g[4]), c3: fp(g[5]) };
        let Ok(q) = transform_a6_params(&p, &ch) else { return Ok(()) };
        let d = d_value(&p, &ch.a1, &ch.a2, &ch.a3);
        let e = e_value(&p, &ch.a1, &ch.a2, &ch.a3, &ch.b2, &ch.b3);
        let (before, after) = (invariants_a6(&p), invariants_a6(&q));
        prop_assert_eq!(after.i1.mul(&d), before.i1.mul(&ch.c3));
        prop_assert_eq!(after.i2.mul(&d.square()), before.i2.mul(&ch.c3.square()));
        prop_assert_eq!(after.i3.mul(&d.square()), before.i3.mul(&ch.c3.square()));
        prop_assert_eq!(
            nabla(&q).mul(&d.pow(4)).mul(&e),
            nabla(&p).mul(&ch.a1.square()).mul(&ch.c3.pow(4))
        );
    }

    #[test]
    fn json_round_trip(alpha in prop::collection::vec(gaussian(), 6), n in 7usize..11) {
        let p = FamilyParamsA6::new([
            alpha[0].clone(), alpha[1].clone(), alpha[2].clone(),
            alpha[3].clone(), alpha[4].clone(), alpha[5].clone(),
        ]);
        let a = gaussian_to_scalar(&family_a6(n, &p).unwrap());
        let text = serde_json::to_string(&algebra_to_json(&a)).unwrap();
        prop_assert_eq!(algebra_from_json(&text).unwrap(), a);
    }
}
