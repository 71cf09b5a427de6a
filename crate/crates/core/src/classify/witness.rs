//! Search for explicit isomorphisms between family algebras.
//!
//! The search runs over changes of generators ([`CompleteChange`] for a6,
//! [`ChangeB4`] for b4). Exact mode enumerates them over a prime field;
//! approximate mode refines seeded random starts by Levenberg–Marquardt.
//! Either way a candidate is accepted only after the whole table has been
//! transported and compared.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, BasisChange};
use crate::classify::transform::{
    basis_for_a6, e_value, transform_a6_complete, transform_b4_params, transport_b4, ChangeB4, CompleteChange,
};
use crate::classify::ClassifyError;
use crate::families::{family_a6, family_b4, recognize_a6, recognize_b4, FamilyParamsA6, FamilyParamsB4};
use crate::scalar::{reduce_gaussian, ApproxComplex, Field, Fp, Gaussian, DEFAULT_TOL};

type C64 = Complex<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum WitnessMode {
    /// Exhaustive enumeration over F_p.
    Exact { p: u64 },
    /// Numerical search; the transported table must match within `tol`.
    Approx { tol: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessConfig {
    pub mode: WitnessMode,
    pub seed: u64,
    /// Restarts in approximate mode; candidates in exact mode (`None` = all).
    pub budget: Option<u64>,
}

impl WitnessConfig {
    pub fn approx(seed: u64) -> Self {
        WitnessConfig { mode: WitnessMode::Approx { tol: DEFAULT_TOL }, seed, budget: Some(10_000) }
    }

    pub fn exact(p: u64) -> Self {
        WitnessConfig { mode: WitnessMode::Exact { p }, seed: 0, budget: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    A6,
    B4,
}

#[derive(Clone, Debug)]
pub enum WitnessChange {
    Exact(BasisChange<Fp>),
    Approx(BasisChange<ApproxComplex>),
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub mode: WitnessMode,
    pub shape: Shape,
    /// Generator parameters: (A1, A2, A3, B2, B3, c) for a6, (A1, A2, B2, C1, C2) for b4.
    pub generators: Vec<(String, String)>,
    /// Columns of P: the new basis in old coordinates.
    pub matrix: Vec<Vec<String>>,
    /// Largest coefficient difference after transport (0 in exact mode).
    pub residual: f64,
    /// Candidates (exact) or restarts (approx) consumed.
    pub tried: u64,
    #[serde(skip)]
    pub change: WitnessChange,
}

const A6_NAMES: [&str; 6] = ["A1", "A2", "A3", "B2", "B3", "c"];
const B4_NAMES: [&str; 5] = ["A1", "A2", "B2", "C1", "C2"];

fn named<F: Field>(names: &[&str], vals: &[F]) -> Vec<(String, String)> {
    names.iter().zip(vals).map(|(n, v)| (n.to_string(), v.to_string())).collect()
}

fn matrix_strings<F: Field>(b: &BasisChange<F>) -> Vec<Vec<String>> {
    (0..b.dim()).map(|j| b.p.col(j).iter().map(ToString::to_string).collect()).collect()
}

// ------------------------------------------------------------------ exact

fn digits(mut idx: u64, p: u64, out: &mut [u64]) {
    for d in out.iter_mut() {
        *d = idx % p;
        idx /= p;
    }
}

fn total_candidates(p: u64, k: u32, budget: Option<u64>) -> (u64, bool) {
    let full = p.checked_pow(k).unwrap_or(u64::MAX);
    match budget {
        Some(b) if b < full => (b, true),
        _ => (full, false),
    }
}

/// Exhaustive search over F_p for a6 parameters; candidates are ordered by
/// (A1, A2, A3, B2, B3) in base p with c innermost.
pub fn witness_exact_a6(
    n: usize,
    pa: &FamilyParamsA6<Fp>,
    pb: &FamilyParamsA6<Fp>,
    budget: Option<u64>,
) -> Result<Witness, ClassifyError> {
    let p = pa.alpha[0].modulus();
    let (outer, _) = total_candidates(p, 5, budget.map(|b| b / p.max(1)));
    let target = family_a6(n, pb)?;
    let fp = |v: u64| Fp::from_u64(v, p);
    let found = (0..outer).into_par_iter().find_map_first(|idx| {
        let mut d = [0u64; 5];
        digits(idx, p, &mut d);
        if d[0] == 0 {
            return None;
        }
        let [a1, a2, a3, b2, b3] = d.map(fp);
        let e = e_value(pa, &a1, &a2, &a3, &b2, &b3);
        if e.is_zero() {
            return None;
        }
        // α1', α2' do not involve c: filter on them first
        let probe = CompleteChange { a1, a2, a3, b2, b3, c: fp(1) };
        let q = transform_a6_complete(pa, &probe).ok()?;
        if q.alpha[0] != pb.alpha[0] || q.alpha[1] != pb.alpha[1] {
            return None;
        }
        (1..p).find_map(|c| {
            let g = CompleteChange { c: fp(c), ..probe.clone() };
            let q = transform_a6_complete(pa, &g).ok()?;
            if q != *pb {
                return None;
            }
            let (a, basis) = basis_for_a6(n, pa, &g).ok()?;
            (a.apply_basis_change(&basis).ok()? == target).then_some((g, basis))
        })
    });
    match found {
        Some((g, basis)) => Ok(Witness {
            mode: WitnessMode::Exact { p },
            shape: Shape::A6,
            generators: named(&A6_NAMES, &g.as_array()),
            matrix: matrix_strings(&basis),
            residual: 0.0,
            tried: outer * p,
            change: WitnessChange::Exact(basis),
        }),
        None => Err(ClassifyError::BudgetExhausted { tried: outer * p }),
    }
}

/// Exhaustive search over F_p for b4 parameters, ordered by (A1, A2, B2, C1, C2).
pub fn witness_exact_b4(
    n: usize,
    pa: &FamilyParamsB4<Fp>,
    pb: &FamilyParamsB4<Fp>,
    budget: Option<u64>,
) -> Result<Witness, ClassifyError> {
    let p = pa.beta[0].modulus();
    let (total, _) = total_candidates(p, 5, budget);
    let target = family_b4(n, pb)?;
    let fp = |v: u64| Fp::from_u64(v, p);
    let found = (0..total).into_par_iter().find_map_first(|idx| {
        let mut d = [0u64; 5];
        digits(idx, p, &mut d);
        let g = ChangeB4::from_array(d.map(fp));
        if transform_b4_params(pa, &g).ok()? != *pb {
            return None;
        }
        let (moved, _) = transport_b4(n, pa, &g).ok()?;
        (moved == target).then_some(g)
    });
    match found {
        Some(g) => {
            let basis = b4_basis(n, pa, &g)?;
            Ok(Witness {
                mode: WitnessMode::Exact { p },
                shape: Shape::B4,
                generators: named(&B4_NAMES, &g.as_array()),
                matrix: matrix_strings(&basis),
                residual: 0.0,
                tried: total,
                change: WitnessChange::Exact(basis),
            })
        }
        None => Err(ClassifyError::BudgetExhausted { tried: total }),
    }
}

fn b4_basis<F: Field>(n: usize, p: &FamilyParamsB4<F>, g: &ChangeB4<F>) -> Result<BasisChange<F>, ClassifyError> {
    // rebuild the basis the transport used, for reporting
    let a = family_b4(n, p)?;
    let (x, y, z) = crate::families::xyz(n);
    let proto = a.proto().clone();
    let mut e1 = vec![proto.zero_like(); n];
    e1[0] = g.a1.clone();
    e1[x] = g.a2.clone();
    let mut xv = vec![proto.zero_like(); n];
    xv[x] = g.b2.clone();
    let mut zv = vec![proto.zero_like(); n];
    zv[y] = g.c1.clone();
    zv[z] = g.c2.clone();
    let mut cols = vec![e1.clone()];
    for _ in 2..=n - 3 {
        let next = a.mul_unchecked(&e1, cols.last().expect("nonempty"));
        cols.push(next);
    }
    let yv = a.mul_unchecked(&e1, &xv);
    cols.extend([xv, yv, zv]);
    Ok(BasisChange::from_columns(&cols, &proto)?)
}

// ----------------------------------------------------------------- approx

fn to_c(x: &ApproxComplex) -> C64 {
    C64::new(x.re, x.im)
}

fn from_c(z: C64, tol: f64) -> ApproxComplex {
    ApproxComplex::new(z.re, z.im, tol)
}

/// Damped Gauss–Newton on a holomorphic residual map, with central
/// differences for the Jacobian. Returns the point and its max residual.
fn levenberg_marquardt(mut x: Vec<C64>, f: &dyn Fn(&[C64]) -> Option<Vec<C64>>) -> Option<(Vec<C64>, f64)> {
    let m = x.len();
    let norm2 = |r: &[C64]| r.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let mut r = f(&x)?;
    let mut cost = norm2(&r);
    let mut lambda = 1e-3;
    for _ in 0..300 {
        if cost < 1e-28 {
            break;
        }
        let k = r.len();
        let mut jac = DMatrix::<C64>::zeros(k, m);
        for j in 0..m {
            let h = 1e-6 * (1.0 + x[j].norm());
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            let (fp, fm) = (f(&xp)?, f(&xm)?);
            for i in 0..k {
                jac[(i, j)] = (fp[i] - fm[i]) / C64::new(2.0 * h, 0.0);
            }
        }
        let jh = jac.adjoint();
        let a = &jh * &jac;
        let g = &jh * DVector::from_vec(r.clone());
        let mut accepted = false;
        for _ in 0..12 {
            let mut damped = a.clone();
            for i in 0..m {
                damped[(i, i)] += C64::new(lambda * (1.0 + a[(i, i)].re), 0.0);
            }
            let Some(step) = damped.lu().solve(&(-&g)) else {
                lambda *= 4.0;
                continue;
            };
            let xn: Vec<C64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            if let Some(rn) = f(&xn) {
                let cn = norm2(&rn);
                if cn < cost {
                    x = xn;
                    r = rn;
                    cost = cn;
                    lambda = (lambda / 3.0).max(1e-15);
                    accepted = true;
                    break;
                }
            }
            lambda *= 4.0;
        }
        if !accepted {
            break;
        }
    }
    let worst = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Some((x, worst))
}

fn random_start(seed: u64, restart: u64, m: usize) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart);
    (0..m).map(|_| C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))).collect()
}

const NONDEGENERATE: f64 = 1e-6;

/// Seeded restarts for a6 parameters; restart k uses ChaCha8 stream k.
pub fn witness_approx_a6(
    n: usize,
    pa: &FamilyParamsA6<ApproxComplex>,
    pb: &FamilyParamsA6<ApproxComplex>,
    seed: u64,
    restarts: u64,
    tol: f64,
) -> Result<Witness, ClassifyError> {
    let target = family_a6(n, pb)?;
    let residual = |x: &[C64]| -> Option<Vec<C64>> {
        let g = CompleteChange::from_array(std::array::from_fn(|i| from_c(x[i], 0.0)));
        let e = e_value(pa, &g.a1, &g.a2, &g.a3, &g.b2, &g.b3);
        if to_c(&g.a1).norm() < 1e-12 || to_c(&g.c).norm() < 1e-12 || to_c(&e).norm() < 1e-12 {
            return None;
        }
        let q = transform_a6_complete(pa, &g).ok()?;
        Some(q.alpha.iter().zip(&pb.alpha).map(|(u, v)| to_c(u) - to_c(v)).collect())
    };
    let found = (0..restarts).into_par_iter().find_map_first(|k| {
        let (x, worst) = levenberg_marquardt(random_start(seed, k, 6), &residual)?;
        if worst > 1e-11 {
            return None;
        }
        let g = CompleteChange::from_array(std::array::from_fn(|i| from_c(x[i], tol)));
        let e = e_value(pa, &g.a1, &g.a2, &g.a3, &g.b2, &g.b3);
        if [&g.a1, &g.c, &e].iter().any(|v| v.abs() < NONDEGENERATE) {
            return None;
        }
        let pa_t = pa.map(|v| ApproxComplex { tol, ..*v });
        let (a, basis) = basis_for_a6(n, &pa_t, &g).ok()?;
        let moved = a.apply_basis_change(&basis).ok()?;
        let res = moved.max_difference(&target, ApproxComplex::abs);
        (res < tol).then_some((k, g, basis, res))
    });
    match found {
        Some((k, g, basis, res)) => Ok(Witness {
            mode: WitnessMode::Approx { tol },
            shape: Shape::A6,
            generators: named(&A6_NAMES, &g.as_array()),
            matrix: matrix_strings(&basis),
            residual: res,
            tried: k + 1,
            change: WitnessChange::Approx(basis),
        }),
        None => Err(ClassifyError::BudgetExhausted { tried: restarts }),
    }
}

pub fn witness_approx_b4(
    n: usize,
    pa: &FamilyParamsB4<ApproxComplex>,
    pb: &FamilyParamsB4<ApproxComplex>,
    seed: u64,
    restarts: u64,
    tol: f64,
) -> Result<Witness, ClassifyError> {
    let target = family_b4(n, pb)?;
    let residual = |x: &[C64]| -> Option<Vec<C64>> {
        if x[0].norm() < 1e-12 || x[2].norm() < 1e-12 {
            return None;
        }
        let g = ChangeB4::from_array(std::array::from_fn(|i| from_c(x[i], 0.0)));
        let q = transform_b4_params(pa, &g).ok()?;
        Some(q.beta.iter().zip(&pb.beta).map(|(u, v)| to_c(u) - to_c(v)).collect())
    };
    let found = (0..restarts).into_par_iter().find_map_first(|k| {
        let (x, worst) = levenberg_marquardt(random_start(seed, k, 5), &residual)?;
        if worst > 1e-11 || x[0].norm() < NONDEGENERATE || x[2].norm() < NONDEGENERATE {
            return None;
        }
        let g = ChangeB4::from_array(std::array::from_fn(|i| from_c(x[i], tol)));
        let pa_t = pa.map(|v| ApproxComplex { tol, ..*v });
        let (moved, _) = transport_b4(n, &pa_t, &g).ok()?;
        let res = moved.max_difference(&target, ApproxComplex::abs);
        let basis = b4_basis(n, &pa_t, &g).ok()?;
        (res < tol).then_some((k, g, basis, res))
    });
    match found {
        Some((k, g, basis, res)) => Ok(Witness {
            mode: WitnessMode::Approx { tol },
            shape: Shape::B4,
            generators: named(&B4_NAMES, &g.as_array()),
            matrix: matrix_strings(&basis),
            residual: res,
            tried: k + 1,
            change: WitnessChange::Approx(basis),
        }),
        None => Err(ClassifyError::BudgetExhausted { tried: restarts }),
    }
}

// --------------------------------------------------------------- dispatch

/// Family shape and parameters of an algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum Shaped<F> {
    A6(FamilyParamsA6<F>),
    B4(FamilyParamsB4<F>),
}

pub fn shape_of<F: Field>(a: &Algebra<F>) -> Option<Shaped<F>> {
    recognize_a6(a).map(Shaped::A6).or_else(|| recognize_b4(a).map(Shaped::B4))
}

/// Exact search between two algebras over the same F_p.
pub fn witness_exact(a: &Algebra<Fp>, b: &Algebra<Fp>, budget: Option<u64>) -> Result<Witness, ClassifyError> {
    if a.dim() != b.dim() || a.field() != b.field() {
        return Err(ClassifyError::ShapeMismatch);
    }
    match (shape_of(a), shape_of(b)) {
        (Some(Shaped::A6(pa)), Some(Shaped::A6(pb))) => witness_exact_a6(a.dim(), &pa, &pb, budget),
        (Some(Shaped::B4(pa)), Some(Shaped::B4(pb))) => witness_exact_b4(a.dim(), &pa, &pb, budget),
        (Some(_), Some(_)) => Err(ClassifyError::ShapeMismatch),
        _ => Err(ClassifyError::NotFamilyShaped),
    }
}

/// Numerical search between two algebras with approximate coefficients.
pub fn witness_approx(
    a: &Algebra<ApproxComplex>,
    b: &Algebra<ApproxComplex>,
    seed: u64,
    restarts: u64,
    tol: f64,
) -> Result<Witness, ClassifyError> {
    if a.dim() != b.dim() {
        return Err(ClassifyError::ShapeMismatch);
    }
    match (shape_of(a), shape_of(b)) {
        (Some(Shaped::A6(pa)), Some(Shaped::A6(pb))) => witness_approx_a6(a.dim(), &pa, &pb, seed, restarts, tol),
        (Some(Shaped::B4(pa)), Some(Shaped::B4(pb))) => witness_approx_b4(a.dim(), &pa, &pb, seed, restarts, tol),
        (Some(_), Some(_)) => Err(ClassifyError::ShapeMismatch),
        _ => Err(ClassifyError::NotFamilyShaped),
    }
}

pub fn to_fp(a: &Algebra<Gaussian>, p: u64) -> Result<Algebra<Fp>, ClassifyError> {
    a.map_scalars(&Fp::new(0, p), |g| reduce_gaussian(g, p).ok_or(ClassifyError::BadPrime { p }))
}

pub fn to_approx(a: &Algebra<Gaussian>, tol: f64) -> Algebra<ApproxComplex> {
    a.map_scalars(&ApproxComplex::new(0.0, 0.0, tol), |g| Ok::<_, ()>(ApproxComplex::from_gaussian(g, tol)))
        .expect("infallible")
}

/// Searches for an isomorphism between two family algebras over ℚ(i).
/// Exact mode reduces both modulo p first.
pub fn witness_isomorphism(
    a: &Algebra<Gaussian>,
    b: &Algebra<Gaussian>,
    cfg: &WitnessConfig,
) -> Result<Witness, ClassifyError> {
    match cfg.mode {
        WitnessMode::Exact { p } => witness_exact(&to_fp(a, p)?, &to_fp(b, p)?, cfg.budget),
        WitnessMode::Approx { tol } => {
            witness_approx(&to_approx(a, tol), &to_approx(b, tol), cfg.seed, cfg.budget.unwrap_or(10_000), tol)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyParamsA6;

    fn a6(v: [i64; 6]) -> Algebra<Gaussian> {
        family_a6(7, &FamilyParamsA6::from_ints(&Gaussian::zero(), v)).unwrap()
    }

    #[test]
    fn identity_is_found_exactly() {
        let a = a6([1, 0, 0, 0, 0, 0]);
        let w = witness_isomorphism(&a, &a, &WitnessConfig::exact(5)).unwrap();
        assert_eq!(w.residual, 0.0);
    }

    #[test]
    fn scaling_alpha4_exact_and_approx() {
        let a = a6([0, 0, 0, 3, 0, 0]);
        let b = a6([0, 0, 0, 1, 0, 0]);
        assert!(witness_isomorphism(&a, &b, &WitnessConfig::exact(5)).is_ok());
        let w = witness_isomorphism(&a, &b, &WitnessConfig::approx(7)).unwrap();
        assert!(w.residual < 1e-9);
    }

    #[test]
    fn separated_pair_exhausts() {
        let a = a6([0, 0, 0, 0, 1, 0]);
        let b = a6([1, 0, 0, 0, 1, 0]);
        let r = witness_isomorphism(&a, &b, &WitnessConfig::exact(5));
        assert!(matches!(r, Err(ClassifyError::BudgetExhausted { .. })));
    }

    #[test]
    fn b4_scaling() {
        let z = Gaussian::zero();
        let a = family_b4(7, &FamilyParamsB4::from_ints(&z, [0, 2, 0, 0])).unwrap();
        let b = family_b4(7, &FamilyParamsB4::from_ints(&z, [0, 1, 0, 0])).unwrap();
        assert!(witness_isomorphism(&a, &b, &WitnessConfig::exact(5)).is_ok());
        assert!(witness_isomorphism(&a, &b, &WitnessConfig::approx(1)).is_ok());
    }
}
