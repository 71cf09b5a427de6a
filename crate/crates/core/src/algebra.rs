//! Structure-constant algebras.
//!
//! Indices are 0-based internally; the JSON layer converts to the 1-based
//! numbering e_1, …, e_n.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{LinalgError, Matrix, Subspace};
use crate::scalar::{Field, FieldDescriptor};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("algebra is not nilpotent: A^{step} is still nonzero")]
    NotNilpotent { step: usize },
    #[error("basis change matrix is singular")]
    SingularMatrix,
    #[error("field mismatch: algebra over {algebra}, value over {value}")]
    FieldMismatch { algebra: FieldDescriptor, value: FieldDescriptor },
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
}

impl From<LinalgError> for AlgebraError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Singular => AlgebraError::SingularMatrix,
            LinalgError::DimensionMismatch { expected, got } => AlgebraError::DimensionMismatch { expected, got },
            LinalgError::Inconsistent => AlgebraError::SingularMatrix,
        }
    }
}

/// A sparse coefficient vector: (basis index, nonzero coefficient), sorted.
pub type SparseVec<F> = Vec<(usize, F)>;

#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F> {
    n: usize,
    zero: F,
    table: BTreeMap<(usize, usize), SparseVec<F>>,
}

/// A triple (i, j, k) with (e_i e_j) e_k ≠ e_i (e_j e_k).
#[derive(Clone, Debug, PartialEq)]
pub struct AssociativityViolation<F> {
    pub triple: (usize, usize, usize),
    pub residual: Vec<F>,
}

/// The chain A = A^1 ⊇ A^2 ⊇ … ⊇ A^k ⊋ A^{k+1} = 0.
#[derive(Clone, Debug)]
pub struct Filtration<F> {
    pub powers: Vec<Subspace<F>>,
    pub nilindex: usize,
}

impl<F: Field> Filtration<F> {
    /// A^i for 1 ≤ i; the zero space beyond the nilindex.
    pub fn power(&self, i: usize) -> Option<&Subspace<F>> {
        self.powers.get(i.checked_sub(1)?)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.powers.iter().map(Subspace::dim).collect()
    }

    /// Largest i with v ∈ A^i (v nonzero).
    pub fn degree_of(&self, v: &[F]) -> usize {
        self.powers.iter().take_while(|s| s.contains(v)).count()
    }
}

/// An invertible matrix P with its inverse; column j holds the new basis
/// vector e′_j in old coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange<F> {
    pub p: Matrix<F>,
    pub p_inv: Matrix<F>,
}

impl<F: Field> BasisChange<F> {
    pub fn new(p: Matrix<F>) -> Result<Self, AlgebraError> {
        let p_inv = p.inverse()?;
        Ok(BasisChange { p, p_inv })
    }

    pub fn identity(n: usize, proto: &F) -> Self {
        let p = Matrix::identity(n, proto);
        BasisChange { p_inv: p.clone(), p }
    }

    pub fn from_columns(cols: &[Vec<F>], proto: &F) -> Result<Self, AlgebraError> {
        let n = cols.len();
        BasisChange::new(Matrix::from_cols(cols, n, proto)?)
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }
}

impl<F: Field> Algebra<F> {
    /// The zero algebra of dimension n over the field of `proto`.
    pub fn zero_algebra(n: usize, proto: &F) -> Self {
        Algebra { n, zero: proto.zero_like(), table: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldDescriptor {
        self.zero.descriptor()
    }

    /// A zero element of the coefficient field.
    pub fn proto(&self) -> &F {
        &self.zero
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![self.zero.clone(); self.n];
        v[i] = self.zero.one_like();
        v
    }

    pub fn zero_vector(&self) -> Vec<F> {
        vec![self.zero.clone(); self.n]
    }

    fn check_index(&self, i: usize) -> Result<(), AlgebraError> {
        if i < self.n {
            Ok(())
        } else {
            Err(AlgebraError::IndexOutOfRange { index: i, n: self.n })
        }
    }

    /// Sets e_i·e_j = Σ c_k e_k, replacing any previous value.
    pub fn set_product(&mut self, i: usize, j: usize, coeffs: SparseVec<F>) -> Result<(), AlgebraError> {
        self.check_index(i)?;
        self.check_index(j)?;
        let mut dense: BTreeMap<usize, F> = BTreeMap::new();
        for (k, c) in coeffs {
            self.check_index(k)?;
            let e = dense.entry(k).or_insert_with(|| self.zero.clone());
            *e = e.add(&c);
        }
        let sparse: SparseVec<F> = dense.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if sparse.is_empty() {
            self.table.remove(&(i, j));
        } else {
            self.table.insert((i, j), sparse);
        }
        Ok(())
    }

    /// Adds c·e_k to e_i·e_j.
    pub fn add_to_product(&mut self, i: usize, j: usize, k: usize, c: F) -> Result<(), AlgebraError> {
        let mut cur = self.product(i, j).to_vec();
        cur.push((k, c));
        self.set_product(i, j, cur)
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, F)] {
        self.table.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> F {
        self.product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| self.zero.clone(), |(_, c)| c.clone())
    }

    /// Nonzero entries ((i, j), coefficients) in (i, j) order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec<F>)> {
        self.table.iter()
    }

    fn check_vector(&self, v: &[F]) -> Result<(), AlgebraError> {
        if v.len() != self.n {
            return Err(AlgebraError::DimensionMismatch { expected: self.n, got: v.len() });
        }
        let field = self.field();
        if let Some(bad) = v.iter().map(Field::descriptor).find(|d| *d != field) {
            return Err(AlgebraError::FieldMismatch { algebra: field, value: bad });
        }
        Ok(())
    }

    /// x·y for coefficient vectors, with dimension and field checks.
    pub fn multiply(&self, x: &[F], y: &[F]) -> Result<Vec<F>, AlgebraError> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = self.zero_vector();
        for (&(i, j), prod) in &self.table {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let s = x[i].mul(&y[j]);
            for (k, c) in prod {
                out[*k] = out[*k].add(&s.mul(c));
            }
        }
        out
    }

    /// (e_i e_j)-row applied on the right: Σ_m c_ij^m e_m e_k, accumulated into `out`.
    fn accumulate_left(&self, prod: &[(usize, F)], k: usize, out: &mut [F], sign: bool) {
        for (m, c) in prod {
            for (l, d) in self.product(*m, k) {
                let t = c.mul(d);
                out[*l] = if sign { out[*l].add(&t) } else { out[*l].sub(&t) };
            }
        }
    }

    fn accumulate_right(&self, i: usize, prod: &[(usize, F)], out: &mut [F]) {
        for (m, c) in prod {
            for (l, d) in self.product(i, *m) {
                out[*l] = out[*l].sub(&c.mul(d));
            }
        }
    }

    /// All failing triples, ordered lexicographically by (i, j, k).
    pub fn verify_associativity(&self) -> Vec<AssociativityViolation<F>> {
        let n = self.n;
        (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut found = Vec::new();
                for j in 0..n {
                    let pij = self.product(i, j);
                    for k in 0..n {
                        let pjk = self.product(j, k);
                        if pij.is_empty() && pjk.is_empty() {
                            continue;
                        }
                        let mut r = self.zero_vector();
                        self.accumulate_left(pij, k, &mut r, true);
                        self.accumulate_right(i, pjk, &mut r);
                        if r.iter().any(|c| !c.is_zero()) {
                            found.push(AssociativityViolation { triple: (i, j, k), residual: r });
                        }
                    }
                }
                found
            })
            .collect()
    }

    pub fn is_associative(&self) -> bool {
        self.verify_associativity().is_empty()
    }

    /// A^1 ⊇ A^2 ⊇ … with A^{i+1} = span{x·e_j : x ∈ basis(A^i)}.
    pub fn power_filtration(&self) -> Result<Filtration<F>, AlgebraError> {
        let n = self.n;
        let full: Vec<Vec<F>> = (0..n).map(|i| self.basis_vector(i)).collect();
        let mut powers = vec![Subspace::span(&full, n, &self.zero)];
        for step in 2..=n + 2 {
            let prev = powers.last().expect("nonempty");
            if prev.is_zero() {
                powers.pop();
                let nilindex = powers.len();
                return Ok(Filtration { powers, nilindex });
            }
            if step == n + 2 {
                break;
            }
            let products: Vec<Vec<F>> = prev
                .basis
                .iter()
                .flat_map(|x| (0..n).map(move |j| (x, j)))
                .map(|(x, j)| self.mul_unchecked(x, &self.basis_vector(j)))
                .filter(|v| v.iter().any(|c| !c.is_zero()))
                .collect();
            powers.push(Subspace::span(&products, n, &self.zero));
        }
        Err(AlgebraError::NotNilpotent { step: n + 1 })
    }

    /// Matrix of y ↦ x·y; column j is x·e_j.
    pub fn left_mult_matrix(&self, x: &[F]) -> Result<Matrix<F>, AlgebraError> {
        self.check_vector(x)?;
        let cols: Vec<Vec<F>> = (0..self.n).map(|j| self.mul_unchecked(x, &self.basis_vector(j))).collect();
        Ok(Matrix::from_cols(&cols, self.n, &self.zero)?)
    }

    /// The same product written in the basis e′_j = Σ_i P_ij e_i.
    pub fn apply_basis_change(&self, change: &BasisChange<F>) -> Result<Algebra<F>, AlgebraError> {
        let n = self.n;
        if change.dim() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, got: change.dim() });
        }
        let cols: Vec<Vec<F>> = (0..n).map(|j| change.p.col(j)).collect();
        let rows: Vec<Vec<((usize, usize), SparseVec<F>)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .filter_map(|j| {
                        let prod = self.mul_unchecked(&cols[i], &cols[j]);
                        if prod.iter().all(Field::is_zero) {
                            return None;
                        }
                        let c = change.p_inv.mul_vec(&prod).expect("square");
                        let sparse: SparseVec<F> =
                            c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                        (!sparse.is_empty()).then_some(((i, j), sparse))
                    })
                    .collect()
            })
            .collect();
        let table = rows.into_iter().flatten().collect();
        let out = Algebra { n, zero: self.zero.clone(), table };
        debug_assert!(
            !self.field().is_exact() || !self.is_associative() || out.is_associative(),
            "basis change broke associativity"
        );
        Ok(out)
    }

    /// Coefficient-wise image under a field map; zero images are dropped.
    pub fn map_scalars<G: Field, E>(&self, proto: &G, f: impl Fn(&F) -> Result<G, E>) -> Result<Algebra<G>, E> {
        let mut table = BTreeMap::new();
        for (&key, prod) in &self.table {
            let mut sparse = Vec::new();
            for (k, c) in prod {
                let v = f(c)?;
                if !v.is_zero() {
                    sparse.push((*k, v));
                }
            }
            if !sparse.is_empty() {
                table.insert(key, sparse);
            }
        }
        Ok(Algebra { n: self.n, zero: proto.zero_like(), table })
    }

    /// Largest absolute coefficient difference, for approximate comparisons.
    pub fn max_difference(&self, other: &Algebra<F>, abs: impl Fn(&F) -> f64) -> f64 {
        let keys: std::collections::BTreeSet<_> = self.table.keys().chain(other.table.keys()).collect();
        let mut worst = 0.0f64;
        for &(i, j) in keys {
            for k in 0..self.n {
                let d = self.coeff(i, j, k).sub(&other.coeff(i, j, k));
                worst = worst.max(abs(&d));
            }
        }
        worst
    }

    /// Number of nonzero structure constants.
    pub fn nnz(&self) -> usize {
        self.table.values().map(Vec::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gaussian;

    fn g(v: i64) -> Gaussian {
        Gaussian::from_int(v)
    }

    fn null_filiform(n: usize) -> Algebra<Gaussian> {
        let mut a = Algebra::zero_algebra(n, &Gaussian::zero());
        for i in 0..n {
            for j in 0..n {
                if i + j + 1 < n {
                    a.set_product(i, j, vec![(i + j + 1, g(1))]).unwrap();
                }
            }
        }
        a
    }

    #[test]
    fn zero_algebra_facts() {
        let a = Algebra::zero_algebra(4, &Gaussian::zero());
        assert!(a.is_associative());
        assert_eq!(a.power_filtration().unwrap().nilindex, 1);
        let x = a.basis_vector(2);
        assert!(a.left_mult_matrix(&x).unwrap().is_zero());
    }

    #[test]
    fn null_filiform_nilindex() {
        for n in 1..8 {
            let f = null_filiform(n).power_filtration().unwrap();
            assert_eq!(f.nilindex, n);
            assert_eq!(f.dims(), (1..=n).rev().collect::<Vec<_>>());
        }
    }

    #[test]
    fn not_nilpotent_detected() {
        let mut a = Algebra::zero_algebra(1, &Gaussian::zero());
        a.set_product(0, 0, vec![(0, g(1))]).unwrap();
        assert!(matches!(a.power_filtration(), Err(AlgebraError::NotNilpotent { .. })));
    }

    #[test]
    fn identity_change_keeps_table() {
        let a = null_filiform(5);
        let b = a.apply_basis_change(&BasisChange::identity(5, &Gaussian::zero())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scalar_change_scales_constants() {
        // e′ = λe: e′_i e′_j = λ² e_{i+j} = λ e′_{i+j}
        let a = null_filiform(5);
        let lambda = g(3);
        let mut p = Matrix::zeros(5, 5, &Gaussian::zero());
        for k in 0..5 {
            p.set(k, k, lambda.clone());
        }
        let b = a.apply_basis_change(&BasisChange::new(p).unwrap()).unwrap();
        for (&(i, j), prod) in a.entries() {
            for (k, c) in prod {
                assert_eq!(b.coeff(i, j, *k), c * &lambda);
            }
        }
        assert!(b.is_associative());
    }

    #[test]
    fn multiply_is_checked() {
        let a = null_filiform(3);
        assert!(matches!(a.multiply(&[g(1)], &[g(1)]), Err(AlgebraError::DimensionMismatch { .. })));
        let zero = a.zero_vector();
        assert_eq!(a.multiply(&zero, &a.basis_vector(0)).unwrap(), zero);
    }

    #[test]
    fn violation_is_reported() {
        let mut a = null_filiform(4);
        a.set_product(1, 0, vec![]).unwrap();
        let v = a.verify_associativity();
        assert!(!v.is_empty());
        let triples: Vec<_> = v.iter().map(|x| x.triple).collect();
        let mut sorted = triples.clone();
        sorted.sort();
        assert_eq!(triples, sorted);
    }
}
