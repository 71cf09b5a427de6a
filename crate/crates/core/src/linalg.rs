//! Dense matrices over a [`Field`] with exact elimination.
//!
//! Pivoting is deterministic: columns are scanned left to right and the first
//! row (from the current one down) holding a nonzero entry becomes the pivot.

use std::fmt;

use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    zero: F,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, proto: &F) -> Self {
        let zero = proto.zero_like();
        Matrix { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, proto: &F) -> Self {
        let mut m = Matrix::zeros(n, n, proto);
        for k in 0..n {
            m.set(k, k, proto.one_like());
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: Vec<Vec<F>>, proto: &F) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(rows.len(), cols, proto);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, got: row.len() });
            }
            for (c, v) in row.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<F>], rows: usize, proto: &F) -> Result<Self, LinalgError> {
        let mut m = Matrix::zeros(rows, cols.len(), proto);
        for (c, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::DimensionMismatch { expected: rows, got: col.len() });
            }
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn proto(&self) -> &F {
        &self.zero
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows, &self.zero);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols, &self.zero);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).add(&a.mul(b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.zero.clone(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    pub fn pow(&self, e: u32) -> Result<Matrix<F>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let mut acc = Matrix::identity(self.rows, &self.zero);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Gauss–Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m.get(lead, c).inv().expect("pivot is nonzero");
            for k in c..m.cols {
                let v = m.get(lead, k).mul(&inv);
                m.set(lead, k, v);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let f = m.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let v = m.get(r, k).sub(&f.mul(m.get(lead, k)));
                    m.set(r, k, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// A basis of {v : M·v = 0}, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let Echelon { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.zero.clone(); self.cols];
                v[f] = self.zero.one_like();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = matrix.get(r, f).neg();
                }
                v
            })
            .collect()
    }

    /// One solution of M·x = rhs (free variables set to zero).
    pub fn solve(&self, rhs: &[F]) -> Result<Vec<F>, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, got: rhs.len() });
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1, &self.zero);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let Echelon { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix<F>, LinalgError> {
        let n = self.rows;
        if n != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: n, got: self.cols });
        }
        let mut aug = Matrix::zeros(n, 2 * n, &self.zero);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.zero.one_like());
        }
        let Echelon { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(n, n, &self.zero);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, matrix.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    pub fn map<G: Field>(&self, proto: &G, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), zero: proto.zero_like() }
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace stored as the nonzero rows of a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    pub basis: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub ambient: usize,
}

impl<F: Field> Subspace<F> {
    pub fn span(vectors: &[Vec<F>], ambient: usize, proto: &F) -> Self {
        if vectors.is_empty() {
            return Subspace { basis: Vec::new(), pivots: Vec::new(), ambient };
        }
        let m = Matrix::from_rows(vectors.to_vec(), proto).expect("vectors share the ambient length");
        let Echelon { matrix, pivots } = m.rref();
        let basis = (0..pivots.len()).map(|r| matrix.row(r).to_vec()).collect();
        Subspace { basis, pivots, ambient }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Membership by reduction against the echelon basis.
    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let f = w[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, b) in w.iter_mut().zip(row) {
                *x = x.sub(&f.mul(b));
            }
        }
        w.iter().all(Field::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Gaussian};

    fn gm(rows: &[&[i64]]) -> Matrix<Gaussian> {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| Gaussian::from_int(v)).collect()).collect(),
            &Gaussian::zero(),
        )
        .unwrap()
    }

    fn jordan(k: usize) -> Matrix<Gaussian> {
        let mut m = Matrix::zeros(k, k, &Gaussian::zero());
        for r in 0..k.saturating_sub(1) {
            m.set(r, r + 1, Gaussian::one());
        }
        m
    }

    #[test]
    fn jordan_block_rank() {
        for k in 1..8 {
            assert_eq!(jordan(k).rank(), k - 1);
        }
    }

    #[test]
    fn zero_kernel_is_everything() {
        let z = Matrix::zeros(3, 3, &Gaussian::zero());
        assert_eq!(z.kernel().len(), 3);
    }

    #[test]
    fn solve_and_inconsistent() {
        let m = gm(&[&[1, 2], &[2, 4]]);
        let x = m.solve(&[Gaussian::from_int(3), Gaussian::from_int(6)]).unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![Gaussian::from_int(3), Gaussian::from_int(6)]);
        assert_eq!(m.solve(&[Gaussian::from_int(3), Gaussian::from_int(7)]), Err(LinalgError::Inconsistent));
    }

    #[test]
    fn inverse_round_trip() {
        let m = gm(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3, &Gaussian::zero()));
        assert_eq!(gm(&[&[1, 2], &[2, 4]]).inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = gm(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.len(), 4 - m.rank());
        for v in k {
            assert!(m.mul_vec(&v).unwrap().iter().all(Gaussian::is_zero));
        }
    }

    #[test]
    fn subspace_membership() {
        let v = |a: &[i64]| a.iter().map(|&x| Fp::new(x, 7)).collect::<Vec<_>>();
        let s = Subspace::span(&[v(&[1, 2, 0]), v(&[0, 1, 1])], 3, &Fp::new(0, 7));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[1, 3, 1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
    }
}
