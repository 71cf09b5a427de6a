//! Characteristic sequences, associated graded algebras and natural gradings.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, BasisChange, Filtration};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GradingError {
    #[error("matrix is not nilpotent")]
    NotNilpotentMatrix,
    #[error("element lies in A^2")]
    ElementInSquare,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A weakly decreasing partition of n, compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CharacteristicSequence(pub Vec<usize>);

impl CharacteristicSequence {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl Ord for CharacteristicSequence {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len()).reverse()
    }
}

impl PartialOrd for CharacteristicSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CharacteristicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Block sizes of a nilpotent matrix from the ranks of its powers.
pub fn jordan_block_sizes<F: Field>(m: &Matrix<F>) -> Result<CharacteristicSequence, GradingError> {
    let n = m.rows();
    if n != m.cols() {
        return Err(GradingError::NotNilpotentMatrix);
    }
    // ranks[s] = rank(N^s)
    let mut ranks = vec![n];
    let mut power = Matrix::identity(n, m.proto());
    while *ranks.last().expect("nonempty") > 0 {
        if ranks.len() > n {
            return Err(GradingError::NotNilpotentMatrix);
        }
        power = power.mul(m).expect("square");
        let r = power.rank();
        if r == *ranks.last().expect("nonempty") {
            return Err(GradingError::NotNilpotentMatrix);
        }
        ranks.push(r);
    }
    // blocks of size ≥ s: ranks[s-1] − ranks[s]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::with_capacity(n);
    for s in (1..=at_least.len()).rev() {
        let exactly = at_least[s - 1] - at_least.get(s).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(s, exactly));
    }
    Ok(CharacteristicSequence(parts))
}

/// C(x): Jordan type of L_x, for x outside A².
pub fn characteristic_sequence_at<F: Field>(
    a: &Algebra<F>,
    x: &[F],
) -> Result<CharacteristicSequence, GradingError> {
    let filtration = a.power_filtration()?;
    characteristic_sequence_at_with(a, &filtration, x)
}

fn characteristic_sequence_at_with<F: Field>(
    a: &Algebra<F>,
    filtration: &Filtration<F>,
    x: &[F],
) -> Result<CharacteristicSequence, GradingError> {
    if filtration.power(2).is_some_and(|sq| sq.contains(x)) {
        return Err(GradingError::ElementInSquare);
    }
    jordan_block_sizes(&a.left_mult_matrix(x)?)
}

/// A witnessed lower bound for C(A).
#[derive(Clone, Debug)]
pub struct CharacteristicReport<F> {
    pub sequence: CharacteristicSequence,
    pub witness: Vec<F>,
    pub candidates: usize,
}

/// Maximum of C(x) over basis vectors outside A², their pairwise sums and
/// `samples` seeded random vectors with Gaussian-integer coordinates in [−3, 3].
pub fn characteristic_sequence<F: Field>(
    a: &Algebra<F>,
    samples: usize,
    seed: u64,
) -> Result<CharacteristicReport<F>, GradingError> {
    let n = a.dim();
    let filtration = a.power_filtration()?;
    let square = filtration.power(2).cloned().unwrap_or_else(|| Subspace::span(&[], n, a.proto()));
    let outside: Vec<usize> = (0..n).filter(|&i| !square.contains(&a.basis_vector(i))).collect();

    let mut candidates: Vec<Vec<F>> = outside.iter().map(|&i| a.basis_vector(i)).collect();
    for (s, &i) in outside.iter().enumerate() {
        for &j in &outside[s + 1..] {
            let mut v = a.basis_vector(i);
            v[j] = v[j].add(&a.proto().one_like());
            candidates.push(v);
        }
    }
    candidates.extend((0..samples).map(|k| random_vector(a.proto(), n, seed, k as u64)));
    let total = candidates.len();

    let results: Vec<Option<CharacteristicSequence>> = candidates
        .par_iter()
        .map(|x| match characteristic_sequence_at_with(a, &filtration, x) {
            Ok(c) => Some(c),
            Err(_) => None,
        })
        .collect();
    // first maximum in candidate order keeps the witness deterministic
    let mut best: Option<(CharacteristicSequence, usize)> = None;
    for (idx, r) in results.into_iter().enumerate() {
        if let Some(c) = r {
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                best = Some((c, idx));
            }
        }
    }
    match best {
        Some((sequence, idx)) => {
            Ok(CharacteristicReport { sequence, witness: candidates[idx].clone(), candidates: total })
        }
        // A = A² only for the zero space
        None => Ok(CharacteristicReport {
            sequence: CharacteristicSequence(Vec::new()),
            witness: a.zero_vector(),
            candidates: total,
        }),
    }
}

/// Random vector with Gaussian-integer entries in [−3, 3] (real ones if the
/// field has no i); stream `k` of `seed`.
pub fn random_vector<F: Field>(proto: &F, n: usize, seed: u64, k: u64) -> Vec<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    let i = proto.imag_unit_like();
    (0..n)
        .map(|_| {
            let re = proto.from_int_like(rng.random_range(-3..=3));
            match &i {
                Some(i) => re.add(&i.mul(&proto.from_int_like(rng.random_range(-3..=3)))),
                None => re,
            }
        })
        .collect()
}

/// Degrees per basis vector and the basis indices of each component.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gradation {
    /// deg(e_i) for every basis index.
    pub degrees: Vec<usize>,
    /// components[d-1] lists the basis indices of degree d.
    pub components: Vec<Vec<usize>>,
}

impl Gradation {
    pub fn from_degrees(degrees: Vec<usize>) -> Self {
        let top = degrees.iter().copied().max().unwrap_or(0);
        let components = (1..=top).map(|d| (0..degrees.len()).filter(|&i| degrees[i] == d).collect()).collect();
        Gradation { degrees, components }
    }

    /// Products that violate c_ij^k ≠ 0 ⇒ deg k = deg i + deg j.
    pub fn inhomogeneous_products<F: Field>(&self, a: &Algebra<F>) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for (&(i, j), prod) in a.entries() {
            for (k, _) in prod {
                if self.degrees[*k] != self.degrees[i] + self.degrees[j] {
                    bad.push((i, j, *k));
                }
            }
        }
        bad
    }

    pub fn is_homogeneous<F: Field>(&self, a: &Algebra<F>) -> bool {
        self.inhomogeneous_products(a).is_empty()
    }

    /// A_i·A_j ⊆ A_{i+j}, checked on all pairs of component basis vectors.
    pub fn components_multiply_correctly<F: Field>(&self, a: &Algebra<F>) -> bool {
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                let prod = a.mul_unchecked(&a.basis_vector(i), &a.basis_vector(j));
                let want = self.degrees[i] + self.degrees[j];
                for (k, c) in prod.iter().enumerate() {
                    if !c.is_zero() && self.degrees[k] != want {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Echelon representatives of A^i / A^{i+1} for every i, as (vector, degree),
/// sorted by pivot column.
fn adapted_basis<F: Field>(filtration: &Filtration<F>) -> Vec<(Vec<F>, usize, usize)> {
    let mut reps = Vec::new();
    for (idx, space) in filtration.powers.iter().enumerate() {
        let next_pivots: &[usize] = filtration.powers.get(idx + 1).map_or(&[], |s| &s.pivots);
        for (row, &p) in space.basis.iter().zip(&space.pivots) {
            if !next_pivots.contains(&p) {
                reps.push((row.clone(), idx + 1, p));
            }
        }
    }
    reps.sort_by_key(|&(_, d, p)| (p, d));
    reps
}

/// gr(A) in a filtration-adapted basis, with that basis as a change of basis.
#[derive(Clone, Debug)]
pub struct AssociatedGraded<F> {
    pub algebra: Algebra<F>,
    pub gradation: Gradation,
    pub basis: BasisChange<F>,
}

pub fn associated_graded<F: Field>(a: &Algebra<F>) -> Result<AssociatedGraded<F>, GradingError> {
    let filtration = a.power_filtration()?;
    let reps = adapted_basis(&filtration);
    let cols: Vec<Vec<F>> = reps.iter().map(|(v, _, _)| v.clone()).collect();
    let basis = BasisChange::from_columns(&cols, a.proto())?;
    let degrees: Vec<usize> = reps.iter().map(|&(_, d, _)| d).collect();
    let moved = a.apply_basis_change(&basis)?;
    let mut gr = Algebra::zero_algebra(a.dim(), a.proto());
    for (&(i, j), prod) in moved.entries() {
        let want = degrees[i] + degrees[j];
        let kept: Vec<(usize, F)> = prod.iter().filter(|(k, _)| degrees[*k] == want).cloned().collect();
        gr.set_product(i, j, kept)?;
    }
    Ok(AssociatedGraded { algebra: gr, gradation: Gradation::from_degrees(degrees), basis })
}

/// Outcome of the natural-grading test.
#[derive(Clone, Debug)]
pub struct NaturalGrading<F> {
    pub graded: bool,
    /// Degrees of the witness basis vectors when graded.
    pub gradation: Option<Gradation>,
    /// Columns: a homogeneous basis in the original coordinates. In this
    /// basis the product is graded and equals gr(A) degree by degree.
    pub witness: Option<BasisChange<F>>,
    pub note: String,
}

/// Tests whether A ≅ gr(A).
///
/// The degree-1 candidate space is spanned by the echelon representatives of
/// A/A²; the degree-d space is spanned by left-normed products of d of them.
/// If these spaces add up to A directly, they form a grading compatible with
/// the filtration and the basis they provide is returned. A `false` answer
/// means this complement did not work; it is not a proof that no other
/// complement does.
pub fn is_naturally_graded<F: Field>(a: &Algebra<F>) -> Result<NaturalGrading<F>, GradingError> {
    let n = a.dim();
    let filtration = a.power_filtration()?;
    let reps = adapted_basis(&filtration);
    let v1: Vec<Vec<F>> = reps.iter().filter(|(_, d, _)| *d == 1).map(|(v, _, _)| v.clone()).collect();

    let mut layers: Vec<Vec<Vec<F>>> = vec![v1.clone()];
    let mut total = v1.len();
    while total < n {
        let prev = layers.last().expect("nonempty");
        let prods: Vec<Vec<F>> = prev
            .iter()
            .flat_map(|u| v1.iter().map(move |w| (u, w)))
            .map(|(u, w)| a.mul_unchecked(u, w))
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .collect();
        let layer = Subspace::span(&prods, n, a.proto());
        if layer.is_zero() {
            break;
        }
        total += layer.dim();
        layers.push(layer.basis);
    }
    let mut cols: Vec<(Vec<F>, usize, usize)> = Vec::new();
    for (d, layer) in layers.iter().enumerate() {
        for v in layer {
            let pivot = v.iter().position(|c| !c.is_zero()).unwrap_or(0);
            cols.push((v.clone(), d + 1, pivot));
        }
    }
    let failed = |note: &str| NaturalGrading { graded: false, gradation: None, witness: None, note: note.to_string() };
    if cols.len() != n {
        return Ok(failed("degree layers generated by A/A^2 do not add up to dim A"));
    }
    cols.sort_by_key(|&(_, d, p)| (p, d));
    let vectors: Vec<Vec<F>> = cols.iter().map(|(v, _, _)| v.clone()).collect();
    let Ok(witness) = BasisChange::from_columns(&vectors, a.proto()) else {
        return Ok(failed("degree layers generated by A/A^2 are not independent"));
    };
    let gradation = Gradation::from_degrees(cols.iter().map(|&(_, d, _)| d).collect());
    let moved = a.apply_basis_change(&witness)?;
    if !gradation.is_homogeneous(&moved) {
        return Ok(failed("product is not homogeneous in the generated basis"));
    }
    // layer dimensions must match the filtration quotients
    let dims = filtration.dims();
    for (d, comp) in gradation.components.iter().enumerate() {
        let quotient = dims[d] - dims.get(d + 1).copied().unwrap_or(0);
        if comp.len() != quotient {
            return Ok(failed("layer dimensions differ from dim A^i/A^{i+1}"));
        }
    }
    Ok(NaturalGrading {
        graded: true,
        gradation: Some(gradation),
        witness: Some(witness),
        note: "homogeneous basis generated by degree-1 representatives".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gaussian;

    fn jordan_sum(sizes: &[usize]) -> Matrix<Gaussian> {
        let n: usize = sizes.iter().sum();
        let mut m = Matrix::zeros(n, n, &Gaussian::zero());
        let mut off = 0;
        for &s in sizes {
            for r in 0..s - 1 {
                m.set(off + r + 1, off + r, Gaussian::one());
            }
            off += s;
        }
        m
    }

    #[test]
    fn blocks_of_simple_matrices() {
        let z = Matrix::zeros(4, 4, &Gaussian::zero());
        assert_eq!(jordan_block_sizes(&z).unwrap().0, vec![1, 1, 1, 1]);
        assert_eq!(jordan_block_sizes(&jordan_sum(&[5])).unwrap().0, vec![5]);
        assert_eq!(jordan_block_sizes(&jordan_sum(&[2, 4, 1])).unwrap().0, vec![4, 2, 1]);
    }

    #[test]
    fn non_nilpotent_rejected() {
        let id = Matrix::identity(3, &Gaussian::zero());
        assert_eq!(jordan_block_sizes(&id), Err(GradingError::NotNilpotentMatrix));
    }

    #[test]
    fn lexicographic_order() {
        let a = CharacteristicSequence(vec![4, 2, 1]);
        let b = CharacteristicSequence(vec![4, 1, 1, 1]);
        let c = CharacteristicSequence(vec![5, 1, 1]);
        assert!(a > b);
        assert!(c > a);
        assert_eq!(a.cmp(&a), Ordering::Equal);
    }

    #[test]
    fn zero_algebra_sequence() {
        let a = Algebra::zero_algebra(4, &Gaussian::zero());
        let r = characteristic_sequence(&a, 5, 1).unwrap();
        assert_eq!(r.sequence.0, vec![1, 1, 1, 1]);
    }

    #[test]
    fn random_vectors_are_reproducible() {
        let p = Gaussian::zero();
        assert_eq!(random_vector(&p, 6, 9, 2), random_vector(&p, 6, 9, 2));
        assert_ne!(random_vector(&p, 6, 9, 2), random_vector(&p, 6, 9, 3));
    }
}
