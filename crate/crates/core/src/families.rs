//! Multiplication tables of the families and of the classification lists.
//!
//! Basis indices are 0-based here: e_k is index k−1, and the three extra
//! vectors e_{n−2}, e_{n−1}, e_n are called x, y, z.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::grading::Gradation;
use crate::scalar::Field;

pub const MIN_DIM: usize = 7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("dimension {n} is below the minimum {min}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("(β2, β4) = (0, 0) does not produce e_n in degree 2")]
    DegenerateParams,
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("constructed table is not associative at {0:?}")]
    NotAssociative((usize, usize, usize)),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Indices of x = e_{n−2}, y = e_{n−1}, z = e_n.
pub fn xyz(n: usize) -> (usize, usize, usize) {
    (n - 3, n - 2, n - 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyParamsA6<F> {
    pub alpha: [F; 6],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyParamsB4<F> {
    pub beta: [F; 4],
}

impl<F: Field> FamilyParamsA6<F> {
    pub fn new(alpha: [F; 6]) -> Self {
        FamilyParamsA6 { alpha }
    }

    pub fn from_ints(proto: &F, v: [i64; 6]) -> Self {
        FamilyParamsA6 { alpha: v.map(|t| proto.from_int_like(t)) }
    }

    /// α_k for k = 1..=6.
    pub fn a(&self, k: usize) -> &F {
        &self.alpha[k - 1]
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> FamilyParamsA6<G> {
        FamilyParamsA6 { alpha: std::array::from_fn(|i| f(&self.alpha[i])) }
    }
}

impl<F: Field> FamilyParamsB4<F> {
    pub fn new(beta: [F; 4]) -> Self {
        FamilyParamsB4 { beta }
    }

    pub fn from_ints(proto: &F, v: [i64; 4]) -> Self {
        FamilyParamsB4 { beta: v.map(|t| proto.from_int_like(t)) }
    }

    /// β_k for k = 1..=4.
    pub fn b(&self, k: usize) -> &F {
        &self.beta[k - 1]
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> FamilyParamsB4<G> {
        FamilyParamsB4 { beta: std::array::from_fn(|i| f(&self.beta[i])) }
    }
}

fn tuple_label<F: fmt::Display>(vals: &[F]) -> String {
    let parts: Vec<String> = vals.iter().map(ToString::to_string).collect();
    format!("A({})", parts.join(","))
}

impl<F: Field> fmt::Display for FamilyParamsA6<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&tuple_label(&self.alpha))
    }
}

impl<F: Field> fmt::Display for FamilyParamsB4<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&tuple_label(&self.beta))
    }
}

fn check_dim(n: usize, min: usize) -> Result<(), FamilyError> {
    if n < min {
        Err(FamilyError::DimensionTooSmall { n, min })
    } else {
        Ok(())
    }
}

fn verified<F: Field>(a: Algebra<F>) -> Result<Algebra<F>, FamilyError> {
    match a.verify_associativity().first() {
        Some(v) => Err(FamilyError::NotAssociative(v.triple)),
        None => Ok(a),
    }
}

/// e_i·e_j = e_{i+j} for i + j ≤ len on the first `len` basis vectors.
fn chain<F: Field>(a: &mut Algebra<F>, len: usize) -> Result<(), AlgebraError> {
    let one = a.proto().one_like();
    for i in 1..len {
        for j in 1..=len - i {
            a.set_product(i - 1, j - 1, vec![(i + j - 1, one.clone())])?;
        }
    }
    Ok(())
}

pub fn null_filiform<F: Field>(n: usize, proto: &F) -> Result<Algebra<F>, FamilyError> {
    check_dim(n, 1)?;
    let mut a = Algebra::zero_algebra(n, proto);
    chain(&mut a, n)?;
    verified(a)
}

pub fn family_a6<F: Field>(n: usize, p: &FamilyParamsA6<F>) -> Result<Algebra<F>, FamilyError> {
    check_dim(n, MIN_DIM)?;
    let proto = p.alpha[0].zero_like();
    let mut a = Algebra::zero_algebra(n, &proto);
    chain(&mut a, n - 3)?;
    let (x, y, z) = xyz(n);
    let entries = [(0, x, proto.one_like()), (x, 0, p.a(1).clone()), (x, x, p.a(2).clone())];
    let more = [(x, z, p.a(3).clone()), (z, 0, p.a(4).clone()), (z, x, p.a(5).clone()), (z, z, p.a(6).clone())];
    for (i, j, c) in entries.into_iter().chain(more) {
        a.set_product(i, j, vec![(y, c)])?;
    }
    verified(a)
}

pub fn family_b4<F: Field>(n: usize, p: &FamilyParamsB4<F>) -> Result<Algebra<F>, FamilyError> {
    check_dim(n, MIN_DIM)?;
    if p.b(2).is_zero() && p.b(4).is_zero() {
        return Err(FamilyError::DegenerateParams);
    }
    let proto = p.beta[0].zero_like();
    let mut a = Algebra::zero_algebra(n, &proto);
    chain(&mut a, n - 3)?;
    let (x, y, z) = xyz(n);
    a.set_product(0, x, vec![(y, proto.one_like())])?;
    a.set_product(x, 0, vec![(y, p.b(1).clone()), (z, p.b(2).clone())])?;
    a.set_product(x, x, vec![(y, p.b(3).clone()), (z, p.b(4).clone())])?;
    verified(a)
}

/// Degrees of the natural grading of family a6: e_k ↦ k, x, z ↦ 1, y ↦ 2.
pub fn a6_gradation(n: usize) -> Gradation {
    let mut d: Vec<usize> = (1..=n).collect();
    let (x, y, z) = xyz(n);
    d[x] = 1;
    d[y] = 2;
    d[z] = 1;
    Gradation::from_degrees(d)
}

/// Degrees for family b4: as for a6 but z ↦ 2.
pub fn b4_gradation(n: usize) -> Gradation {
    let mut g = a6_gradation(n).degrees;
    g[n - 1] = 2;
    Gradation::from_degrees(g)
}

/// Reads α off a table that has exactly the shape of family a6.
pub fn recognize_a6<F: Field>(a: &Algebra<F>) -> Option<FamilyParamsA6<F>> {
    let n = a.dim();
    if n < MIN_DIM {
        return None;
    }
    let (x, y, z) = xyz(n);
    let pairs = [(x, 0), (x, x), (x, z), (z, 0), (z, x), (z, z)];
    let p = FamilyParamsA6 { alpha: pairs.map(|(i, j)| a.coeff(i, j, y)) };
    (family_a6(n, &p).ok()? == *a).then_some(p)
}

/// Reads β off a table that has exactly the shape of family b4.
pub fn recognize_b4<F: Field>(a: &Algebra<F>) -> Option<FamilyParamsB4<F>> {
    let n = a.dim();
    if n < MIN_DIM {
        return None;
    }
    let (x, y, z) = xyz(n);
    let p = FamilyParamsB4 { beta: [a.coeff(x, 0, y), a.coeff(x, 0, z), a.coeff(x, x, y), a.coeff(x, x, z)] };
    (family_b4(n, &p).ok()? == *a).then_some(p)
}

// ------------------------------------------------------------ representatives

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// The sixteen representatives of the α-family.
    Teo,
    /// The four representatives of the β-family.
    Teo1,
    /// Orbits of the α-family that the printed list does not cover.
    Extra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl ParamKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ParamKind::Alpha => "α",
            ParamKind::Beta => "β",
            ParamKind::Gamma => "γ",
            ParamKind::Delta => "δ",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuousParam<F> {
    pub kind: ParamKind,
    pub value: F,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepresentativeId<F> {
    pub theorem: Theorem,
    /// 1-based position in the list.
    pub index: usize,
    pub param: Option<ContinuousParam<F>>,
}

/// Coordinates of a list entry: a fixed integer, i, or an expression in the
/// continuous parameter t.
#[derive(Clone, Copy, Debug)]
enum Coord {
    Int(i64),
    I,
    T,
    /// t(1 − t)
    TOneMinusT,
}

pub struct ListEntry {
    pub theorem: Theorem,
    pub index: usize,
    /// Label as printed, with the parameter symbol.
    pub label: &'static str,
    pub kind: Option<ParamKind>,
    coords: &'static [Coord],
}

use Coord::{Int as N, I, T, TOneMinusT as TT};

/// All entries in list order. Entry 5 of the α-list is stored with the
/// tuple its derivation produces; the printed tuple is in `TEO_LISTED_ENTRY5`.
pub static LIST: &[ListEntry] = &[
    ListEntry { theorem: Theorem::Teo, index: 1, label: "A(α,0,0,0,0,0)", kind: Some(ParamKind::Alpha), coords: &[T, N(0), N(0), N(0), N(0), N(0)] },
    ListEntry { theorem: Theorem::Teo, index: 2, label: "A(0,0,0,1,0,0)", kind: None, coords: &[N(0), N(0), N(0), N(1), N(0), N(0)] },
    ListEntry { theorem: Theorem::Teo, index: 3, label: "A(1,1,0,0,0,0)", kind: None, coords: &[N(1), N(1), N(0), N(0), N(0), N(0)] },
    ListEntry { theorem: Theorem::Teo, index: 4, label: "A(0,1,0,0,0,0)", kind: None, coords: &[N(0), N(1), N(0), N(0), N(0), N(0)] },
    ListEntry { theorem: Theorem::Teo, index: 5, label: "A(0,1,0,1,0,0)", kind: None, coords: &[N(0), N(1), N(0), N(1), N(0), N(0)] },
    ListEntry { theorem: Theorem::Teo, index: 6, label: "A(1,0,0,1,0,1)", kind: None, coords: &[N(1), N(0), N(0), N(1), N(0), N(1)] },
    ListEntry { theorem: Theorem::Teo, index: 7, label: "A(β,0,0,0,0,1)", kind: Some(ParamKind::Beta), coords: &[T, N(0), N(0), N(0), N(0), N(1)] },
    ListEntry { theorem: Theorem::Teo, index: 8, label: "A(1,1,0,0,0,1)", kind: None, coords: &[N(1), N(1), N(0), N(0), N(0), N(1)] },
    ListEntry { theorem: Theorem::Teo, index: 9, label: "A(0,1,0,i,0,1)", kind: None, coords: &[N(0), N(1), N(0), I, N(0), N(1)] },
    ListEntry { theorem: Theorem::Teo, index: 10, label: "A(0,1,0,0,0,1)", kind: None, coords: &[N(0), N(1), N(0), N(0), N(0), N(1)] },
    ListEntry { theorem: Theorem::Teo, index: 11, label: "A(0,0,0,0,1,0)", kind: None, coords: &[N(0), N(0), N(0), N(0), N(1), N(0)] },
    ListEntry { theorem: Theorem::Teo, index: 12, label: "A(1,0,0,0,1,0)", kind: None, coords: &[N(1), N(0), N(0), N(0), N(1), N(0)] },
    ListEntry { theorem: Theorem::Teo, index: 13, label: "A(0,0,0,1,1,1)", kind: None, coords: &[N(0), N(0), N(0), N(1), N(1), N(1)] },
    ListEntry { theorem: Theorem::Teo, index: 14, label: "A(1,0,0,0,1,1)", kind: None, coords: &[N(1), N(0), N(0), N(0), N(1), N(1)] },
    ListEntry { theorem: Theorem::Teo, index: 15, label: "A(0,1,0,γ,1,γ(1-γ))", kind: Some(ParamKind::Gamma), coords: &[N(0), N(1), N(0), T, N(1), TT] },
    ListEntry { theorem: Theorem::Teo, index: 16, label: "A(1,1,0,0,1,δ)", kind: Some(ParamKind::Delta), coords: &[N(1), N(1), N(0), N(0), N(1), T] },
    ListEntry { theorem: Theorem::Teo1, index: 1, label: "A(0,1,0,0)", kind: None, coords: &[N(0), N(1), N(0), N(0)] },
    ListEntry { theorem: Theorem::Teo1, index: 2, label: "A(0,1,1,0)", kind: None, coords: &[N(0), N(1), N(1), N(0)] },
    ListEntry { theorem: Theorem::Teo1, index: 3, label: "A(1,0,0,1)", kind: None, coords: &[N(1), N(0), N(0), N(1)] },
    ListEntry { theorem: Theorem::Teo1, index: 4, label: "A(β,1,0,1)", kind: Some(ParamKind::Beta), coords: &[T, N(1), N(0), N(1)] },
    ListEntry { theorem: Theorem::Extra, index: 1, label: "A(1,1,0,1,1,δ)", kind: Some(ParamKind::Delta), coords: &[N(1), N(1), N(0), N(1), N(1), T] },
    ListEntry { theorem: Theorem::Extra, index: 2, label: "A(-1,0,1,0,-1,0)", kind: None, coords: &[N(-1), N(0), N(1), N(0), N(-1), N(0)] },
    ListEntry { theorem: Theorem::Extra, index: 3, label: "A(0,0,1,0,-1,0)", kind: None, coords: &[N(0), N(0), N(1), N(0), N(-1), N(0)] },
];

/// The tuple printed as the fifth α-list entry. It is isomorphic to entry 13.
pub const TEO_LISTED_ENTRY5: [i64; 6] = [1, 0, 1, 0, 0, 0];

pub fn list_entry(theorem: Theorem, index: usize) -> Option<&'static ListEntry> {
    LIST.iter().find(|e| e.theorem == theorem && e.index == index)
}

pub fn entries_of(theorem: Theorem) -> impl Iterator<Item = &'static ListEntry> {
    LIST.iter().filter(move |e| e.theorem == theorem)
}

impl<F: Field> RepresentativeId<F> {
    /// Checks the index, the presence of a parameter exactly when the entry
    /// has one, and δ ≠ 0, γ ∉ {0, 1}.
    pub fn new(theorem: Theorem, index: usize, param: Option<F>) -> Result<Self, FamilyError> {
        let entry = list_entry(theorem, index)
            .ok_or_else(|| FamilyError::ConstraintViolation(format!("no entry {index} in {theorem:?}")))?;
        let param = match (entry.kind, param) {
            (None, None) => None,
            (Some(kind), Some(value)) => {
                match kind {
                    ParamKind::Delta if value.is_zero() => {
                        return Err(FamilyError::ConstraintViolation("δ must be nonzero".into()));
                    }
                    ParamKind::Gamma if value.is_zero() || value.is_one() => {
                        return Err(FamilyError::ConstraintViolation("γ must differ from 0 and 1".into()));
                    }
                    _ => {}
                }
                Some(ContinuousParam { kind, value })
            }
            (Some(k), None) => {
                return Err(FamilyError::ConstraintViolation(format!("{} is required for {}", k.symbol(), entry.label)));
            }
            (None, Some(_)) => {
                return Err(FamilyError::ConstraintViolation(format!("{} takes no parameter", entry.label)));
            }
        };
        Ok(RepresentativeId { theorem, index, param })
    }

    pub fn entry(&self) -> &'static ListEntry {
        list_entry(self.theorem, self.index).expect("validated at construction")
    }

    /// Parameter tuple of the representative.
    pub fn tuple(&self, proto: &F) -> Result<Vec<F>, FamilyError> {
        let t = self.param.as_ref().map(|p| p.value.clone());
        self.entry()
            .coords
            .iter()
            .map(|c| match c {
                Coord::Int(v) => Ok(proto.from_int_like(*v)),
                Coord::I => proto
                    .imag_unit_like()
                    .ok_or_else(|| FamilyError::ConstraintViolation("field has no square root of -1".into())),
                Coord::T => Ok(t.clone().expect("validated")),
                Coord::TOneMinusT => {
                    let t = t.clone().expect("validated");
                    Ok(t.mul(&t.one_like().sub(&t)))
                }
            })
            .collect()
    }

    /// `A(…)` with the parameter substituted.
    pub fn concrete_label(&self, proto: &F) -> Result<String, FamilyError> {
        Ok(tuple_label(&self.tuple(proto)?))
    }

    pub fn is_b4(&self) -> bool {
        self.theorem == Theorem::Teo1
    }
}

impl<F: Field> fmt::Display for RepresentativeId<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entry = self.entry();
        write!(f, "{:?}#{} {}", self.theorem, self.index, entry.label)?;
        if let Some(p) = &self.param {
            write!(f, " with {} = {}", p.kind.symbol(), p.value)?;
        }
        Ok(())
    }
}

pub fn representative<F: Field>(id: &RepresentativeId<F>, n: usize, proto: &F) -> Result<Algebra<F>, FamilyError> {
    let t = id.tuple(proto)?;
    if id.is_b4() {
        family_b4(n, &FamilyParamsB4 { beta: [t[0].clone(), t[1].clone(), t[2].clone(), t[3].clone()] })
    } else {
        let alpha: [F; 6] = std::array::from_fn(|k| t[k].clone());
        family_a6(n, &FamilyParamsA6 { alpha })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gaussian;

    fn g(v: i64) -> Gaussian {
        Gaussian::from_int(v)
    }

    #[test]
    fn null_filiform_three() {
        let a = null_filiform(3, &g(0)).unwrap();
        assert_eq!(a.product(0, 0), &[(1, g(1))]);
        assert_eq!(a.product(0, 1), &[(2, g(1))]);
        assert_eq!(a.product(1, 0), &[(2, g(1))]);
        assert!(a.product(1, 1).is_empty());
    }

    #[test]
    fn a6_table_entries() {
        let p = FamilyParamsA6::from_ints(&g(0), [0, 0, 0, 7, 0, 0]);
        let a = family_a6(8, &p).unwrap();
        let (x, y, z) = xyz(8);
        assert_eq!(a.coeff(z, 0, y), g(7));
        assert_eq!(a.coeff(0, x, y), g(1));
        assert_eq!(a.coeff(1, 1, 3), g(1));
        assert!(a.product(0, 4).is_empty());
        assert_eq!(recognize_a6(&a), Some(p));
    }

    #[test]
    fn dimension_and_degeneracy_errors() {
        let p = FamilyParamsA6::from_ints(&g(0), [0; 6]);
        assert_eq!(family_a6(6, &p), Err(FamilyError::DimensionTooSmall { n: 6, min: 7 }));
        let q = FamilyParamsB4::from_ints(&g(0), [1, 0, 1, 0]);
        assert_eq!(family_b4(7, &q), Err(FamilyError::DegenerateParams));
    }

    #[test]
    fn b4_table_and_recognition() {
        let p = FamilyParamsB4::from_ints(&g(0), [0, 1, 0, 0]);
        let a = family_b4(8, &p).unwrap();
        let (x, _, z) = xyz(8);
        assert_eq!(a.product(x, 0), &[(z, g(1))]);
        assert_eq!(recognize_b4(&a), Some(p));
        assert_eq!(recognize_a6(&a), None);
    }

    #[test]
    fn representative_constraints() {
        assert!(RepresentativeId::new(Theorem::Teo, 16, Some(g(0))).is_err());
        assert!(RepresentativeId::new(Theorem::Teo, 15, Some(g(1))).is_err());
        assert!(RepresentativeId::new(Theorem::Teo, 15, None::<Gaussian>).is_err());
        assert!(RepresentativeId::new(Theorem::Teo, 17, None::<Gaussian>).is_err());
        let id = RepresentativeId::new(Theorem::Teo, 15, Some(g(2))).unwrap();
        assert_eq!(id.concrete_label(&g(0)).unwrap(), "A(0,1,0,2,1,-2)");
    }

    #[test]
    fn representative_with_i() {
        let id = RepresentativeId::new(Theorem::Teo, 9, None).unwrap();
        let t = id.tuple(&g(0)).unwrap();
        assert_eq!(t[3], Gaussian::i());
        let b = RepresentativeId::new(Theorem::Teo1, 4, Some(g(0))).unwrap();
        assert_eq!(b.tuple(&g(0)).unwrap(), vec![g(0), g(1), g(0), g(1)]);
        let a = representative(&RepresentativeId::new(Theorem::Teo, 2, None).unwrap(), 8, &g(0)).unwrap();
        assert_eq!(a, family_a6(8, &FamilyParamsA6::from_ints(&g(0), [0, 0, 0, 1, 0, 0])).unwrap());
    }

    #[test]
    fn gradations_are_homogeneous() {
        let p = FamilyParamsA6::from_ints(&g(0), [1, 2, 3, 4, 5, 6]);
        assert!(a6_gradation(9).is_homogeneous(&family_a6(9, &p).unwrap()));
        let q = FamilyParamsB4::from_ints(&g(0), [3, 1, 0, 1]);
        let b = family_b4(9, &q).unwrap();
        assert!(b4_gradation(9).is_homogeneous(&b));
        assert!(!a6_gradation(9).is_homogeneous(&b));
    }
}
