//! Parameter transport under changes of generators.
//!
//! A change of generators for family a6 keeps the chain structure: with
//! x = e_{n−2}, z = e_n it reads
//!
//! ```text
//! e1' = A1 e1 + A2 x + A3 z,   x' = B2 x + B3 z,   z' = C2 x + C3 z,
//! ```
//!
//! and the rest of the basis is e_k' = e1'^k, y' = e1' x'. The product
//! e1'·z' must vanish, which forces (C2, C3) to be a multiple of
//! (−(α3A2 + α6A3), D) with D = A1 + α2A2 + α5A3. [`GeneratorChange`] is the
//! classical parametrization by C3, which needs D ≠ 0; [`CompleteChange`]
//! uses the multiplier c instead and covers D = 0 as well.

use serde::Serialize;

use crate::algebra::{Algebra, BasisChange};
use crate::classify::ClassifyError;
use crate::families::{family_a6, family_b4, recognize_a6, recognize_b4, xyz, FamilyParamsA6, FamilyParamsB4};
use crate::scalar::Field;

/// Change of generators parametrized by C3, with C2 determined.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorChange<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub b2: F,
    pub b3: F,
    pub c3: F,
}

/// Change of generators with z' = c·(−(α3A2 + α6A3) x + D z).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompleteChange<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub b2: F,
    pub b3: F,
    pub c: F,
}

impl<F: Field> GeneratorChange<F> {
    pub fn identity(proto: &F) -> Self {
        let (o, z) = (proto.one_like(), proto.zero_like());
        GeneratorChange { a1: o.clone(), a2: z.clone(), a3: z.clone(), b2: o.clone(), b3: z, c3: o }
    }

    /// The same change with C3 = c·D; fails when D = 0.
    pub fn to_complete(&self, p: &FamilyParamsA6<F>) -> Result<CompleteChange<F>, ClassifyError> {
        let d = d_value(p, &self.a1, &self.a2, &self.a3);
        let c = self.c3.div(&d).ok_or(ClassifyError::InadmissibleChange("A1 + α2A2 + α5A3 = 0"))?;
        Ok(CompleteChange {
            a1: self.a1.clone(),
            a2: self.a2.clone(),
            a3: self.a3.clone(),
            b2: self.b2.clone(),
            b3: self.b3.clone(),
            c,
        })
    }

    /// C2 = −(α3A2 + α6A3)·C3 / D.
    pub fn c2(&self, p: &FamilyParamsA6<F>) -> Result<F, ClassifyError> {
        let d = d_value(p, &self.a1, &self.a2, &self.a3);
        let num = p.a(3).mul(&self.a2).add(&p.a(6).mul(&self.a3)).mul(&self.c3).neg();
        num.div(&d).ok_or(ClassifyError::InadmissibleChange("A1 + α2A2 + α5A3 = 0"))
    }
}

impl<F: Field> CompleteChange<F> {
    pub fn identity(proto: &F) -> Self {
        let (o, z) = (proto.one_like(), proto.zero_like());
        CompleteChange { a1: o.clone(), a2: z.clone(), a3: z.clone(), b2: o.clone(), b3: z, c: o }
    }

    pub fn as_array(&self) -> [F; 6] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.b2.clone(), self.b3.clone(), self.c.clone()]
    }

    pub fn from_array(v: [F; 6]) -> Self {
        let [a1, a2, a3, b2, b3, c] = v;
        CompleteChange { a1, a2, a3, b2, b3, c }
    }

    /// Coefficients (C2, C3) of z' in x and z.
    pub fn z_coeffs(&self, p: &FamilyParamsA6<F>) -> (F, F) {
        let d = d_value(p, &self.a1, &self.a2, &self.a3);
        let w = p.a(3).mul(&self.a2).add(&p.a(6).mul(&self.a3));
        (w.neg().mul(&self.c), d.mul(&self.c))
    }
}

/// D = A1 + α2A2 + α5A3.
pub fn d_value<F: Field>(p: &FamilyParamsA6<F>, a1: &F, a2: &F, a3: &F) -> F {
    a1.add(&p.a(2).mul(a2)).add(&p.a(5).mul(a3))
}

/// E = A1B2 + α2A2B2 + α3A2B3 + α5A3B2 + α6A3B3.
pub fn e_value<F: Field>(p: &FamilyParamsA6<F>, a1: &F, a2: &F, a3: &F, b2: &F, b3: &F) -> F {
    a1.mul(b2)
        .add(&p.a(2).mul(a2).mul(b2))
        .add(&p.a(3).mul(a2).mul(b3))
        .add(&p.a(5).mul(a3).mul(b2))
        .add(&p.a(6).mul(a3).mul(b3))
}

/// Numerators shared by both parametrizations: α1'·E, α2'·E, and the
/// brackets multiplying the z'-scale in α3', α4', α5' and its square in α6'.
fn numerators<F: Field>(p: &FamilyParamsA6<F>, a1: &F, a2: &F, a3: &F, b2: &F, b3: &F) -> [F; 6] {
    let [al1, al2, al3, al4, al5, al6] = &p.alpha;
    let two = al1.from_int_like(2);
    let i2 = al2.mul(al6).sub(&al3.mul(al5));
    let s = |terms: &[F]| terms.iter().fold(al1.zero_like(), |acc, t| acc.add(t));
    let m = |xs: &[&F]| xs.iter().skip(1).fold(xs[0].clone(), |acc, t| acc.mul(t));

    let n1 = s(&[
        m(&[&s(&[m(&[al1, a1]), m(&[al2, a2]), m(&[al3, a3])]), b2]),
        m(&[&s(&[m(&[al4, a1]), m(&[al5, a2]), m(&[al6, a3])]), b3]),
    ]);
    let n2 = s(&[m(&[al2, b2, b2]), m(&[&al3.add(al5), b2, b3]), m(&[al6, b3, b3])]);
    let n3 = s(&[
        m(&[&al3.mul(b2).add(&al6.mul(b3)), a1]),
        m(&[&i2, &a2.mul(b3).sub(&a3.mul(b2))]),
    ]);
    let n4 = s(&[
        m(&[al4, a1, a1]),
        m(&[&s(&[al2.mul(al4), al1.mul(al3).neg(), al5.clone()]), a1, a2]),
        m(&[al2, &al5.sub(al3), a2, a2]),
        m(&[&s(&[al4.mul(al5), al1.mul(al6).neg(), al6.clone()]), a1, a3]),
        m(&[&al5.mul(al5).sub(&al3.mul(al3)), a2, a3]),
        m(&[al6, &al5.sub(al3), a3, a3]),
    ]);
    let n5 = s(&[
        m(&[&al5.mul(b2).add(&al6.mul(b3)), a1]),
        m(&[al2, &al5.sub(al3), a2, b2]),
        m(&[&al5.mul(al5).sub(&al2.mul(al6)), a3, b2]),
        m(&[&al2.mul(al6).sub(&al3.mul(al3)), a2, b3]),
        m(&[al6, &al5.sub(al3), a3, b3]),
    ]);
    let n6 = s(&[
        m(&[al6, a1, a1]),
        m(&[&m(&[&two, al2, al6]).sub(&al3.mul(&al3.add(al5))), a1, a2]),
        m(&[al2, &i2, a2, a2]),
        m(&[al6, &al5.sub(al3), a1, a3]),
        m(&[
            &s(&[m(&[al2, al3, al6]), m(&[al2, al5, al6]), m(&[al3, al3, al5]).neg(), m(&[al3, al5, al5]).neg()]),
            a2,
            a3,
        ]),
        m(&[al6, &i2, a3, a3]),
    ]);
    [n1, n2, n3, n4, n5, n6]
}

/// α' under a [`GeneratorChange`], from the closed formulas with
/// denominators D·E (D²·E for α6').
pub fn transform_a6_params<F: Field>(
    p: &FamilyParamsA6<F>,
    g: &GeneratorChange<F>,
) -> Result<FamilyParamsA6<F>, ClassifyError> {
    let d = d_value(p, &g.a1, &g.a2, &g.a3);
    let e = e_value(p, &g.a1, &g.a2, &g.a3, &g.b2, &g.b3);
    if d.is_zero() {
        return Err(ClassifyError::InadmissibleChange("A1 + α2A2 + α5A3 = 0"));
    }
    if g.a1.mul(&g.c3).mul(&e).is_zero() {
        return Err(ClassifyError::InadmissibleChange("A1·C3·E = 0"));
    }
    let [n1, n2, n3, n4, n5, n6] = numerators(p, &g.a1, &g.a2, &g.a3, &g.b2, &g.b3);
    let de = d.mul(&e);
    let q = |num: F, den: &F| num.div(den).expect("nonzero denominator");
    Ok(FamilyParamsA6::new([
        q(n1, &e),
        q(n2, &e),
        q(n3.mul(&g.c3), &de),
        q(n4.mul(&g.c3), &de),
        q(n5.mul(&g.c3), &de),
        q(n6.mul(&g.c3.square()), &d.mul(&de)),
    ]))
}

/// α' under a [`CompleteChange`]; admissible iff A1·c·E ≠ 0.
pub fn transform_a6_complete<F: Field>(
    p: &FamilyParamsA6<F>,
    g: &CompleteChange<F>,
) -> Result<FamilyParamsA6<F>, ClassifyError> {
    let e = e_value(p, &g.a1, &g.a2, &g.a3, &g.b2, &g.b3);
    let einv = g
        .a1
        .mul(&g.c)
        .mul(&e)
        .inv()
        .and_then(|_| e.inv())
        .ok_or(ClassifyError::InadmissibleChange("A1·c·E = 0"))?;
    let [n1, n2, n3, n4, n5, n6] = numerators(p, &g.a1, &g.a2, &g.a3, &g.b2, &g.b3);
    let ce = g.c.mul(&einv);
    Ok(FamilyParamsA6::new([
        n1.mul(&einv),
        n2.mul(&einv),
        n3.mul(&ce),
        n4.mul(&ce),
        n5.mul(&ce),
        n6.mul(&g.c).mul(&ce),
    ]))
}

/// New basis e1'^1, …, e1'^{n−3}, x', e1'x', z' for the given generators.
fn generated_basis<F: Field>(
    a: &Algebra<F>,
    e1: Vec<F>,
    x: Vec<F>,
    z: Vec<F>,
) -> Result<BasisChange<F>, ClassifyError> {
    let n = a.dim();
    let mut cols = Vec::with_capacity(n);
    let mut power = e1.clone();
    cols.push(power.clone());
    for _ in 2..=n - 3 {
        power = a.mul_unchecked(&e1, &power);
        cols.push(power.clone());
    }
    let y = a.mul_unchecked(&e1, &x);
    cols.push(x);
    cols.push(y);
    cols.push(z);
    BasisChange::from_columns(&cols, a.proto()).map_err(|_| ClassifyError::InadmissibleChange("generated basis is singular"))
}

fn vec_with<F: Field>(n: usize, proto: &F, entries: &[(usize, &F)]) -> Vec<F> {
    let mut v = vec![proto.zero_like(); n];
    for (i, c) in entries {
        v[*i] = v[*i].add(c);
    }
    v
}

/// Basis change of family a6 realizing a [`CompleteChange`].
pub fn basis_for_a6<F: Field>(
    n: usize,
    p: &FamilyParamsA6<F>,
    g: &CompleteChange<F>,
) -> Result<(Algebra<F>, BasisChange<F>), ClassifyError> {
    let a = family_a6(n, p)?;
    let (x, _, z) = xyz(n);
    let proto = a.proto().clone();
    let (c2, c3) = g.z_coeffs(p);
    let e1v = vec_with(n, &proto, &[(0, &g.a1), (x, &g.a2), (z, &g.a3)]);
    let xv = vec_with(n, &proto, &[(x, &g.b2), (z, &g.b3)]);
    let zv = vec_with(n, &proto, &[(x, &c2), (z, &c3)]);
    let basis = generated_basis(&a, e1v, xv, zv)?;
    Ok((a, basis))
}

/// Transports family a6 along the change and reads α' back from the table.
/// Fails if the transported table is not of family shape.
pub fn transport_a6<F: Field>(
    n: usize,
    p: &FamilyParamsA6<F>,
    g: &CompleteChange<F>,
) -> Result<(Algebra<F>, Option<FamilyParamsA6<F>>), ClassifyError> {
    let (a, basis) = basis_for_a6(n, p, g)?;
    let moved = a.apply_basis_change(&basis)?;
    let read = recognize_a6(&moved);
    Ok((moved, read))
}

/// Basis change of family a6 for the C3 parametrization, with C2 from its formula.
pub fn basis_for_generator_change<F: Field>(
    n: usize,
    p: &FamilyParamsA6<F>,
    g: &GeneratorChange<F>,
) -> Result<BasisChange<F>, ClassifyError> {
    let a = family_a6(n, p)?;
    let (x, _, z) = xyz(n);
    let proto = a.proto().clone();
    let c2 = g.c2(p)?;
    let e1v = vec_with(n, &proto, &[(0, &g.a1), (x, &g.a2), (z, &g.a3)]);
    let xv = vec_with(n, &proto, &[(x, &g.b2), (z, &g.b3)]);
    let zv = vec_with(n, &proto, &[(x, &c2), (z, &g.c3)]);
    generated_basis(&a, e1v, xv, zv)
}

// -------------------------------------------------------------------- b4

/// Change of generators for family b4: e1' = A1e1 + A2x, x' = B2x,
/// z' = C1y + C2z. The degree-2 vector z' cannot involve e2 since e1'z' = 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChangeB4<F> {
    pub a1: F,
    pub a2: F,
    pub b2: F,
    pub c1: F,
    pub c2: F,
}

impl<F: Field> ChangeB4<F> {
    pub fn identity(proto: &F) -> Self {
        let (o, z) = (proto.one_like(), proto.zero_like());
        ChangeB4 { a1: o.clone(), a2: z.clone(), b2: o.clone(), c1: z, c2: o }
    }

    pub fn as_array(&self) -> [F; 5] {
        [self.a1.clone(), self.a2.clone(), self.b2.clone(), self.c1.clone(), self.c2.clone()]
    }

    pub fn from_array(v: [F; 5]) -> Self {
        let [a1, a2, b2, c1, c2] = v;
        ChangeB4 { a1, a2, b2, c1, c2 }
    }
}

/// β' under a b4 change. y' = e1'x' has coordinates (B2(A1 + A2β3), B2A2β4)
/// in (y, z); x'e1' and x'x' are rewritten in the basis (y', z').
pub fn transform_b4_params<F: Field>(
    p: &FamilyParamsB4<F>,
    g: &ChangeB4<F>,
) -> Result<FamilyParamsB4<F>, ClassifyError> {
    let [b1, b2, b3, b4] = &p.beta;
    if g.a1.mul(&g.b2).is_zero() {
        return Err(ClassifyError::InadmissibleChange("A1·B2 = 0"));
    }
    let yy = g.b2.mul(&g.a1.add(&g.a2.mul(b3)));
    let yz = g.b2.mul(&g.a2).mul(b4);
    let det = yy.mul(&g.c2).sub(&yz.mul(&g.c1));
    let dinv = det.inv().ok_or(ClassifyError::InadmissibleChange("y', z' are dependent"))?;
    let coords = |u: F, v: F| -> (F, F) {
        let s = u.mul(&g.c2).sub(&v.mul(&g.c1)).mul(&dinv);
        let t = yy.mul(&v).sub(&yz.mul(&u)).mul(&dinv);
        (s, t)
    };
    let (q1, q2) = coords(
        g.b2.mul(&g.a1.mul(b1).add(&g.a2.mul(b3))),
        g.b2.mul(&g.a1.mul(b2).add(&g.a2.mul(b4))),
    );
    let bb = g.b2.square();
    let (q3, q4) = coords(bb.mul(b3), bb.mul(b4));
    Ok(FamilyParamsB4::new([q1, q2, q3, q4]))
}

/// Transports family b4 along the change; returns the table and β' if the
/// result has family shape.
pub fn transport_b4<F: Field>(
    n: usize,
    p: &FamilyParamsB4<F>,
    g: &ChangeB4<F>,
) -> Result<(Algebra<F>, Option<FamilyParamsB4<F>>), ClassifyError> {
    let a = family_b4(n, p)?;
    let (x, y, z) = xyz(n);
    let proto = a.proto().clone();
    let e1v = vec_with(n, &proto, &[(0, &g.a1), (x, &g.a2)]);
    let xv = vec_with(n, &proto, &[(x, &g.b2)]);
    let zv = vec_with(n, &proto, &[(y, &g.c1), (z, &g.c2)]);
    let basis = generated_basis(&a, e1v, xv, zv)?;
    let moved = a.apply_basis_change(&basis)?;
    let read = recognize_b4(&moved);
    Ok((moved, read))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gaussian;

    fn gi(v: i64) -> Gaussian {
        Gaussian::from_int(v)
    }

    fn params(v: [i64; 6]) -> FamilyParamsA6<Gaussian> {
        FamilyParamsA6::from_ints(&gi(0), v)
    }

    #[test]
    fn identity_changes_fix_params() {
        let p = params([1, 2, 3, 4, 5, 6]);
        assert_eq!(transform_a6_params(&p, &GeneratorChange::identity(&gi(0))).unwrap(), p);
        assert_eq!(transform_a6_complete(&p, &CompleteChange::identity(&gi(0))).unwrap(), p);
    }

    #[test]
    fn normalizing_alpha2() {
        // α3 = α5 = α6 = 0, α2 ≠ 0, B2 = (A1 + α2A2)/α2 gives α2' = 1
        let p = params([2, 3, 0, 1, 0, 0]);
        let (a1, a2) = (gi(2), gi(5));
        let b2 = (&a1 + &(&gi(3) * &a2)) / gi(3);
        let g = GeneratorChange { a1, a2, a3: gi(1), b2, b3: gi(4), c3: gi(7) };
        assert_eq!(transform_a6_params(&p, &g).unwrap().alpha[1], gi(1));
    }

    #[test]
    fn both_forms_agree_when_d_nonzero() {
        let p = params([1, -2, 3, 0, 2, -1]);
        let g = GeneratorChange { a1: gi(2), a2: gi(1), a3: gi(-1), b2: gi(3), b3: gi(1), c3: gi(5) };
        let c = g.to_complete(&p).unwrap();
        assert_eq!(transform_a6_params(&p, &g).unwrap(), transform_a6_complete(&p, &c).unwrap());
    }

    #[test]
    fn transport_matches_formulas() {
        let p = params([1, 2, -1, 3, 0, 2]);
        let g = CompleteChange::from_array([gi(1), gi(2), gi(-1), gi(1), gi(3), gi(2)]);
        let (_, read) = transport_a6(7, &p, &g).unwrap();
        assert_eq!(read.unwrap(), transform_a6_complete(&p, &g).unwrap());
    }

    #[test]
    fn d_zero_change_is_admissible() {
        // D = A1 + α2A2 + α5A3 = 1 − 3 + 2 = 0 here, yet the change is invertible
        let p = params([0, 1, 1, 0, 2, 1]);
        let g = CompleteChange::from_array([gi(1), gi(-3), gi(1), gi(1), gi(1), gi(1)]);
        assert!(d_value(&p, &g.a1, &g.a2, &g.a3).is_zero());
        let (_, read) = transport_a6(7, &p, &g).unwrap();
        assert_eq!(read.unwrap(), transform_a6_complete(&p, &g).unwrap());
    }

    #[test]
    fn b4_transport_matches_formula() {
        let p = FamilyParamsB4::from_ints(&gi(0), [3, 1, 2, 1]);
        let g = ChangeB4::from_array([gi(2), gi(1), gi(3), gi(1), gi(-1)]);
        let (_, read) = transport_b4(7, &p, &g).unwrap();
        assert_eq!(read.unwrap(), transform_b4_params(&p, &g).unwrap());
    }
}
