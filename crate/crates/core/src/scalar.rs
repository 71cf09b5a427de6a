//! Field arithmetic.
//!
//! Concrete fields: [`Rational`] (ℚ), [`Gaussian`] (ℚ(i)), [`QuadExt`] (one
//! quadratic extension ℚ(i)(√d)), [`Fp`] (prime fields) and
//! [`ApproxComplex`] (tolerance-compared floats). Generic code is written
//! against the [`Field`] trait; [`Scalar`] is the dynamically tagged union
//! used at I/O boundaries.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldDescriptor, right: FieldDescriptor },
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of {radicand} needs a second quadratic extension over {field}")]
    SecondExtensionRequired { radicand: String, field: FieldDescriptor },
    #[error("cannot parse scalar literal `{token}`")]
    Parse { token: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Operations shared by every coefficient field.
///
/// Elements carry their own field context (modulus, radicand, tolerance), so
/// constants are produced from an existing element with the `*_like` methods.
/// Mixing contexts inside these methods is a programming error and panics;
/// the checked entry points on [`Scalar`] report it as [`ScalarError`].
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero (or for values within tolerance of zero).
    fn inv(&self) -> Option<Self>;
    fn descriptor(&self) -> FieldDescriptor;
    /// A fixed square root of −1 when the field has one.
    fn imag_unit_like(&self) -> Option<Self>;
    /// A square root found inside this field, if any.
    fn sqrt_in_field(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
    fn square(&self) -> Self {
        self.mul(self)
    }
    fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

// ---------------------------------------------------------------- descriptor

/// Which field a value lives in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDescriptor {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Q_i")]
    QI,
    #[serde(rename = "Q_i_sqrt")]
    QISqrt { d: Gaussian },
    #[serde(rename = "F_p")]
    Fp { p: u64 },
    #[serde(rename = "ApproxC")]
    ApproxC { tol: f64 },
}

impl FieldDescriptor {
    pub fn tolerance(&self) -> f64 {
        match self {
            FieldDescriptor::ApproxC { tol } => *tol,
            _ => 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, FieldDescriptor::ApproxC { .. })
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Q => write!(f, "Q"),
            FieldDescriptor::QI => write!(f, "Q(i)"),
            FieldDescriptor::QISqrt { d } => write!(f, "Q(i)(sqrt({d}))"),
            FieldDescriptor::Fp { p } => write!(f, "F_{p}"),
            FieldDescriptor::ApproxC { tol } => write!(f, "C~{tol:e}"),
        }
    }
}

// ----------------------------------------------------------------- rationals

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        BigInt::from_str(s).ok().map(Rational::from_integer)
    }
}

impl Field for Rational {
    fn sqrt_in_field(&self) -> Option<Self> {
        rational_sqrt(self)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_int_like(&self, v: i64) -> Self {
        rat_int(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Q
    }
    fn imag_unit_like(&self) -> Option<Self> {
        None
    }
}

// ------------------------------------------------------------------ Gaussian

/// An element re + im·i of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Gaussian::new(rat_int(n), Rational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian::new(rat_int(re), rat_int(im))
    }

    pub fn from_rational(q: Rational) -> Self {
        Gaussian::new(q, Rational::zero())
    }

    pub fn zero() -> Self {
        Gaussian::from_int(0)
    }

    pub fn one() -> Self {
        Gaussian::from_int(1)
    }

    pub fn i() -> Self {
        Gaussian::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    pub fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(Gaussian::new(&self.re / &n, -&self.im / &n))
    }

    /// Lexicographic order on (re, im); the deterministic scalar order.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }

    /// Is (re, im) ≥ (0, 0) lexicographically?
    pub fn is_nonnegative_lex(&self) -> bool {
        self.canonical_cmp(&Gaussian::zero()) != Ordering::Less
    }

    /// Square root inside ℚ(i) when one exists, normalized by the branch rule.
    pub fn sqrt_exact(&self) -> Option<Gaussian> {
        if self.is_zero() {
            return Some(Gaussian::zero());
        }
        // (a+bi)² = u+vi  ⇔  a² = (u+|x|)/2, b² = (|x|−u)/2, 2ab = v
        let m = rational_sqrt(&self.norm())?;
        let two = rat_int(2);
        let a = rational_sqrt(&((&self.re + &m) / &two))?;
        let b = if Zero::is_zero(&a) {
            rational_sqrt(&((&m - &self.re) / &two))?
        } else {
            &self.im / (&two * &a)
        };
        let s = Gaussian::new(a, b);
        if &s * &s != *self {
            return None;
        }
        Some(if s.is_nonnegative_lex() { s } else { -s })
    }

    /// Integer conversion when both parts are integers fitting in i64.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        if !self.re.is_integer() || !self.im.is_integer() {
            return None;
        }
        Some((self.re.numer().to_i64()?, self.im.numer().to_i64()?))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im = if One::is_one(&self.im) {
            String::new()
        } else if One::is_one(&-&self.im) {
            "-".to_string()
        } else {
            fmt_rational(&self.im)
        };
        if Zero::is_zero(&self.re) {
            write!(f, "{im}i")
        } else if self.im.is_negative() {
            write!(f, "{}{im}i", fmt_rational(&self.re))
        } else {
            write!(f, "{}+{im}i", fmt_rational(&self.re))
        }
    }
}

impl FromStr for Gaussian {
    type Err = ScalarError;

    /// Accepts `p`, `p/q`, `i`, `-i`, `2i`, `1/2i`, `a+bi`, `a-b/ci`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse { token: s.to_string() };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return parse_rational(&t).map(Gaussian::from_rational).ok_or_else(err);
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re).ok_or_else(err)?
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other)).ok_or_else(err)?,
        };
        Ok(Gaussian::new(re, im))
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on division by zero, like the rational type it wraps.
impl Div for &Gaussian {
    type Output = Gaussian;
    fn div(self, rhs: &Gaussian) -> Gaussian {
        self * &rhs.inv().expect("Gaussian division by zero")
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Div for $t {
            type Output = $t;
            fn div(self, rhs: $t) -> $t {
                &self / &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

forward_owned_ops!(Gaussian);

impl Field for Gaussian {
    fn sqrt_in_field(&self) -> Option<Self> {
        self.sqrt_exact()
    }
    fn zero_like(&self) -> Self {
        Gaussian::zero()
    }
    fn one_like(&self) -> Self {
        Gaussian::one()
    }
    fn from_int_like(&self, v: i64) -> Self {
        Gaussian::from_int(v)
    }
    fn is_zero(&self) -> bool {
        Gaussian::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        Gaussian::inv(self)
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::QI
    }
    fn imag_unit_like(&self) -> Option<Self> {
        Some(Gaussian::i())
    }
}

impl Serialize for Gaussian {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaussianRepr { re: fmt_rational(&self.re), im: fmt_rational(&self.im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gaussian {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GaussianRepr::deserialize(d)?;
        r.to_gaussian().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaussianRepr {
    re: String,
    im: String,
}

impl GaussianRepr {
    fn to_gaussian(&self) -> Result<Gaussian, ScalarError> {
        let re = parse_rational(&self.re).ok_or(ScalarError::Parse { token: self.re.clone() })?;
        let im = parse_rational(&self.im).ok_or(ScalarError::Parse { token: self.im.clone() })?;
        Ok(Gaussian::new(re, im))
    }
}

// ----------------------------------------------------------- quadratic ext.

/// a + b·√d over ℚ(i), with d not a square in ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadExt {
    pub a: Gaussian,
    pub b: Gaussian,
    pub d: Gaussian,
}

impl QuadExt {
    pub fn new(a: Gaussian, b: Gaussian, d: Gaussian) -> Self {
        QuadExt { a, b, d }
    }

    pub fn from_base(a: Gaussian, d: &Gaussian) -> Self {
        QuadExt::new(a, Gaussian::zero(), d.clone())
    }

    /// The adjoined root √d itself.
    pub fn root(d: &Gaussian) -> Self {
        QuadExt::new(Gaussian::zero(), Gaussian::one(), d.clone())
    }

    pub fn conj(&self) -> Self {
        QuadExt::new(self.a.clone(), -&self.b, self.d.clone())
    }

    /// a² − b²d, the field norm down to ℚ(i).
    pub fn norm(&self) -> Gaussian {
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * &self.d)
    }

    /// The value as an element of ℚ(i) when the √d part vanishes.
    pub fn to_base(&self) -> Option<Gaussian> {
        self.b.is_zero().then(|| self.a.clone())
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch {
                left: FieldDescriptor::QISqrt { d: self.d.clone() },
                right: FieldDescriptor::QISqrt { d: other.d.clone() },
            })
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.check(rhs)?;
        Ok(QuadExt::new(&self.a + &rhs.a, &self.b + &rhs.b, self.d.clone()))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.check(rhs)?;
        Ok(QuadExt::new(&self.a - &rhs.a, &self.b - &rhs.b, self.d.clone()))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ScalarError> {
        self.check(rhs)?;
        let a = &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * &self.d);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        Ok(QuadExt::new(a, b, self.d.clone()))
    }

    pub fn try_inv(&self) -> Result<Self, ScalarError> {
        let n = self.norm().inv().ok_or(ScalarError::DivisionByZero)?;
        let c = self.conj();
        Ok(QuadExt::new(&c.a * &n, &c.b * &n, self.d.clone()))
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.a.canonical_cmp(&other.a).then_with(|| self.b.canonical_cmp(&other.b))
    }

    fn leading(&self) -> &Gaussian {
        if self.b.is_zero() {
            &self.a
        } else {
            &self.b
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{}+({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Field for QuadExt {
    fn sqrt_in_field(&self) -> Option<Self> {
        // only roots of base-field elements are attempted
        let base = self.to_base()?;
        if let Some(r) = base.sqrt_exact() {
            return Some(QuadExt::from_base(r, &self.d));
        }
        let r = (&base / &self.d).sqrt_exact()?;
        Some(QuadExt::new(Gaussian::zero(), r, self.d.clone()))
    }
    fn zero_like(&self) -> Self {
        QuadExt::from_base(Gaussian::zero(), &self.d)
    }
    fn one_like(&self) -> Self {
        QuadExt::from_base(Gaussian::one(), &self.d)
    }
    fn from_int_like(&self, v: i64) -> Self {
        QuadExt::from_base(Gaussian::from_int(v), &self.d)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("QuadExt radicand mismatch")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("QuadExt radicand mismatch")
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("QuadExt radicand mismatch")
    }
    fn neg(&self) -> Self {
        QuadExt::new(-&self.a, -&self.b, self.d.clone())
    }
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::QISqrt { d: self.d.clone() }
    }
    fn imag_unit_like(&self) -> Option<Self> {
        Some(QuadExt::from_base(Gaussian::i(), &self.d))
    }
}

// --------------------------------------------------------------- prime field

/// Residue v mod p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    v: u64,
    p: u64,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl Fp {
    /// Reduces `v` into [0, p). `p` is assumed prime and below 2³².
    pub fn new(v: i64, p: u64) -> Self {
        Fp { v: v.rem_euclid(p as i64) as u64, p }
    }

    pub fn from_u64(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn checked(v: i64, p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) && p < (1 << 32) {
            Ok(Fp::new(v, p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn same(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "prime field mismatch");
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inverse(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let e = (self.v as i64).extended_gcd(&(self.p as i64));
        debug_assert_eq!(e.gcd, 1);
        Some(Fp::new(e.x, self.p))
    }

    /// Smallest r in [0, p) with r² = v, if any.
    pub fn sqrt_min(&self) -> Option<Self> {
        (0..self.p).map(|r| Fp::from_u64(r, self.p)).find(|r| r.mul(r) == *self)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    fn sqrt_in_field(&self) -> Option<Self> {
        self.sqrt_min()
    }
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp::from_u64(1, self.p)
    }
    fn from_int_like(&self, v: i64) -> Self {
        Fp::new(v, self.p)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        self.same(rhs);
        Fp { v: (self.v + rhs.v) % self.p, p: self.p }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.same(rhs);
        Fp { v: (self.v + self.p - rhs.v) % self.p, p: self.p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.same(rhs);
        Fp { v: (self.v * rhs.v) % self.p, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Fp { p: self.p }
    }
    fn imag_unit_like(&self) -> Option<Self> {
        Fp::new(-1, self.p).sqrt_min()
    }
}

// ------------------------------------------------------------ approx complex

pub const DEFAULT_TOL: f64 = 1e-9;

/// Complex float compared with an absolute tolerance.
#[derive(Clone, Copy, Debug)]
pub struct ApproxComplex {
    pub re: f64,
    pub im: f64,
    pub tol: f64,
}

impl ApproxComplex {
    pub fn new(re: f64, im: f64, tol: f64) -> Self {
        ApproxComplex { re, im, tol }
    }

    pub fn from_gaussian(g: &Gaussian, tol: f64) -> Self {
        let (re, im) = g.to_f64_pair();
        ApproxComplex::new(re, im, tol)
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl PartialEq for ApproxComplex {
    fn eq(&self, other: &Self) -> bool {
        (self.re - other.re).hypot(self.im - other.im) <= self.tol.max(other.tol)
    }
}

impl fmt::Display for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

impl Field for ApproxComplex {
    fn sqrt_in_field(&self) -> Option<Self> {
        let r = self.abs().sqrt();
        let t = self.im.atan2(self.re) / 2.0;
        Some(ApproxComplex::new(r * t.cos(), r * t.sin(), self.tol))
    }
    fn zero_like(&self) -> Self {
        ApproxComplex::new(0.0, 0.0, self.tol)
    }
    fn one_like(&self) -> Self {
        ApproxComplex::new(1.0, 0.0, self.tol)
    }
    fn from_int_like(&self, v: i64) -> Self {
        ApproxComplex::new(v as f64, 0.0, self.tol)
    }
    fn is_zero(&self) -> bool {
        self.abs() <= self.tol
    }
    fn add(&self, rhs: &Self) -> Self {
        ApproxComplex::new(self.re + rhs.re, self.im + rhs.im, self.tol)
    }
    fn sub(&self, rhs: &Self) -> Self {
        ApproxComplex::new(self.re - rhs.re, self.im - rhs.im, self.tol)
    }
    fn mul(&self, rhs: &Self) -> Self {
        ApproxComplex::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
            self.tol,
        )
    }
    fn neg(&self) -> Self {
        ApproxComplex::new(-self.re, -self.im, self.tol)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.re * self.re + self.im * self.im;
        Some(ApproxComplex::new(self.re / n, -self.im / n, self.tol))
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::ApproxC { tol: self.tol }
    }
    fn imag_unit_like(&self) -> Option<Self> {
        Some(ApproxComplex::new(0.0, 1.0, self.tol))
    }
}

// -------------------------------------------------------------------- Scalar

/// Tagged scalar used for I/O and for the checked arithmetic entry points.
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Rational(Rational),
    Gaussian(Gaussian),
    Quad(QuadExt),
    Prime(Fp),
    Approx(ApproxComplex),
}

impl Scalar {
    pub fn zero(field: &FieldDescriptor) -> Scalar {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: &FieldDescriptor) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: &FieldDescriptor, v: i64) -> Scalar {
        match field {
            FieldDescriptor::Q => Scalar::Rational(rat_int(v)),
            FieldDescriptor::QI => Scalar::Gaussian(Gaussian::from_int(v)),
            FieldDescriptor::QISqrt { d } => Scalar::Quad(QuadExt::from_base(Gaussian::from_int(v), d)),
            FieldDescriptor::Fp { p } => Scalar::Prime(Fp::new(v, *p)),
            FieldDescriptor::ApproxC { tol } => Scalar::Approx(ApproxComplex::new(v as f64, 0.0, *tol)),
        }
    }

    /// Embeds an element of ℚ(i) into `field` (reducing or rounding as needed).
    pub fn from_gaussian(field: &FieldDescriptor, g: &Gaussian) -> Result<Scalar, ScalarError> {
        let mismatch = || ScalarError::FieldMismatch { left: field.clone(), right: FieldDescriptor::QI };
        match field {
            FieldDescriptor::Q => {
                if g.is_real() {
                    Ok(Scalar::Rational(g.re.clone()))
                } else {
                    Err(mismatch())
                }
            }
            FieldDescriptor::QI => Ok(Scalar::Gaussian(g.clone())),
            FieldDescriptor::QISqrt { d } => Ok(Scalar::Quad(QuadExt::from_base(g.clone(), d))),
            FieldDescriptor::Fp { p } => reduce_gaussian(g, *p).map(Scalar::Prime).ok_or_else(mismatch),
            FieldDescriptor::ApproxC { tol } => Ok(Scalar::Approx(ApproxComplex::from_gaussian(g, *tol))),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(x) => Field::descriptor(x),
            Scalar::Gaussian(x) => Field::descriptor(x),
            Scalar::Quad(x) => Field::descriptor(x),
            Scalar::Prime(x) => Field::descriptor(x),
            Scalar::Approx(x) => Field::descriptor(x),
        }
    }

    /// The value as a Gaussian rational when it lies in ℚ(i).
    pub fn to_gaussian(&self) -> Option<Gaussian> {
        match self {
            Scalar::Rational(q) => Some(Gaussian::from_rational(q.clone())),
            Scalar::Gaussian(g) => Some(g.clone()),
            Scalar::Quad(q) => q.to_base(),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        Field::is_zero(self)
    }

    fn mismatch(&self, rhs: &Scalar) -> ScalarError {
        ScalarError::FieldMismatch { left: self.descriptor(), right: rhs.descriptor() }
    }

    fn binary(
        &self,
        rhs: &Scalar,
        op: fn(&Scalar, &Scalar) -> Option<Scalar>,
    ) -> Result<Scalar, ScalarError> {
        if self.descriptor() != rhs.descriptor() {
            return Err(self.mismatch(rhs));
        }
        op(self, rhs).ok_or_else(|| self.mismatch(rhs))
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.binary(rhs, |a, b| dispatch2(a, b, OpAdd))
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.binary(rhs, |a, b| dispatch2(a, b, OpSub))
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.binary(rhs, |a, b| dispatch2(a, b, OpMul))
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        if self.descriptor() != rhs.descriptor() {
            return Err(self.mismatch(rhs));
        }
        let inv = Field::inv(rhs).ok_or(ScalarError::DivisionByZero)?;
        self.try_mul(&inv)
    }

    /// The deterministic scalar order (lexicographic on coordinates).
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => a.canonical_cmp(b),
            (Scalar::Quad(a), Scalar::Quad(b)) => a.canonical_cmp(b),
            (Scalar::Prime(a), Scalar::Prime(b)) => a.v.cmp(&b.v),
            (Scalar::Approx(a), Scalar::Approx(b)) => {
                a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im))
            }
            _ => self.descriptor().to_string().cmp(&other.descriptor().to_string()),
        }
    }
}

fn dispatch2<T>(a: &Scalar, b: &Scalar, op: T) -> Option<Scalar>
where
    T: Fn2,
{
    Some(match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(op.call(x, y)),
        (Scalar::Gaussian(x), Scalar::Gaussian(y)) => Scalar::Gaussian(op.call(x, y)),
        (Scalar::Quad(x), Scalar::Quad(y)) => Scalar::Quad(x.check(y).ok().map(|_| op.call(x, y))?),
        (Scalar::Prime(x), Scalar::Prime(y)) if x.p == y.p => Scalar::Prime(op.call(x, y)),
        (Scalar::Approx(x), Scalar::Approx(y)) => Scalar::Approx(op.call(x, y)),
        _ => return None,
    })
}

/// A binary field operation usable at every concrete field type.
trait Fn2: Copy {
    fn call<F: Field>(&self, a: &F, b: &F) -> F;
}

macro_rules! field_op {
    ($name:ident, $method:ident) => {
        #[derive(Clone, Copy)]
        struct $name;
        impl Fn2 for $name {
            fn call<F: Field>(&self, a: &F, b: &F) -> F {
                a.$method(b)
            }
        }
    };
}

field_op!(OpAdd, add);
field_op!(OpSub, sub);
field_op!(OpMul, mul);

impl Field for Scalar {
    fn sqrt_in_field(&self) -> Option<Self> {
        Some(match self {
            Scalar::Rational(x) => Scalar::Rational(x.sqrt_in_field()?),
            Scalar::Gaussian(x) => Scalar::Gaussian(x.sqrt_in_field()?),
            Scalar::Quad(x) => Scalar::Quad(x.sqrt_in_field()?),
            Scalar::Prime(x) => Scalar::Prime(x.sqrt_in_field()?),
            Scalar::Approx(x) => Scalar::Approx(x.sqrt_in_field()?),
        })
    }
    fn zero_like(&self) -> Self {
        Scalar::zero(&self.descriptor())
    }
    fn one_like(&self) -> Self {
        Scalar::one(&self.descriptor())
    }
    fn from_int_like(&self, v: i64) -> Self {
        Scalar::from_int(&self.descriptor(), v)
    }
    fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => Field::is_zero(x),
            Scalar::Gaussian(x) => Field::is_zero(x),
            Scalar::Quad(x) => Field::is_zero(x),
            Scalar::Prime(x) => Field::is_zero(x),
            Scalar::Approx(x) => Field::is_zero(x),
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        dispatch2(self, rhs, OpAdd).unwrap_or_else(|| panic!("{}", self.mismatch(rhs)))
    }
    fn sub(&self, rhs: &Self) -> Self {
        dispatch2(self, rhs, OpSub).unwrap_or_else(|| panic!("{}", self.mismatch(rhs)))
    }
    fn mul(&self, rhs: &Self) -> Self {
        dispatch2(self, rhs, OpMul).unwrap_or_else(|| panic!("{}", self.mismatch(rhs)))
    }
    fn neg(&self) -> Self {
        match self {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Gaussian(x) => Scalar::Gaussian(-x),
            Scalar::Quad(x) => Scalar::Quad(Field::neg(x)),
            Scalar::Prime(x) => Scalar::Prime(Field::neg(x)),
            Scalar::Approx(x) => Scalar::Approx(Field::neg(x)),
        }
    }
    fn inv(&self) -> Option<Self> {
        Some(match self {
            Scalar::Rational(x) => Scalar::Rational(Field::inv(x)?),
            Scalar::Gaussian(x) => Scalar::Gaussian(Field::inv(x)?),
            Scalar::Quad(x) => Scalar::Quad(Field::inv(x)?),
            Scalar::Prime(x) => Scalar::Prime(Field::inv(x)?),
            Scalar::Approx(x) => Scalar::Approx(Field::inv(x)?),
        })
    }
    fn descriptor(&self) -> FieldDescriptor {
        Scalar::descriptor(self)
    }
    fn imag_unit_like(&self) -> Option<Self> {
        Some(match self {
            Scalar::Rational(_) => return None,
            Scalar::Gaussian(x) => Scalar::Gaussian(x.imag_unit_like()?),
            Scalar::Quad(x) => Scalar::Quad(x.imag_unit_like()?),
            Scalar::Prime(x) => Scalar::Prime(x.imag_unit_like()?),
            Scalar::Approx(x) => Scalar::Approx(x.imag_unit_like()?),
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{}", fmt_rational(x)),
            Scalar::Gaussian(x) => write!(f, "{x}"),
            Scalar::Quad(x) => write!(f, "{x}"),
            Scalar::Prime(x) => write!(f, "{x}"),
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl From<Gaussian> for Scalar {
    fn from(g: Gaussian) -> Self {
        Scalar::Gaussian(g)
    }
}

impl From<Fp> for Scalar {
    fn from(x: Fp) -> Self {
        Scalar::Prime(x)
    }
}

impl From<ApproxComplex> for Scalar {
    fn from(x: ApproxComplex) -> Self {
        Scalar::Approx(x)
    }
}

pub fn add(a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
    a.try_add(b)
}

pub fn sub(a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
    a.try_sub(b)
}

pub fn mul(a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
    a.try_mul(b)
}

pub fn div(a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
    a.try_div(b)
}

/// Reduces a Gaussian rational mod p, sending i to the smallest root of −1.
/// `None` when a denominator vanishes mod p or i is needed but p ≢ 1 (mod 4).
pub fn reduce_gaussian(g: &Gaussian, p: u64) -> Option<Fp> {
    let red = |q: &Rational| -> Option<Fp> {
        let pb = BigInt::from(p);
        let n = q.numer().mod_floor(&pb).to_u64()?;
        let d = q.denom().mod_floor(&pb).to_u64()?;
        Fp::from_u64(n, p).div(&Fp::from_u64(d, p))
    };
    let re = red(&g.re)?;
    if Zero::is_zero(&g.im) {
        return Some(re);
    }
    let i = re.imag_unit_like()?;
    Some(re.add(&red(&g.im)?.mul(&i)))
}

// ---------------------------------------------------------------- square root

/// A square root of `x`, adjoining √x when `x` is not a square.
///
/// Inputs in ℚ or ℚ(i) return a value in the same field when possible and an
/// element of ℚ(i)(√x) otherwise. Inputs already in ℚ(i)(√d) must lie in ℚ(i)
/// and have their root in ℚ(i) or ℚ(i)·√d; anything else would need a second
/// radicand. Of the two roots, the one whose leading coordinate pair
/// (re, im) is lexicographically ≥ (0, 0) is returned.
pub fn sqrt_adjoin(x: &Scalar) -> Result<Scalar, ScalarError> {
    let second = |x: &Scalar| ScalarError::SecondExtensionRequired {
        radicand: x.to_string(),
        field: x.descriptor(),
    };
    match x {
        Scalar::Rational(q) => {
            if let Some(r) = rational_sqrt(q) {
                return Ok(Scalar::Rational(r));
            }
            sqrt_adjoin(&Scalar::Gaussian(Gaussian::from_rational(q.clone())))
        }
        Scalar::Gaussian(g) => Ok(match g.sqrt_exact() {
            Some(r) => Scalar::Gaussian(r),
            None => Scalar::Quad(QuadExt::root(g)),
        }),
        Scalar::Quad(q) => {
            let base = q.to_base().ok_or_else(|| second(x))?;
            if let Some(r) = base.sqrt_exact() {
                return Ok(Scalar::Quad(QuadExt::from_base(r, &q.d)));
            }
            // base = s²·d  ⇒  √base = s·√d
            let s = (&base / &q.d).sqrt_exact().ok_or_else(|| second(x))?;
            let r = QuadExt::new(Gaussian::zero(), s, q.d.clone());
            Ok(Scalar::Quad(if r.leading().is_nonnegative_lex() { r } else { Field::neg(&r) }))
        }
        Scalar::Prime(v) => v.sqrt_min().map(Scalar::Prime).ok_or_else(|| second(x)),
        Scalar::Approx(z) => {
            let r = z.abs();
            let re = ((r + z.re) / 2.0).max(0.0).sqrt();
            let im = ((r - z.re) / 2.0).max(0.0).sqrt().copysign(if z.im == 0.0 { 1.0 } else { z.im });
            let mut s = ApproxComplex::new(re, im, z.tol);
            if s.re < 0.0 || (s.re == 0.0 && s.im < 0.0) {
                s = Field::neg(&s);
            }
            Ok(Scalar::Approx(s))
        }
    }
}

// ---------------------------------------------------------------------- JSON

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Rational(String),
    Gaussian(GaussianRepr),
    Quad { a: GaussianRepr, b: GaussianRepr, d: GaussianRepr },
    Prime {
        #[serde(rename = "mod")]
        modulus: u64,
        val: u64,
    },
    Approx { re: f64, im: f64 },
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let g = |x: &Gaussian| GaussianRepr { re: fmt_rational(&x.re), im: fmt_rational(&x.im) };
        let repr = match self {
            Scalar::Rational(q) => ScalarRepr::Rational(fmt_rational(q)),
            Scalar::Gaussian(x) => ScalarRepr::Gaussian(g(x)),
            Scalar::Quad(q) => ScalarRepr::Quad { a: g(&q.a), b: g(&q.b), d: g(&q.d) },
            Scalar::Prime(x) => ScalarRepr::Prime { modulus: x.p, val: x.v },
            Scalar::Approx(z) => ScalarRepr::Approx { re: z.re, im: z.im },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        Ok(match ScalarRepr::deserialize(d)? {
            ScalarRepr::Rational(s) => {
                Scalar::Rational(parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`")))?)
            }
            ScalarRepr::Gaussian(g) => Scalar::Gaussian(g.to_gaussian().map_err(D::Error::custom)?),
            ScalarRepr::Quad { a, b, d } => Scalar::Quad(QuadExt::new(
                a.to_gaussian().map_err(D::Error::custom)?,
                b.to_gaussian().map_err(D::Error::custom)?,
                d.to_gaussian().map_err(D::Error::custom)?,
            )),
            ScalarRepr::Prime { modulus, val } => {
                if !is_prime(modulus) {
                    return Err(D::Error::custom(ScalarError::NotPrime(modulus)));
                }
                Scalar::Prime(Fp::from_u64(val, modulus))
            }
            ScalarRepr::Approx { re, im } => Scalar::Approx(ApproxComplex::new(re, im, DEFAULT_TOL)),
        })
    }
}

/// Converts a scalar decoded from JSON into the given field.
///
/// Approximate values decode with the default tolerance and pick up the
/// field's tolerance here; exact values must already match.
pub fn coerce_to(field: &FieldDescriptor, s: Scalar) -> Result<Scalar, ScalarError> {
    match (field, s) {
        (FieldDescriptor::ApproxC { tol }, Scalar::Approx(z)) => Ok(Scalar::Approx(ApproxComplex::new(z.re, z.im, *tol))),
        (FieldDescriptor::QI, Scalar::Rational(q)) => Ok(Scalar::Gaussian(Gaussian::from_rational(q))),
        (FieldDescriptor::QISqrt { d }, Scalar::Rational(q)) => {
            Ok(Scalar::Quad(QuadExt::from_base(Gaussian::from_rational(q), d)))
        }
        (FieldDescriptor::QISqrt { d }, Scalar::Gaussian(g)) => Ok(Scalar::Quad(QuadExt::from_base(g, d))),
        (f, s) => {
            if s.descriptor() == *f {
                Ok(s)
            } else {
                Err(ScalarError::FieldMismatch { left: f.clone(), right: s.descriptor() })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Gaussian {
        s.parse().unwrap()
    }

    #[test]
    fn gaussian_norm_product() {
        assert_eq!(g("1+2i") * g("1-2i"), Gaussian::from_int(5));
    }

    #[test]
    fn conjugate_product_in_extension() {
        let d = Gaussian::from_int(-3);
        let x = QuadExt::root(&d);
        let prod = x.mul(&x.conj());
        assert_eq!(prod.to_base(), Some(Gaussian::from_int(3)));
    }

    #[test]
    fn prime_field_fraction() {
        let p = 5;
        let half = Fp::new(1, p).div(&Fp::new(2, p)).unwrap();
        let x = Fp::new(3, p).mul(&half).add(&half);
        assert_eq!(x, Fp::new(2, p));
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "3", "-1/2", "i", "-i", "2i", "1/2-1/3i", "3+i", "-7/5+2/9i"] {
            assert_eq!(g(s).to_string(), s, "{s}");
        }
        assert_eq!(g(" 1 + 2i "), Gaussian::from_ints(1, 2));
        assert!("1+".parse::<Gaussian>().is_err());
        assert!("x".parse::<Gaussian>().is_err());
        assert!("1/0".parse::<Gaussian>().is_err());
    }

    #[test]
    fn sqrt_examples() {
        let four = Scalar::Rational(rat_int(4));
        assert_eq!(sqrt_adjoin(&four).unwrap(), Scalar::Rational(rat_int(2)));
        let m1 = Scalar::Gaussian(Gaussian::from_int(-1));
        assert_eq!(sqrt_adjoin(&m1).unwrap(), Scalar::Gaussian(Gaussian::i()));
        let two = Scalar::Gaussian(Gaussian::from_int(2));
        let r = sqrt_adjoin(&two).unwrap();
        assert_eq!(r, Scalar::Quad(QuadExt::root(&Gaussian::from_int(2))));
        assert_eq!(r.mul(&r), Scalar::Quad(QuadExt::from_base(Gaussian::from_int(2), &Gaussian::from_int(2))));
    }

    #[test]
    fn sqrt_of_gaussian_square() {
        let x = g("3+4i");
        assert_eq!(x.sqrt_exact(), Some(g("2+i")));
        assert_eq!(g("-3-4i").sqrt_exact(), Some(g("1-2i")));
        assert_eq!(g("2i").sqrt_exact(), Some(g("1+i")));
        assert_eq!(g("-2i").sqrt_exact(), Some(g("1-i")));
        assert_eq!(g("-4").sqrt_exact(), Some(g("2i")));
        assert_eq!(g("3").sqrt_exact(), None);
    }

    #[test]
    fn sqrt_inside_extension() {
        let d = Gaussian::from_int(2);
        let eight = Scalar::Quad(QuadExt::from_base(Gaussian::from_int(8), &d));
        let r = sqrt_adjoin(&eight).unwrap();
        assert_eq!(r, Scalar::Quad(QuadExt::new(Gaussian::zero(), Gaussian::from_int(2), d.clone())));
        let three = Scalar::Quad(QuadExt::from_base(Gaussian::from_int(3), &d));
        assert!(matches!(sqrt_adjoin(&three), Err(ScalarError::SecondExtensionRequired { .. })));
        let mixed = Scalar::Quad(QuadExt::new(Gaussian::one(), Gaussian::one(), d));
        assert!(matches!(sqrt_adjoin(&mixed), Err(ScalarError::SecondExtensionRequired { .. })));
    }

    #[test]
    fn mismatch_and_division_errors() {
        let a = Scalar::Gaussian(Gaussian::one());
        let b = Scalar::Prime(Fp::new(1, 5));
        assert!(matches!(add(&a, &b), Err(ScalarError::FieldMismatch { .. })));
        let z = Scalar::Gaussian(Gaussian::zero());
        assert_eq!(div(&a, &z), Err(ScalarError::DivisionByZero));
        let q1 = Scalar::Quad(QuadExt::root(&Gaussian::from_int(2)));
        let q2 = Scalar::Quad(QuadExt::root(&Gaussian::from_int(3)));
        assert!(matches!(mul(&q1, &q2), Err(ScalarError::FieldMismatch { .. })));
        let f5 = Scalar::Prime(Fp::new(1, 5));
        let f7 = Scalar::Prime(Fp::new(1, 7));
        assert!(matches!(add(&f5, &f7), Err(ScalarError::FieldMismatch { .. })));
    }

    #[test]
    fn imag_unit_mod_13_is_5() {
        assert_eq!(Fp::new(0, 13).imag_unit_like(), Some(Fp::new(5, 13)));
        assert_eq!(Fp::new(0, 7).imag_unit_like(), None);
        assert_eq!(reduce_gaussian(&Gaussian::i(), 13), Some(Fp::new(5, 13)));
        assert_eq!(reduce_gaussian(&g("1/5"), 5), None);
        assert_eq!(reduce_gaussian(&g("3/2+i"), 5), Some(Fp::new(1, 5)));
        assert_eq!(reduce_gaussian(&g("i"), 7), None);
        assert_eq!(reduce_gaussian(&g("3/2"), 5), Some(Fp::new(4, 5)));
    }

    #[test]
    fn json_encodings() {
        let cases = vec![
            (Scalar::Rational(rat(3, 4)), r#""3/4""#),
            (Scalar::Gaussian(g("1/2-i")), r#"{"re":"1/2","im":"-1"}"#),
            (Scalar::Prime(Fp::new(3, 7)), r#"{"mod":7,"val":3}"#),
            (
                Scalar::Quad(QuadExt::root(&Gaussian::from_int(2))),
                r#"{"a":{"re":"0","im":"0"},"b":{"re":"1","im":"0"},"d":{"re":"2","im":"0"}}"#,
            ),
        ];
        for (s, json) in cases {
            assert_eq!(serde_json::to_string(&s).unwrap(), json);
            let back: Scalar = serde_json::from_str(json).unwrap();
            assert_eq!(back, s);
        }
        let approx: Scalar = serde_json::from_str(r#"{"re":0.5,"im":-1.0}"#).unwrap();
        assert!(matches!(approx, Scalar::Approx(_)));
    }

    #[test]
    fn descriptor_json() {
        let d = FieldDescriptor::QISqrt { d: Gaussian::from_int(2) };
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"kind":"Q_i_sqrt","d":{"re":"2","im":"0"}}"#);
        assert_eq!(serde_json::from_str::<FieldDescriptor>(&s).unwrap(), d);
        let f = serde_json::to_string(&FieldDescriptor::Fp { p: 13 }).unwrap();
        assert_eq!(f, r#"{"kind":"F_p","p":13}"#);
    }

    #[test]
    fn approx_sqrt_branch() {
        let z = Scalar::Approx(ApproxComplex::new(-4.0, 0.0, 1e-9));
        let r = sqrt_adjoin(&z).unwrap();
        assert_eq!(r, Scalar::Approx(ApproxComplex::new(0.0, 2.0, 1e-9)));
    }
}
