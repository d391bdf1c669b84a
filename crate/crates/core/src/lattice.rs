//! Exact integer and rational plane arithmetic.
//!
//! Both the lattice `N` of points and its dual `M` of linear functionals are
//! modelled as `ℤ²` (or `ℚ²`), with the pairing `⟨m, n⟩` realised as the
//! ordinary dot product. Whether a value is a point or a functional is a
//! matter of how it is used, not of its type.
//!
//! Every coordinate is an arbitrary-precision integer, so nothing here can
//! overflow.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact rational number.
///
/// Always held in lowest terms with a positive denominator, so structural
/// equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// `numer / denom`, reduced.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// Shorthand for small literals. Panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Rational::new(numer, denom).expect("nonzero denominator")
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    /// Greatest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        Integer::div_floor(self.0.numer(), self.0.denom())
    }

    /// Least integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        -Integer::div_floor(&-self.0.numer(), self.0.denom())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Decimal rendering rounded to `digits` places, computed with integers
    /// only. Used for drawing coordinates.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        // round half away from zero
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let rounded = if scaled.is_negative() {
            -(-scaled + half).floor().to_integer()
        } else {
            (scaled + half).floor().to_integer()
        };
        let sign = if rounded.is_negative() { "-" } else { "" };
        let (int_part, frac_part) = rounded.abs().div_rem(&scale);
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        let frac = format!("{:0>width$}", frac_part, width = digits as usize);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac}")
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<&BigInt> for Rational {
    fn from(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
}

macro_rules! rational_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// `p/q` in lowest terms, or just `p` when `q = 1`.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let parse = |t: &str| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
        };
        Rational::new(parse(n)?, parse(d)?)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational::from_integer(v))
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

/// Integers go out as JSON numbers when they fit in an `i64` and as decimal
/// strings otherwise; both forms are accepted on input.
pub(crate) mod int_repr {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        match n.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.collect_str(n),
        }
    }

    pub(crate) struct IntVisitor;

    impl Visitor<'_> for IntVisitor {
        type Value = BigInt;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("an integer")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
            Ok(v.into())
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
            Ok(v.into())
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
            v.trim().parse().map_err(E::custom)
        }
    }

    pub(crate) struct Wrapped(pub BigInt);

    impl<'de> Deserialize<'de> for Wrapped {
        fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
            deserializer.deserialize_any(IntVisitor).map(Wrapped)
        }
    }

    pub(crate) struct Ref<'a>(pub &'a BigInt);

    impl Serialize for Ref<'_> {
        fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
            serialize(self.0, serializer)
        }
    }

    pub fn serialize_seq<S: Serializer>(ns: &[BigInt], serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(ns.iter().map(Ref))
    }
}

/// Determinant of the 2×2 matrix with `a` and `b` as columns.
pub trait Det2 {
    type Output;
    fn det2(&self, other: &Self) -> Self::Output;
}

/// `a.x·b.y − a.y·b.x`.
pub fn det2<P: Det2>(a: &P, b: &P) -> P::Output {
    a.det2(b)
}

/// A point of the integer lattice `ℤ²`.
///
/// Ordering is lexicographic in `(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticePoint {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        LatticePoint {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn origin() -> Self {
        LatticePoint::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn det(&self, other: &LatticePoint) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &LatticePoint) -> BigInt {
        &self.x * &other.x + &self.y * &other.y
    }

    /// `gcd(|x|, |y|)`; zero only for the origin.
    pub fn content(&self) -> BigInt {
        self.x.gcd(&self.y)
    }

    /// True iff the coordinates are coprime.
    pub fn is_primitive(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.content().is_one())
    }

    /// The primitive lattice vector on the ray through `self`.
    pub fn primitive(&self) -> Result<LatticePoint> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let g = self.content();
        Ok(LatticePoint::new(&self.x / &g, &self.y / &g))
    }

    pub fn scale(&self, k: &BigInt) -> LatticePoint {
        LatticePoint::new(&self.x * k, &self.y * k)
    }

    /// Exact division of both coordinates, or `None` if not integral.
    pub fn div_exact(&self, k: &BigInt) -> Option<LatticePoint> {
        if k.is_zero() {
            return None;
        }
        let (qx, rx) = self.x.div_rem(k);
        let (qy, ry) = self.y.div_rem(k);
        (rx.is_zero() && ry.is_zero()).then(|| LatticePoint::new(qx, qy))
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint::new(Rational::from(&self.x), Rational::from(&self.y))
    }

    /// Upper half-plane test used for exact angular sorting: `0` for
    /// directions in `[0, π)`, `1` for `[π, 2π)`.
    pub(crate) fn half(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }
}

impl Det2 for LatticePoint {
    type Output = BigInt;
    fn det2(&self, other: &Self) -> BigInt {
        self.det(other)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: LatticePoint) -> LatticePoint {
        &self + &rhs
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: LatticePoint) -> LatticePoint {
        &self - &rhs
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-&self.x, -&self.y)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&int_repr::Ref(&self.x))?;
        t.serialize_element(&int_repr::Ref(&self.y))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PointVisitor;

        impl<'de> Visitor<'de> for PointVisitor {
            type Value = LatticePoint;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a two-element integer array [x, y]")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<LatticePoint, A::Error> {
                let x: int_repr::Wrapped = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let y: int_repr::Wrapped = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(LatticePoint::new(x.0, y.0))
            }
        }

        deserializer.deserialize_seq(PointVisitor)
    }
}

/// A point (or functional) with rational coordinates.
///
/// Serialized as `["p/q", "r/s"]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RationalPoint { x, y }
    }

    pub fn frac(x: (i64, i64), y: (i64, i64)) -> Self {
        RationalPoint::new(Rational::frac(x.0, x.1), Rational::frac(y.0, y.1))
    }

    pub fn det(&self, other: &RationalPoint) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &RationalPoint) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// The pairing `⟨self, n⟩` of a functional with a lattice point.
    pub fn pair(&self, n: &LatticePoint) -> Rational {
        &self.x * Rational::from(&n.x) + &self.y * Rational::from(&n.y)
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_lattice(&self) -> Option<LatticePoint> {
        Some(LatticePoint::new(self.x.to_integer()?, self.y.to_integer()?))
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (&self.x, &self.y).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (x, y) = <(Rational, Rational)>::deserialize(deserializer)?;
        Ok(RationalPoint::new(x, y))
    }
}

impl Det2 for RationalPoint {
    type Output = Rational;
    fn det2(&self, other: &Self) -> Rational {
        self.det(other)
    }
}

impl From<&LatticePoint> for RationalPoint {
    fn from(p: &LatticePoint) -> Self {
        p.to_rational()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &RationalPoint {
    type Output = RationalPoint;
    fn add(self, rhs: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &RationalPoint {
    type Output = RationalPoint;
    fn sub(self, rhs: &RationalPoint) -> RationalPoint {
        RationalPoint::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

/// The functional `m` with `⟨m, p⟩ = ⟨m, q⟩ = −1`, for `p`, `q` not
/// collinear with the origin.
pub fn edge_functional(p: &LatticePoint, q: &LatticePoint) -> RationalPoint {
    let d = p.det(q);
    debug_assert!(!d.is_zero(), "edge through the origin has no functional");
    RationalPoint::new(
        Rational::new(&p.y - &q.y, d.clone()).expect("nonzero"),
        Rational::new(&q.x - &p.x, d).expect("nonzero"),
    )
}

/// Same as [`edge_functional`] for rational endpoints.
pub fn edge_functional_rational(p: &RationalPoint, q: &RationalPoint) -> RationalPoint {
    let d = p.det(q);
    debug_assert!(!d.is_zero(), "edge through the origin has no functional");
    RationalPoint::new(&(&p.y - &q.y) / &d, &(&q.x - &p.x) / &d)
}

/// An integer 2×2 matrix with determinant ±1, stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Unimodular {
    rows: [[BigInt; 2]; 2],
}

impl Unimodular {
    pub fn new(rows: [[i64; 2]; 2]) -> Result<Self> {
        Unimodular::from_big(rows.map(|r| r.map(BigInt::from)))
    }

    pub fn from_big(rows: [[BigInt; 2]; 2]) -> Result<Self> {
        let det = &rows[0][0] * &rows[1][1] - &rows[0][1] * &rows[1][0];
        if det.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(det));
        }
        Ok(Unimodular { rows })
    }

    pub fn identity() -> Self {
        Unimodular::new([[1, 0], [0, 1]]).expect("identity")
    }

    pub fn rows(&self) -> &[[BigInt; 2]; 2] {
        &self.rows
    }

    /// ±1.
    pub fn det(&self) -> BigInt {
        &self.rows[0][0] * &self.rows[1][1] - &self.rows[0][1] * &self.rows[1][0]
    }

    pub fn apply(&self, p: &LatticePoint) -> LatticePoint {
        let [[a, b], [c, d]] = &self.rows;
        LatticePoint::new(a * &p.x + b * &p.y, c * &p.x + d * &p.y)
    }

    pub fn apply_rational(&self, p: &RationalPoint) -> RationalPoint {
        let [[a, b], [c, d]] = &self.rows;
        let (a, b, c, d) = (
            Rational::from(a),
            Rational::from(b),
            Rational::from(c),
            Rational::from(d),
        );
        RationalPoint::new(&a * &p.x + &b * &p.y, &c * &p.x + &d * &p.y)
    }

    /// `self · other`.
    pub fn compose(&self, other: &Unimodular) -> Unimodular {
        let m =
            |i: usize, j: usize| &self.rows[i][0] * &other.rows[0][j] + &self.rows[i][1] * &other.rows[1][j];
        Unimodular {
            rows: [[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]],
        }
    }

    pub fn inverse(&self) -> Unimodular {
        let det = self.det();
        let [[a, b], [c, d]] = &self.rows;
        Unimodular {
            rows: [[d * &det, -b * &det], [-c * &det, a * &det]],
        }
    }

    pub fn transpose(&self) -> Unimodular {
        let [[a, b], [c, d]] = self.rows.clone();
        Unimodular {
            rows: [[a, c], [b, d]],
        }
    }

    /// `(Mᵀ)⁻¹`, the map induced on functionals.
    pub fn dual(&self) -> Unimodular {
        self.transpose().inverse()
    }
}

impl fmt::Debug for Unimodular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.rows;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Matrix–vector product with a unimodular matrix given by rows.
pub fn apply_unimodular(rows: [[i64; 2]; 2], p: &LatticePoint) -> Result<LatticePoint> {
    Ok(Unimodular::new(rows)?.apply(p))
}

/// Non-negative residue of `a` modulo `m > 0`.
pub(crate) fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    Integer::mod_floor(a, m)
}

/// Inverse of `a` modulo `m > 1`, in `[1, m)`.
pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(mod_floor(&e.x, m))
}

/// A matrix `M` with `det M = 1` and `M·p = (1, 0)`, for primitive `p`.
pub(crate) fn basis_to_x_axis(p: &LatticePoint) -> Unimodular {
    let e = p.x.extended_gcd(&p.y);
    debug_assert!(e.gcd.is_one());
    Unimodular {
        rows: [[e.x, e.y], [-&p.y, p.x.clone()]],
    }
}
