//! Exact arithmetic in the number field Q(i, sqrt2).
//!
//! A scalar is `a + b*sqrt2 + (c + d*sqrt2)*i` with arbitrary-precision
//! rational components. The field is closed under every operation the rest
//! of the crate performs: sqrt2 enters through the unitary change of basis
//! for sp(2n,R), i through complex structures and skew-Hermitian bases.
//! Equality is decidable and exact, so there are no tolerances anywhere.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::Rational;

/// Errors from scalar arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    /// Inversion or division by zero; carries the offending operand in
    /// canonical text form.
    #[error("division by zero: operand {operand}")]
    DivisionByZero { operand: String },
    /// Input did not match the canonical scalar grammar.
    #[error("invalid scalar literal {input:?}: {reason}")]
    Parse { input: String, reason: &'static str },
    /// Input did not match the rational grammar "num" or "num/den".
    #[error("invalid rational literal {input:?}: {reason}")]
    ParseRational { input: String, reason: &'static str },
}

pub(crate) fn rq(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn rq2(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "num" or "num/den" into an exact rational. Rejects floats,
/// whitespace, and zero denominators instead of panicking.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let bad = |reason| ScalarError::ParseRational { input: s.to_string(), reason };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer = BigInt::from_str(num).map_err(|_| bad("numerator is not an integer"))?;
    let denom = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| bad("denominator is not an integer"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

/// An element of Q(i, sqrt2): `a + b*sqrt2 + (c + d*sqrt2)*i`.
///
/// Components are arbitrary-precision rationals kept in lowest terms with
/// positive denominator (the rational type maintains this on every
/// operation). `x == 0` iff all four components are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldScalar {
    /// Rational part.
    pub a: Rational,
    /// Coefficient of sqrt2.
    pub b: Rational,
    /// Coefficient of i.
    pub c: Rational,
    /// Coefficient of i*sqrt2.
    pub d: Rational,
}

// Multiplication in the real subfield Q(sqrt2): (x0 + x1*sqrt2)(y0 + y1*sqrt2).
fn qmul(x: (&Rational, &Rational), y: (&Rational, &Rational)) -> (Rational, Rational) {
    let two = rq(2);
    (x.0 * y.0 + two * x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

impl FieldScalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        FieldScalar { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::new(rq(0), rq(0), rq(0), rq(0))
    }

    pub fn one() -> Self {
        Self::new(rq(1), rq(0), rq(0), rq(0))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(rq(0), rq(0), rq(1), rq(0))
    }

    pub fn sqrt2() -> Self {
        Self::new(rq(0), rq(1), rq(0), rq(0))
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(rq(n), rq(0), rq(0), rq(0))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, rq(0), rq(0), rq(0))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True when the value lies in Q (no sqrt2 and no imaginary part).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Complex conjugation: fixes a, b and negates c, d. A field
    /// automorphism: conj(xy) = conj(x)conj(y), conj(conj(x)) = x.
    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    /// The Galois automorphism sqrt2 -> -sqrt2: fixes a, c and negates b, d.
    pub fn conj_sqrt2(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), self.c.clone(), -self.d.clone())
    }

    /// Left multiplication by i without allocating a full product.
    pub fn mul_i(&self) -> Self {
        Self::new(-self.c.clone(), -self.d.clone(), self.a.clone(), self.b.clone())
    }

    pub fn times_rat(&self, r: &Rational) -> Self {
        Self::new(&self.a * r, &self.b * r, &self.c * r, &self.d * r)
    }

    /// Exact inverse. With u + v*i (u, v in the real subfield Q(sqrt2)),
    /// u^2 + v^2 is a nonzero element of Q(sqrt2) whenever x != 0, and a
    /// nonzero e + f*sqrt2 has rational norm e^2 - 2f^2 != 0 because sqrt2
    /// is irrational; both denominators are therefore safe.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero { operand: self.canonical_text() });
        }
        let u = (&self.a, &self.b);
        let v = (&self.c, &self.d);
        let (we, wf) = {
            let uu = qmul(u, u);
            let vv = qmul(v, v);
            (uu.0 + vv.0, uu.1 + vv.1)
        };
        let norm = &we * &we - rq(2) * &wf * &wf;
        debug_assert!(!norm.is_zero());
        let winv = (&we / &norm, -(&wf / &norm));
        let re = qmul(u, (&winv.0, &winv.1));
        let im = qmul(v, (&winv.0, &winv.1));
        Ok(Self::new(re.0, re.1, -im.0, -im.1))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// Square root of a nonnegative rational inside Q(sqrt2), when one
    /// exists: either a rational s with s^2 = r, or s*sqrt2 with 2s^2 = r.
    /// Returns the nonnegative root.
    pub fn sqrt_of_rational(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if let Some(s) = rational_sqrt(r) {
            return Some(Self::from_rational(s));
        }
        let half = r / rq(2);
        rational_sqrt(&half).map(|s| Self::new(rq(0), s, rq(0), rq(0)))
    }

    /// Canonical text form `a + b*r2 + (c + d*r2)*i`, with each rational as
    /// `num` or `num/den` in lowest terms. Used in JSON reports and golden
    /// files; `FromStr` parses it back.
    pub fn canonical_text(&self) -> String {
        format!("{} + {}*r2 + ({} + {}*r2)*i", self.a, self.b, self.c, self.d)
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    (&ns * &ns == *r.numer() && &ds * &ds == *r.denom()).then(|| Rational::new(ns, ds))
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

impl Add<&FieldScalar> for &FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        FieldScalar::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c, &self.d + &rhs.d)
    }
}

impl Sub<&FieldScalar> for &FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        FieldScalar::new(&self.a - &rhs.a, &self.b - &rhs.b, &self.c - &rhs.c, &self.d - &rhs.d)
    }
}

impl Mul<&FieldScalar> for &FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        let u1 = (&self.a, &self.b);
        let v1 = (&self.c, &self.d);
        let u2 = (&rhs.a, &rhs.b);
        let v2 = (&rhs.c, &rhs.d);
        let (re0, re1) = {
            let p = qmul(u1, u2);
            let q = qmul(v1, v2);
            (p.0 - q.0, p.1 - q.1)
        };
        let (im0, im1) = {
            let p = qmul(u1, v2);
            let q = qmul(v1, u2);
            (p.0 + q.0, p.1 + q.1)
        };
        FieldScalar::new(re0, re1, im0, im1)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldScalar> for &FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&FieldScalar> for FieldScalar {
    fn add_assign(&mut self, rhs: &FieldScalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
        self.c += &rhs.c;
        self.d += &rhs.d;
    }
}

impl SubAssign<&FieldScalar> for FieldScalar {
    fn sub_assign(&mut self, rhs: &FieldScalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
        self.c -= &rhs.c;
        self.d -= &rhs.d;
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldScalar({})", self.canonical_text())
    }
}

impl FromStr for FieldScalar {
    type Err = ScalarError;

    /// Parses the canonical form emitted by [`FieldScalar::canonical_text`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason| ScalarError::Parse { input: s.to_string(), reason };
        let body = s.strip_suffix("*r2)*i").ok_or_else(|| bad("missing \"*r2)*i\" suffix"))?;
        let (real, imag) = body.split_once(" + (").ok_or_else(|| bad("missing imaginary part"))?;
        let (a, b) = real.split_once(" + ").ok_or_else(|| bad("missing sqrt2 term"))?;
        let b = b.strip_suffix("*r2").ok_or_else(|| bad("missing \"*r2\" on second term"))?;
        let (c, d) = imag.split_once(" + ").ok_or_else(|| bad("missing sqrt2 term in imaginary part"))?;
        Ok(FieldScalar::new(
            parse_rational(a)?,
            parse_rational(b)?,
            parse_rational(c)?,
            parse_rational(d)?,
        ))
    }
}

impl Serialize for FieldScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.canonical_text())
    }
}

impl<'de> Deserialize<'de> for FieldScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}
