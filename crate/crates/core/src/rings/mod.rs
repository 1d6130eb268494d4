//! Exact arithmetic over the supported euclidean domains.
//!
//! Four rings are available: ℤ, ℚ, the dyadic localization ℤ[1/2] and
//! F_p[x]. Every element carries its [`RingSpec`], and all binary operations
//! require matching specs. Values are always stored canonically, so
//! structural equality is ring equality.
//!
//! The euclidean norm used by [`RingElement::div_rem`] is
//!
//! | ring      | norm of a nonzero element |
//! |-----------|---------------------------|
//! | ℤ         | absolute value            |
//! | ℚ         | 1                         |
//! | ℤ[1/2]    | absolute value of the odd part of the mantissa |
//! | F_p[x]    | degree + 1                |
//!
//! and 0 for zero. Shifting the polynomial degree by one keeps zero strictly
//! below every nonzero element without changing comparisons between nonzero
//! elements.

mod fpx;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub use poly::UniPoly;

/// The ambient euclidean domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    DyadicRationals,
    PolynomialOverPrimeField(u64),
}

impl RingSpec {
    /// F_p[x], checking that `p` is prime.
    pub fn polynomials_mod(p: u64) -> Result<Self> {
        if fpx::is_prime(p) {
            Ok(RingSpec::PolynomialOverPrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Whether 2 is invertible, i.e. whether R = 2R.
    pub fn two_is_unit(self) -> bool {
        match self {
            RingSpec::Integers => false,
            RingSpec::Rationals | RingSpec::DyadicRationals => true,
            RingSpec::PolynomialOverPrimeField(p) => p != 2,
        }
    }

    pub fn zero(self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(self) -> RingElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> RingElement {
        self.from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(self, v: BigInt) -> RingElement {
        let value = match self {
            RingSpec::Integers => Value_::Int(v),
            RingSpec::Rationals => Value_::Rat(BigRational::from_integer(v)),
            RingSpec::DyadicRationals => dyadic(v, 0),
            RingSpec::PolynomialOverPrimeField(p) => {
                let c = v.mod_floor(&BigInt::from(p)).to_u64().unwrap();
                Value_::Poly(fpx::trim(vec![c]))
            }
        };
        RingElement { ring: self, value }
    }

    /// `num / 2^k` in ℤ[1/2]; the fraction `num / 2^k` elsewhere when it exists.
    pub fn dyadic(self, num: i64, k: u32) -> Result<RingElement> {
        match self {
            RingSpec::DyadicRationals => Ok(RingElement { ring: self, value: dyadic(BigInt::from(num), -(k as i64)) }),
            _ => self.from_i64(num).checked_mul(&self.from_bigint(pow2(k as u64)).invert_unit()?),
        }
    }

    /// p/q in ℚ.
    pub fn rational(self, p: i64, q: i64) -> Result<RingElement> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        match self {
            RingSpec::Rationals => Ok(RingElement {
                ring: self,
                value: Value_::Rat(BigRational::new(p.into(), q.into())),
            }),
            _ => self.from_i64(p).checked_mul(&self.from_i64(q).invert_unit()?),
        }
    }

    /// The polynomial with the given ascending coefficients; only for F_p[x].
    pub fn poly(self, coeffs: &[i64]) -> Result<RingElement> {
        match self {
            RingSpec::PolynomialOverPrimeField(p) => Ok(RingElement {
                ring: self,
                value: Value_::Poly(fpx::trim(coeffs.iter().map(|&c| fpx::from_i64(c, p)).collect())),
            }),
            _ => Err(Error::Unsupported(format!("{self} has no polynomial variable"))),
        }
    }

    /// The variable `x` of F_p[x].
    pub fn variable(self) -> Result<RingElement> {
        self.poly(&[0, 1])
    }

    /// JSON tag: `"ZZ"`, `"QQ"`, `"ZZ_half"` or `{"GFpX": p}`.
    pub fn to_json(self) -> Value {
        match self {
            RingSpec::Integers => Value::from("ZZ"),
            RingSpec::Rationals => Value::from("QQ"),
            RingSpec::DyadicRationals => Value::from("ZZ_half"),
            RingSpec::PolynomialOverPrimeField(p) => serde_json::json!({ "GFpX": p }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            Value::Object(map) => match map.get("GFpX").and_then(Value::as_u64) {
                Some(p) if map.len() == 1 => RingSpec::polynomials_mod(p),
                _ => Err(Error::Parse(format!("bad ring tag {v}"))),
            },
            _ => Err(Error::Parse(format!("bad ring tag {v}"))),
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    /// Accepts the JSON tags plus `GFpX:p` / `GF5X`-style shorthands for the CLI.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ZZ" => Ok(RingSpec::Integers),
            "QQ" => Ok(RingSpec::Rationals),
            "ZZ_half" => Ok(RingSpec::DyadicRationals),
            _ => {
                let digits = s
                    .strip_prefix("GFpX:")
                    .or_else(|| s.strip_prefix("GF").and_then(|r| r.strip_suffix('X')))
                    .ok_or_else(|| Error::Parse(format!("unknown ring {s:?}")))?;
                let p = digits.parse().map_err(|_| Error::Parse(format!("unknown ring {s:?}")))?;
                RingSpec::polynomials_mod(p)
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "ZZ"),
            RingSpec::Rationals => write!(f, "QQ"),
            RingSpec::DyadicRationals => write!(f, "ZZ[1/2]"),
            RingSpec::PolynomialOverPrimeField(p) => write!(f, "GF({p})[x]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value_ {
    Int(BigInt),
    Rat(BigRational),
    /// `mantissa * 2^exp`, mantissa odd, or zero with exp = 0.
    Dyadic { mantissa: BigInt, exp: i64 },
    Poly(Vec<u64>),
}

fn dyadic(mut mantissa: BigInt, mut exp: i64) -> Value_ {
    if mantissa.is_zero() {
        return Value_::Dyadic { mantissa, exp: 0 };
    }
    let tz = mantissa.trailing_zeros().unwrap_or(0);
    if tz > 0 {
        mantissa >>= tz;
        exp += tz as i64;
    }
    Value_::Dyadic { mantissa, exp }
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// An exact element of one of the supported rings, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingSpec,
    value: Value_,
}

impl RingElement {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value_::Int(v) => v.is_zero(),
            Value_::Rat(v) => v.is_zero(),
            Value_::Dyadic { mantissa, .. } => mantissa.is_zero(),
            Value_::Poly(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    fn check(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring, other.ring))
        }
    }

    fn with(&self, value: Value_) -> RingElement {
        RingElement { ring: self.ring, value }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value_::Int(a), Value_::Int(b)) => Value_::Int(a + b),
            (Value_::Rat(a), Value_::Rat(b)) => Value_::Rat(a + b),
            (Value_::Dyadic { mantissa: m1, exp: e1 }, Value_::Dyadic { mantissa: m2, exp: e2 }) => {
                if m1.is_zero() {
                    return Ok(other.clone());
                }
                if m2.is_zero() {
                    return Ok(self.clone());
                }
                let e = (*e1).min(*e2);
                let a = m1 << (e1 - e) as u64;
                let b = m2 << (e2 - e) as u64;
                dyadic(a + b, e)
            }
            (Value_::Poly(a), Value_::Poly(b)) => Value_::Poly(fpx::add(a, b, self.modulus())),
            _ => unreachable!("ring tag and payload disagree"),
        };
        Ok(self.with(value))
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value_::Int(a), Value_::Int(b)) => Value_::Int(a * b),
            (Value_::Rat(a), Value_::Rat(b)) => Value_::Rat(a * b),
            (Value_::Dyadic { mantissa: m1, exp: e1 }, Value_::Dyadic { mantissa: m2, exp: e2 }) => {
                dyadic(m1 * m2, e1 + e2)
            }
            (Value_::Poly(a), Value_::Poly(b)) => Value_::Poly(fpx::mul(a, b, self.modulus())),
            _ => unreachable!("ring tag and payload disagree"),
        };
        Ok(self.with(value))
    }

    fn neg_ref(&self) -> RingElement {
        let value = match &self.value {
            Value_::Int(a) => Value_::Int(-a),
            Value_::Rat(a) => Value_::Rat(-a),
            Value_::Dyadic { mantissa, exp } => Value_::Dyadic { mantissa: -mantissa, exp: *exp },
            Value_::Poly(a) => Value_::Poly(fpx::neg(a, self.modulus())),
        };
        self.with(value)
    }

    fn modulus(&self) -> u64 {
        match self.ring {
            RingSpec::PolynomialOverPrimeField(p) => p,
            _ => unreachable!(),
        }
    }

    pub fn pow(&self, mut e: u32) -> RingElement {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The euclidean norm described in the module docs.
    pub fn euclidean_norm(&self) -> BigUint {
        if self.is_zero() {
            return BigUint::zero();
        }
        match &self.value {
            Value_::Int(a) => a.magnitude().clone(),
            Value_::Rat(_) => BigUint::one(),
            Value_::Dyadic { mantissa, .. } => mantissa.magnitude().clone(),
            Value_::Poly(c) => BigUint::from(c.len()),
        }
    }

    /// Division with remainder: `self = q * b + r` with `r = 0` or
    /// `N(r) < N(b)`.
    pub fn div_rem(&self, b: &RingElement) -> Result<(RingElement, RingElement)> {
        self.check(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = match (&self.value, &b.value) {
            (Value_::Int(x), Value_::Int(y)) => {
                let (q, r) = x.div_rem(y);
                (Value_::Int(q), Value_::Int(r))
            }
            (Value_::Rat(x), Value_::Rat(y)) => (Value_::Rat(x / y), Value_::Rat(BigRational::zero())),
            (Value_::Dyadic { mantissa: ma, exp: ka }, Value_::Dyadic { mantissa: mb, exp: kb }) => {
                // a = ma 2^ka, b = mb 2^kb with mb odd. Divide the integer ma by mb,
                // then rescale: the remainder keeps an odd part bounded by |r'| < |mb|.
                let (q, r) = ma.div_rem(mb);
                (dyadic(q, ka - kb), dyadic(r, *ka))
            }
            (Value_::Poly(x), Value_::Poly(y)) => {
                let (q, r) = fpx::div_rem(x, y, self.modulus());
                (Value_::Poly(q), Value_::Poly(r))
            }
            _ => unreachable!("ring tag and payload disagree"),
        };
        Ok((self.with(q), self.with(r)))
    }

    /// Exact quotient; fails when `b` does not divide `self`.
    pub fn exact_div(&self, b: &RingElement) -> Result<RingElement> {
        let (q, r) = self.div_rem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Unsupported(format!("{b} does not divide {self}")))
        }
    }

    /// Whether `b` divides `self`.
    pub fn divisible_by(&self, b: &RingElement) -> Result<bool> {
        self.check(b)?;
        if b.is_zero() {
            return Ok(self.is_zero());
        }
        Ok(self.div_rem(b)?.1.is_zero())
    }

    /// Extended euclid: returns `(g, s, t)` with `g = s*self + t*b`.
    pub fn gcd_ext(&self, b: &RingElement) -> Result<(RingElement, RingElement, RingElement)> {
        self.check(b)?;
        if self.is_zero() && b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ring = self.ring;
        let (mut old_r, mut r) = (self.clone(), b.clone());
        let (mut old_s, mut s) = (ring.one(), ring.zero());
        let (mut old_t, mut t) = (ring.zero(), ring.one());
        while !r.is_zero() {
            let (q, rem) = old_r.div_rem(&r)?;
            old_r = std::mem::replace(&mut r, rem);
            let next_s = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, next_s);
            let next_t = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, next_t);
        }
        Ok((old_r, old_s, old_t))
    }

    pub fn is_unit(&self) -> bool {
        match &self.value {
            Value_::Int(a) => a.magnitude().is_one(),
            Value_::Rat(a) => !a.is_zero(),
            Value_::Dyadic { mantissa, .. } => mantissa.magnitude().is_one(),
            Value_::Poly(c) => c.len() == 1,
        }
    }

    pub fn invert_unit(&self) -> Result<RingElement> {
        if !self.is_unit() {
            return Err(Error::NotUnit(self.to_string()));
        }
        let value = match &self.value {
            Value_::Int(a) => Value_::Int(a.clone()),
            Value_::Rat(a) => Value_::Rat(a.recip()),
            Value_::Dyadic { mantissa, exp } => Value_::Dyadic { mantissa: mantissa.clone(), exp: -exp },
            Value_::Poly(c) => Value_::Poly(vec![fpx::inv_mod(c[0], self.modulus())]),
        };
        Ok(self.with(value))
    }

    /// The unique `y` with `2y = self`. Requires R = 2R.
    pub fn halve(&self) -> Result<RingElement> {
        if !self.ring.two_is_unit() {
            return Err(Error::TwoNotUnit(self.ring));
        }
        let half = self.ring.from_i64(2).invert_unit()?;
        Ok(self * &half)
    }

    /// Value at an integer point; only meaningful in F_p[x].
    pub fn eval_poly_at(&self, x: i64) -> Result<RingElement> {
        match &self.value {
            Value_::Poly(c) => {
                let p = self.modulus();
                Ok(self.ring.from_i64(fpx::eval(c, fpx::from_i64(x, p), p) as i64))
            }
            _ => Err(Error::Unsupported(format!("{} is not a polynomial ring", self.ring))),
        }
    }

    /// Degree in F_p[x]; `None` for zero or outside F_p[x].
    pub fn degree(&self) -> Option<usize> {
        match &self.value {
            Value_::Poly(c) if !c.is_empty() => Some(c.len() - 1),
            _ => None,
        }
    }

    /// JSON encoding: strings for ℤ/ℚ/ℤ[1/2], ascending coefficient arrays for F_p[x].
    pub fn to_json(&self) -> Value {
        match &self.value {
            Value_::Poly(c) => Value::from(c.clone()),
            _ => Value::from(self.to_string()),
        }
    }

    pub fn from_json(ring: RingSpec, v: &Value) -> Result<RingElement> {
        match (ring, v) {
            (RingSpec::PolynomialOverPrimeField(p), Value::Array(items)) => {
                let coeffs = items
                    .iter()
                    .map(|c| {
                        c.as_i64()
                            .map(|c| fpx::from_i64(c, p))
                            .ok_or_else(|| Error::Parse(format!("bad coefficient {c}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(RingElement { ring, value: Value_::Poly(fpx::trim(coeffs)) })
            }
            (RingSpec::PolynomialOverPrimeField(_), Value::Number(n)) => n
                .as_i64()
                .map(|c| ring.from_i64(c))
                .ok_or_else(|| Error::Parse(format!("bad entry {v}"))),
            (_, Value::String(s)) => RingElement::parse(ring, s),
            (_, Value::Number(n)) => n
                .as_i64()
                .map(|c| ring.from_i64(c))
                .ok_or_else(|| Error::Parse(format!("bad entry {v}"))),
            _ => Err(Error::Parse(format!("bad entry {v} for ring {ring}"))),
        }
    }

    /// Parses `"3"`, `"-5/8"`; dyadic denominators must be powers of two.
    pub fn parse(ring: RingSpec, s: &str) -> Result<RingElement> {
        let bad = || Error::Parse(format!("bad entry {s:?} for ring {ring}"));
        let (num, den) = match s.trim().split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (s.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        let q = BigRational::new(num, den);
        match ring {
            RingSpec::Rationals => Ok(RingElement { ring, value: Value_::Rat(q) }),
            RingSpec::Integers if q.is_integer() => Ok(ring.from_bigint(q.to_integer())),
            RingSpec::DyadicRationals => {
                let d = q.denom().clone();
                let k = d.trailing_zeros().unwrap_or(0);
                if d != pow2(k) {
                    return Err(bad());
                }
                Ok(RingElement { ring, value: dyadic(q.numer().clone(), -(k as i64)) })
            }
            RingSpec::PolynomialOverPrimeField(_) if q.is_integer() => Ok(ring.from_bigint(q.to_integer())),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value_::Int(a) => write!(f, "{a}"),
            Value_::Rat(a) => write!(f, "{a}"),
            Value_::Dyadic { mantissa, exp } => {
                if *exp >= 0 {
                    write!(f, "{}", mantissa << (*exp as u64))
                } else {
                    write!(f, "{}/{}", mantissa, pow2(exp.unsigned_abs()))
                }
            }
            Value_::Poly(c) => {
                if c.is_empty() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (k, &a) in c.iter().enumerate().rev() {
                    if a == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match (k, a) {
                        (0, _) => write!(f, "{a}")?,
                        (1, 1) => write!(f, "x")?,
                        (1, _) => write!(f, "{a}x")?,
                        (_, 1) => write!(f, "x^{k}")?,
                        _ => write!(f, "{a}x^{k}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ring)
    }
}

// Operator sugar. These panic on mismatched rings; the `checked_*` methods
// report the mismatch instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a RingElement> for &'a RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &'a RingElement) -> RingElement {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl $tr for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$checked(&rhs).expect("ring mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.neg_ref()
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.neg_ref()
    }
}

/// The element types matrices and words are built over: base-ring elements
/// and polynomials over the base ring.
///
/// Method names avoid the `std::ops` names so both can be in scope.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    /// The base ring (for polynomials, the coefficient ring).
    fn ring(&self) -> RingSpec;
    fn zero_in(ring: RingSpec) -> Self;
    fn one_in(ring: RingSpec) -> Self;
    fn from_base(x: RingElement) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn halved(&self) -> Result<Self>;
    /// Membership in the principal ideal generated by `generator`.
    fn in_ideal(&self, generator: &Self) -> Result<bool>;
    fn to_json(&self) -> Value;
    fn from_json(ring: RingSpec, v: &Value) -> Result<Self>;
}

impl Scalar for RingElement {
    fn ring(&self) -> RingSpec {
        self.ring
    }
    fn zero_in(ring: RingSpec) -> Self {
        ring.zero()
    }
    fn one_in(ring: RingSpec) -> Self {
        ring.one()
    }
    fn from_base(x: RingElement) -> Self {
        x
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn halved(&self) -> Result<Self> {
        self.halve()
    }
    fn in_ideal(&self, generator: &Self) -> Result<bool> {
        self.divisible_by(generator)
    }
    fn to_json(&self) -> Value {
        RingElement::to_json(self)
    }
    fn from_json(ring: RingSpec, v: &Value) -> Result<Self> {
        RingElement::from_json(ring, v)
    }
}
