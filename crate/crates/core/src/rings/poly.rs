use std::fmt;

use serde_json::Value;

use super::{RingElement, RingSpec, Scalar};
use crate::error::{Error, Result};

/// A univariate polynomial in `X` over one of the base rings.
///
/// Used for the R[X] certificates of the relative pipeline. Coefficients are
/// ascending; there are no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    ring: RingSpec,
    coeffs: Vec<RingElement>,
}

impl UniPoly {
    pub fn new(ring: RingSpec, coeffs: Vec<RingElement>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch(ring, bad.ring()));
        }
        Ok(Self::trimmed(ring, coeffs))
    }

    fn trimmed(ring: RingSpec, mut coeffs: Vec<RingElement>) -> Self {
        while coeffs.last().is_some_and(RingElement::is_zero) {
            coeffs.pop();
        }
        UniPoly { ring, coeffs }
    }

    pub fn constant(c: RingElement) -> Self {
        Self::trimmed(c.ring(), vec![c])
    }

    /// The indeterminate `X`.
    pub fn x(ring: RingSpec) -> Self {
        UniPoly { ring, coeffs: vec![ring.zero(), ring.one()] }
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> RingElement {
        self.coeffs.first().cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// `self - self(0)`, the part lying in the ideal (X).
    pub fn without_constant(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        if let Some(c) = coeffs.first_mut() {
            *c = self.ring.zero();
        }
        Self::trimmed(self.ring, coeffs)
    }

    /// Substitutes `X = a` (Horner).
    pub fn eval(&self, a: &RingElement) -> Result<RingElement> {
        if a.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring, a.ring()));
        }
        Ok(self.coeffs.iter().rev().fold(self.ring.zero(), |acc, c| &(&acc * a) + c))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&RingElement, &RingElement) -> RingElement) -> Self {
        let zero = self.ring.zero();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| f(self.coeffs.get(k).unwrap_or(&zero), other.coeffs.get(k).unwrap_or(&zero)))
            .collect();
        Self::trimmed(self.ring, coeffs)
    }
}

impl Scalar for UniPoly {
    fn ring(&self) -> RingSpec {
        self.ring
    }

    fn zero_in(ring: RingSpec) -> Self {
        UniPoly { ring, coeffs: Vec::new() }
    }

    fn one_in(ring: RingSpec) -> Self {
        Self::constant(ring.one())
    }

    fn from_base(x: RingElement) -> Self {
        Self::constant(x)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    fn minus(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn times(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero_in(self.ring);
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::trimmed(self.ring, out)
    }

    fn negated(&self) -> Self {
        UniPoly { ring: self.ring, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    fn halved(&self) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(RingElement::halve).collect::<Result<_>>()?;
        Ok(UniPoly { ring: self.ring, coeffs })
    }

    /// Only ideals generated by `unit * X^k` are supported.
    fn in_ideal(&self, generator: &Self) -> Result<bool> {
        if generator.is_zero() {
            return Ok(self.is_zero());
        }
        let k = generator.coeffs.iter().take_while(|c| c.is_zero()).count();
        let monomial = generator.coeffs.len() == k + 1 && generator.coeffs[k].is_unit();
        if !monomial {
            return Err(Error::Unsupported(format!("ideal ({generator}) in R[X]; only unit multiples of X^k")));
        }
        Ok(self.coeffs.iter().take(k).all(RingElement::is_zero))
    }

    /// Array of base-ring entries, ascending.
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(RingElement::to_json).collect())
    }

    fn from_json(ring: RingSpec, v: &Value) -> Result<Self> {
        match v {
            Value::Array(items) => {
                let coeffs = items.iter().map(|c| RingElement::from_json(ring, c)).collect::<Result<_>>()?;
                Ok(Self::trimmed(ring, coeffs))
            }
            _ => Err(Error::Parse(format!("expected coefficient array, got {v}"))),
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})X"),
                _ => format!("({c})X^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}[X]", self.ring)
    }
}
