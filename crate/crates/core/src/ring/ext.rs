use std::fmt;
use std::sync::Arc;

use super::RingElement;
use crate::coeffs::{CoefficientRing, Scalar};
use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

/// An element `u + c e` of the extended ring, where `e` is a two-sided unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRingElement {
    pub body: RingElement,
    pub unit: Scalar,
}

impl ExtRingElement {
    pub fn new(body: RingElement, unit: Scalar) -> Result<Self> {
        if unit.ring() != body.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(ExtRingElement { body, unit })
    }

    pub fn from_body(body: RingElement) -> Self {
        let unit = body.ring().zero();
        ExtRingElement { body, unit }
    }

    /// The adjoined unit `e`.
    pub fn unit_element(q: &Arc<FiniteQuandle>, ring: CoefficientRing) -> Self {
        ExtRingElement {
            body: RingElement::zero(q, ring),
            unit: ring.one(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.body.same_ring(&other.body) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ExtRingElement {
            body: self.body.add(&other.body)?,
            unit: self.unit + other.unit,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(ExtRingElement {
            body: self.body.sub(&other.body)?,
            unit: self.unit - other.unit,
        })
    }

    /// `(u + a e)(v + b e) = uv + b u + a v + ab e`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let body = self
            .body
            .mul(&other.body)?
            .add(&self.body.scale(other.unit)?)?
            .add(&other.body.scale(self.unit)?)?;
        Ok(ExtRingElement {
            body,
            unit: self.unit * other.unit,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero() && self.unit.is_zero()
    }
}

impl fmt::Display for ExtRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit.is_zero() {
            return write!(f, "{}", self.body);
        }
        let neg = self.unit.is_negative();
        let mag = if neg { -self.unit } else { self.unit };
        let e = if mag.is_one() {
            "e".to_string()
        } else {
            format!("{mag}*e")
        };
        match (self.body.is_zero(), neg) {
            (true, true) => write!(f, "-{e}"),
            (true, false) => write!(f, "{e}"),
            (false, true) => write!(f, "{} - {e}", self.body),
            (false, false) => write!(f, "{} + {e}", self.body),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<FiniteQuandle>, CoefficientRing) {
        (Arc::new(FiniteQuandle::dihedral(3).unwrap()), CoefficientRing::Integers)
    }

    #[test]
    fn basis_times_e_minus_itself_vanishes() {
        let (q, r) = setup();
        let e = ExtRingElement::unit_element(&q, r);
        for i in 0..3 {
            let x = ExtRingElement::from_body(RingElement::basis(&q, r, i).unwrap());
            assert!(x.mul(&e.sub(&x).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn unit_squared() {
        let (q, r) = setup();
        let e = ExtRingElement::unit_element(&q, r);
        assert_eq!(e.mul(&e).unwrap(), e);
        assert_eq!(e.to_string(), "e");
    }

    #[test]
    fn shifted_product() {
        let (q, r) = setup();
        let e = ExtRingElement::unit_element(&q, r);
        let x = RingElement::basis(&q, r, 0).unwrap();
        let y = RingElement::basis(&q, r, 1).unwrap();
        let xe = ExtRingElement::from_body(x.clone()).sub(&e).unwrap();
        let ye = ExtRingElement::from_body(y.clone()).sub(&e).unwrap();
        let expected = x.mul(&y).unwrap().sub(&x).unwrap().sub(&y).unwrap();
        let p = xe.mul(&ye).unwrap();
        assert_eq!(p, ExtRingElement::new(expected, r.one()).unwrap());
        assert_eq!(p.to_string(), "-a0 - a1 + a2 + e");
    }
}
