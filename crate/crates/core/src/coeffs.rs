//! Exact coefficient rings and their scalars.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient ring of a quandle ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientRing {
    Integers,
    IntegersMod(u64),
    Rationals,
}

impl CoefficientRing {
    pub fn integers_mod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(CoefficientRing::IntegersMod(m))
    }

    pub fn is_integral_domain(&self) -> bool {
        match *self {
            CoefficientRing::IntegersMod(m) => is_prime(m),
            _ => true,
        }
    }

    pub fn is_field(&self) -> bool {
        match *self {
            CoefficientRing::Integers => false,
            CoefficientRing::IntegersMod(m) => is_prime(m),
            CoefficientRing::Rationals => true,
        }
    }

    /// 0 for the integers and the rationals.
    pub fn characteristic(&self) -> u64 {
        match *self {
            CoefficientRing::IntegersMod(m) => m,
            _ => 0,
        }
    }

    pub fn two_is_invertible(&self) -> bool {
        match *self {
            CoefficientRing::Integers => false,
            CoefficientRing::IntegersMod(m) => m % 2 == 1,
            CoefficientRing::Rationals => true,
        }
    }

    /// Errors with `NotIntegralDomain` unless the ring is a domain.
    pub fn require_domain(&self) -> Result<()> {
        if self.is_integral_domain() {
            Ok(())
        } else {
            Err(Error::NotIntegralDomain(*self))
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i128) -> Scalar {
        match *self {
            CoefficientRing::Integers => Scalar::Int(v),
            CoefficientRing::IntegersMod(m) => Scalar::Residue {
                value: v.rem_euclid(m as i128) as u64,
                modulus: m,
            },
            CoefficientRing::Rationals => Scalar::Rational(Ratio::from_integer(v)),
        }
    }

    /// Builds `num/den` in this ring; fails when `den` is not invertible.
    pub fn from_fraction(&self, num: i128, den: i128) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        match *self {
            CoefficientRing::Integers => {
                if num % den != 0 {
                    return Err(Error::Parse(format!("{num}/{den} is not an integer")));
                }
                Ok(Scalar::Int(num / den))
            }
            CoefficientRing::IntegersMod(_) => {
                let inv = self
                    .from_int(den)
                    .inverse()
                    .ok_or_else(|| Error::Parse(format!("{den} is not invertible in {self}")))?;
                Ok(self.from_int(num) * inv)
            }
            CoefficientRing::Rationals => Ok(Scalar::Rational(Ratio::new(num, den))),
        }
    }

    /// Parses `z`, `q` or `zmod:<m>`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "z" => Ok(CoefficientRing::Integers),
            "q" => Ok(CoefficientRing::Rationals),
            _ => {
                let m = t
                    .strip_prefix("zmod:")
                    .ok_or_else(|| Error::Parse(format!("unknown ring `{s}`")))?;
                let m: u64 = m.parse().map_err(|_| Error::Parse(format!("bad modulus in `{s}`")))?;
                CoefficientRing::integers_mod(m)
            }
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "z"),
            CoefficientRing::IntegersMod(m) => write!(f, "zmod:{m}"),
            CoefficientRing::Rationals => write!(f, "q"),
        }
    }
}

pub(crate) fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A ring value tagged by its coefficient ring.
///
/// Arithmetic panics on overflow of the 128-bit backing integers and on
/// mixing scalars from different rings; ring elements check compatibility
/// before reaching scalar arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(i128),
    Residue { value: u64, modulus: u64 },
    Rational(Ratio<i128>),
}

fn overflow(op: &str) -> ! {
    panic!("integer overflow in scalar {op}: coefficients exceed 128 bits")
}

pub(crate) fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).unwrap_or_else(|| overflow("addition"))
}

pub(crate) fn csub(a: i128, b: i128) -> i128 {
    a.checked_sub(b).unwrap_or_else(|| overflow("subtraction"))
}

pub(crate) fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).unwrap_or_else(|| overflow("multiplication"))
}

impl Scalar {
    pub fn ring(&self) -> CoefficientRing {
        match *self {
            Scalar::Int(_) => CoefficientRing::Integers,
            Scalar::Residue { modulus, .. } => CoefficientRing::IntegersMod(modulus),
            Scalar::Rational(_) => CoefficientRing::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            Scalar::Int(v) => v == 0,
            Scalar::Residue { value, .. } => value == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring().one()
    }

    /// The integer value for `Int`, the canonical representative for residues,
    /// and the value of an integral fraction.
    pub fn as_int(&self) -> Option<i128> {
        match *self {
            Scalar::Int(v) => Some(v),
            Scalar::Residue { value, .. } => Some(value as i128),
            Scalar::Rational(r) => r.is_integer().then(|| r.to_integer()),
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match *self {
            Scalar::Int(v) => (v == 1 || v == -1).then_some(Scalar::Int(v)),
            Scalar::Residue { value, modulus } => {
                let g = (value as i128).extended_gcd(&(modulus as i128));
                (g.gcd == 1).then(|| Scalar::Residue {
                    value: g.x.rem_euclid(modulus as i128) as u64,
                    modulus,
                })
            }
            Scalar::Rational(r) => (!r.is_zero()).then(|| Scalar::Rational(r.recip())),
        }
    }

    fn same_ring(&self, other: &Scalar) {
        if self.ring() != other.ring() {
            panic!("scalar arithmetic across rings {} and {}", self.ring(), other.ring());
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.same_ring(&rhs);
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(cadd(a, b)),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((a as u128 + b as u128) % modulus as u128) as u64,
                modulus,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                Scalar::Rational(a.checked_add(&b).unwrap_or_else(|| overflow("addition")))
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.same_ring(&rhs);
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(csub(a, b)),
            (Scalar::Residue { .. }, Scalar::Residue { .. }) => self + (-rhs),
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                Scalar::Rational(a.checked_sub(&b).unwrap_or_else(|| overflow("subtraction")))
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.same_ring(&rhs);
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(cmul(a, b)),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((a as u128 * b as u128) % modulus as u128) as u64,
                modulus,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                Scalar::Rational(a.checked_mul(&b).unwrap_or_else(|| overflow("multiplication")))
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(a.checked_neg().unwrap_or_else(|| overflow("negation"))),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if value == 0 { 0 } else { modulus - value },
                modulus,
            },
            Scalar::Rational(r) => Scalar::Rational(-r),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order within a ring; residues compare by representative.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => a.cmp(b),
            (Scalar::Residue { value: a, modulus: m }, Scalar::Residue { value: b, modulus: n }) => {
                m.cmp(n).then(a.cmp(b))
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            _ => self.kind_rank().cmp(&other.kind_rank()),
        }
    }
}

impl Scalar {
    fn kind_rank(&self) -> u8 {
        match self {
            Scalar::Int(_) => 0,
            Scalar::Residue { .. } => 1,
            Scalar::Rational(_) => 2,
        }
    }

    /// True for values printed with a leading minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Scalar::Int(v) => *v < 0,
            Scalar::Residue { .. } => false,
            Scalar::Rational(r) => r.is_negative(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}
