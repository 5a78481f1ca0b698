use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeffs::{CoefficientRing, Scalar};
use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

/// An element `sum_i c_i x_i` of `R[Q]`, stored sparsely without zero
/// coefficients.
///
/// The product is bilinear and not associative in general, so expressions
/// are evaluated exactly as the calls are nested.
#[derive(Clone, Debug)]
pub struct RingElement {
    quandle: Arc<FiniteQuandle>,
    ring: CoefficientRing,
    coeffs: BTreeMap<usize, Scalar>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.coeffs == other.coeffs
            && (Arc::ptr_eq(&self.quandle, &other.quandle) || self.quandle.same_structure(&other.quandle))
    }
}

impl Eq for RingElement {}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on dense coefficient vectors.
impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dense().cmp(&other.dense())
    }
}

impl std::hash::Hash for RingElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.hash(state);
        self.coeffs.hash(state);
    }
}

impl RingElement {
    pub fn zero(q: &Arc<FiniteQuandle>, ring: CoefficientRing) -> Self {
        RingElement {
            quandle: Arc::clone(q),
            ring,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis element `x_i`.
    pub fn basis(q: &Arc<FiniteQuandle>, ring: CoefficientRing, i: usize) -> Result<Self> {
        if i >= q.order() {
            return Err(Error::IndexOutOfRange { index: i, n: q.order() });
        }
        let mut e = Self::zero(q, ring);
        e.coeffs.insert(i, ring.one());
        Ok(e)
    }

    pub fn from_dense(q: &Arc<FiniteQuandle>, ring: CoefficientRing, v: &[Scalar]) -> Result<Self> {
        if v.len() != q.order() {
            return Err(Error::DimensionMismatch {
                expected: q.order(),
                found: v.len(),
            });
        }
        if v.iter().any(|s| s.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let coeffs = v
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, &s)| (i, s))
            .collect();
        Ok(RingElement {
            quandle: Arc::clone(q),
            ring,
            coeffs,
        })
    }

    /// Integer coefficients mapped into `ring`.
    pub fn from_ints(q: &Arc<FiniteQuandle>, ring: CoefficientRing, v: &[i128]) -> Result<Self> {
        let s: Vec<Scalar> = v.iter().map(|&x| ring.from_int(x)).collect();
        Self::from_dense(q, ring, &s)
    }

    /// `sum_{i in set} x_i`.
    pub fn sum_of(q: &Arc<FiniteQuandle>, ring: CoefficientRing, set: &[usize]) -> Result<Self> {
        let mut acc = Self::zero(q, ring);
        for &i in set {
            acc = acc.add(&Self::basis(q, ring, i)?)?;
        }
        Ok(acc)
    }

    pub fn quandle(&self) -> &Arc<FiniteQuandle> {
        &self.quandle
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn coefficient(&self, i: usize) -> Scalar {
        self.coeffs.get(&i).copied().unwrap_or_else(|| self.ring.zero())
    }

    pub fn dense(&self) -> Vec<Scalar> {
        (0..self.quandle.order()).map(|i| self.coefficient(i)).collect()
    }

    /// Coefficients as integers; residues give their representatives in
    /// `[0, m)`; `None` when some rational coefficient is not integral.
    pub fn to_ints(&self) -> Option<Vec<i128>> {
        self.dense().iter().map(Scalar::as_int).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, Scalar)> + '_ {
        self.coeffs.iter().map(|(&i, &s)| (i, s))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Whether this is a single basis element with coefficient 1.
    pub fn as_basis_element(&self) -> Option<usize> {
        match self.coeffs.iter().next() {
            Some((&i, s)) if self.coeffs.len() == 1 && s.is_one() => Some(i),
            _ => None,
        }
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        self.ring == other.ring
            && (Arc::ptr_eq(&self.quandle, &other.quandle) || self.quandle.same_structure(&other.quandle))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn with_coeffs(&self, coeffs: BTreeMap<usize, Scalar>) -> Self {
        RingElement {
            quandle: Arc::clone(&self.quandle),
            ring: self.ring,
            coeffs,
        }
    }

    fn accumulate(map: &mut BTreeMap<usize, Scalar>, i: usize, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match map.get_mut(&i) {
            Some(c) => {
                *c = *c + s;
                if c.is_zero() {
                    map.remove(&i);
                }
            }
            None => {
                map.insert(i, s);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut m = self.coeffs.clone();
        for (&i, &s) in &other.coeffs {
            Self::accumulate(&mut m, i, s);
        }
        Ok(self.with_coeffs(m))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|(&i, &s)| (i, -s)).collect())
    }

    pub fn scale(&self, k: Scalar) -> Result<Self> {
        if k.ring() != self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .map(|(&i, &s)| (i, s * k))
                .filter(|(_, s)| !s.is_zero())
                .collect(),
        ))
    }

    pub fn scale_int(&self, k: i128) -> Self {
        self.scale(self.ring.from_int(k)).expect("same ring")
    }

    /// The bilinear product through the quandle table.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut m = BTreeMap::new();
        for (&i, &a) in &self.coeffs {
            for (&j, &b) in &other.coeffs {
                Self::accumulate(&mut m, self.quandle.mul(i, j), a * b);
            }
        }
        Ok(self.with_coeffs(m))
    }

    /// The coefficient sum.
    pub fn augmentation(&self) -> Scalar {
        self.coeffs.values().fold(self.ring.zero(), |acc, &s| acc + s)
    }

    /// Applies `i -> perm[i]` to the basis.
    pub fn permute(&self, perm: &[usize]) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|(&i, &s)| (perm[i], s)).collect())
    }

    /// Reduces integer coefficients modulo `m`.
    pub fn reduce_mod(&self, m: u64) -> Result<Self> {
        let target = CoefficientRing::integers_mod(m)?;
        let ints = match self.ring {
            CoefficientRing::Integers => self.to_ints().expect("integer coefficients"),
            _ => return Err(Error::Unsupported(format!("reduction mod {m} from {}", self.ring))),
        };
        Self::from_ints(&self.quandle, target, &ints)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().map(|(&i, s)| {
            let neg = s.is_negative();
            let mag = if neg { (-*s).to_string() } else { s.to_string() };
            (neg, mag, self.quandle.label(i))
        });
        f.write_str(&super::format_terms(terms))
    }
}

/// The basis `x_i - x_base` (`i != base`) of the augmentation ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugIdealBasis {
    pub base_index: usize,
    pub vectors: Vec<RingElement>,
}

impl AugIdealBasis {
    /// Coordinates of an augmentation-zero element in this basis: the
    /// coefficient of `x_i - x_base` is the coefficient of `x_i`.
    pub fn coordinates(&self, u: &RingElement) -> Result<Vec<Scalar>> {
        if !u.augmentation().is_zero() {
            return Err(Error::HypothesisFailed(format!("{u} has nonzero augmentation")));
        }
        let n = u.quandle().order();
        Ok((0..n)
            .filter(|&i| i != self.base_index)
            .map(|i| u.coefficient(i))
            .collect())
    }
}

pub fn aug_ideal_basis(q: &Arc<FiniteQuandle>, ring: CoefficientRing, base_index: usize) -> Result<AugIdealBasis> {
    let base = RingElement::basis(q, ring, base_index)?;
    let vectors = (0..q.order())
        .filter(|&i| i != base_index)
        .map(|i| RingElement::basis(q, ring, i).and_then(|x| x.sub(&base)))
        .collect::<Result<_>>()?;
    Ok(AugIdealBasis { base_index, vectors })
}

/// Whether every product of two augmentation-ideal basis vectors vanishes.
pub fn delta_square_is_zero(q: &Arc<FiniteQuandle>, ring: CoefficientRing) -> bool {
    let basis = aug_ideal_basis(q, ring, 0).expect("index 0 exists");
    basis
        .vectors
        .iter()
        .all(|u| basis.vectors.iter().all(|v| u.mul(v).expect("same ring").is_zero()))
}
