//! Integer lattices in Hermite normal form and echelon bases over fields.

use num_integer::Integer;

use crate::coeffs::{cadd, cmul, csub, CoefficientRing, Scalar};
use crate::error::{Error, Result};

/// A sublattice of `Z^dim` stored as its row-style Hermite normal form.
///
/// Rows are nonzero, pivot columns strictly increase, pivots are positive
/// and every entry above a pivot lies in `[0, pivot)`. The form is unique,
/// so two bases span the same lattice iff they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLatticeBasis {
    dim: usize,
    rows: Vec<Vec<i128>>,
}

fn leading(v: &[i128]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

fn axpy(y: &mut [i128], k: i128, x: &[i128]) {
    if k == 0 {
        return;
    }
    for (a, &b) in y.iter_mut().zip(x) {
        *a = csub(*a, cmul(k, b));
    }
}

impl IntLatticeBasis {
    pub fn new(dim: usize) -> Self {
        IntLatticeBasis { dim, rows: Vec::new() }
    }

    pub fn from_vectors<I, V>(dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[i128]>,
    {
        let mut b = Self::new(dim);
        for v in vectors {
            b.insert_mut(v.as_ref())?;
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    fn check_dim(&self, v: &[i128]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Returns the basis of the lattice spanned by `self` and `v`.
    pub fn insert(&self, v: &[i128]) -> Result<Self> {
        let mut b = self.clone();
        b.insert_mut(v)?;
        Ok(b)
    }

    /// Adds `v` in place; returns whether the lattice grew.
    pub fn insert_mut(&mut self, v: &[i128]) -> Result<bool> {
        self.check_dim(v)?;
        let mut v = v.to_vec();
        let mut changed = false;
        while let Some(c) = leading(&v) {
            match self.rows.iter().position(|r| leading(r) == Some(c)) {
                Some(r) => {
                    let p = self.rows[r][c];
                    let vc = v[c];
                    if vc % p == 0 {
                        let k = vc / p;
                        axpy(&mut v, k, &self.rows[r]);
                    } else {
                        let eg = p.extended_gcd(&vc);
                        let (g, s, t) = (eg.gcd, eg.x, eg.y);
                        let row = &self.rows[r];
                        let new_row: Vec<i128> = row
                            .iter()
                            .zip(&v)
                            .map(|(&a, &b)| cadd(cmul(s, a), cmul(t, b)))
                            .collect();
                        let (pg, vg) = (p / g, vc / g);
                        let new_v: Vec<i128> = row
                            .iter()
                            .zip(&v)
                            .map(|(&a, &b)| csub(cmul(pg, b), cmul(vg, a)))
                            .collect();
                        self.rows[r] = new_row;
                        v = new_v;
                        changed = true;
                    }
                }
                None => {
                    if v[c] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    let at = self
                        .rows
                        .iter()
                        .position(|r| leading(r).unwrap() > c)
                        .unwrap_or(self.rows.len());
                    self.rows.insert(at, v);
                    changed = true;
                    break;
                }
            }
        }
        if changed {
            self.normalize();
        }
        Ok(changed)
    }

    fn normalize(&mut self) {
        for i in 0..self.rows.len() {
            let c = leading(&self.rows[i]).unwrap();
            if self.rows[i][c] < 0 {
                self.rows[i].iter_mut().for_each(|x| *x = -*x);
            }
            let p = self.rows[i][c];
            let (above, rest) = self.rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let q = Integer::div_floor(&row[c], &p);
                axpy(row, q, pivot_row);
            }
        }
    }

    /// Decides membership by back-substitution against the pivots.
    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        self.check_dim(v)?;
        Ok(self.coordinates_unchecked(v).is_some())
    }

    /// Integer coefficients expressing `v` in the rows, if it is a member.
    pub fn coordinates(&self, v: &[i128]) -> Result<Option<Vec<i128>>> {
        self.check_dim(v)?;
        Ok(self.coordinates_unchecked(v))
    }

    fn coordinates_unchecked(&self, v: &[i128]) -> Option<Vec<i128>> {
        let mut v = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let c = leading(row).unwrap();
            if v[..c].iter().any(|&x| x != 0) {
                return None;
            }
            if v[c] % row[c] != 0 {
                return None;
            }
            let k = v[c] / row[c];
            axpy(&mut v, k, row);
            coords.push(k);
        }
        v.iter().all(|&x| x == 0).then_some(coords)
    }
}

/// A subspace of `F^dim` over a field, kept in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EchelonBasis {
    ring: CoefficientRing,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
}

fn leading_scalar(v: &[Scalar]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl EchelonBasis {
    pub fn new(ring: CoefficientRing, dim: usize) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::Unsupported(format!("echelon bases need a field, got {ring}")));
        }
        Ok(EchelonBasis {
            ring,
            dim,
            rows: Vec::new(),
        })
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    fn check(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        if v.iter().any(|s| s.ring() != self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for row in &self.rows {
            let c = leading_scalar(row).unwrap();
            let k = v[c];
            if !k.is_zero() {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = *a - k * b;
                }
            }
        }
    }

    /// Adds `v` in place; returns whether the space grew.
    pub fn insert_mut(&mut self, v: &[Scalar]) -> Result<bool> {
        self.check(v)?;
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(c) = leading_scalar(&v) else {
            return Ok(false);
        };
        let inv = v[c].inverse().expect("nonzero element of a field");
        v.iter_mut().for_each(|x| *x = *x * inv);
        for row in self.rows.iter_mut() {
            let k = row[c];
            if !k.is_zero() {
                for (a, &b) in row.iter_mut().zip(&v) {
                    *a = *a - k * b;
                }
            }
        }
        let at = self
            .rows
            .iter()
            .position(|r| leading_scalar(r).unwrap() > c)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        Ok(true)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        self.check(v)?;
        let mut v = v.to_vec();
        self.reduce(&mut v);
        Ok(v.iter().all(Scalar::is_zero))
    }
}

/// The additive span of a set of coefficient vectors: a lattice over the
/// integers, an echelon basis over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Span {
    Lattice(IntLatticeBasis),
    Echelon(EchelonBasis),
}

impl Span {
    /// Composite moduli are refused since spans there are not free modules.
    pub fn new(ring: CoefficientRing, dim: usize) -> Result<Self> {
        match ring {
            CoefficientRing::Integers => Ok(Span::Lattice(IntLatticeBasis::new(dim))),
            _ if ring.is_field() => Ok(Span::Echelon(EchelonBasis::new(ring, dim)?)),
            _ => Err(Error::NotIntegralDomain(ring)),
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        match self {
            Span::Lattice(_) => CoefficientRing::Integers,
            Span::Echelon(e) => e.ring(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Span::Lattice(l) => l.dim(),
            Span::Echelon(e) => e.dim(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Span::Lattice(l) => l.rank(),
            Span::Echelon(e) => e.rank(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn insert_mut(&mut self, v: &[Scalar]) -> Result<bool> {
        match self {
            Span::Lattice(l) => l.insert_mut(&to_ints(v)?),
            Span::Echelon(e) => e.insert_mut(v),
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        match self {
            Span::Lattice(l) => l.contains(&to_ints(v)?),
            Span::Echelon(e) => e.contains(v),
        }
    }

    /// Basis rows as scalars of the span's ring.
    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        match self {
            Span::Lattice(l) => l
                .rows()
                .iter()
                .map(|r| r.iter().map(|&x| Scalar::Int(x)).collect())
                .collect(),
            Span::Echelon(e) => e.rows().to_vec(),
        }
    }

    /// True when every vector of `other` lies in `self`.
    pub fn includes(&self, other: &Span) -> Result<bool> {
        for r in other.rows() {
            if !self.contains(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn to_ints(v: &[Scalar]) -> Result<Vec<i128>> {
    v.iter()
        .map(|s| match s {
            Scalar::Int(x) => Ok(*x),
            _ => Err(Error::RingMismatch),
        })
        .collect()
}
