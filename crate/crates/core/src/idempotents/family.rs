//! Affine parametric families of idempotents.
//!
//! A family has one or more branches; a branch sends integer parameters
//! `p` to `offset + M p`. Each coordinate of `z(p)^2 - z(p)` is then a
//! polynomial of degree at most 2 in every parameter, so it vanishes
//! identically once it vanishes on a grid with three values per parameter.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::coeffs::{cadd, cmul, CoefficientRing};
use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;
use crate::ring::{dense, RingElement};

pub const DEFAULT_GRID_RADIUS: i128 = 2;

/// One branch `offset + sum_k p_k * columns[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineBranch {
    pub label: String,
    pub offset: Vec<i128>,
    /// One direction vector per parameter; zero when the branch ignores it.
    pub columns: Vec<Vec<i128>>,
}

impl AffineBranch {
    pub fn eval(&self, params: &[i128]) -> Vec<i128> {
        let mut z = self.offset.clone();
        for (col, &p) in self.columns.iter().zip(params) {
            for (a, &c) in z.iter_mut().zip(col) {
                *a = cadd(*a, cmul(p, c));
            }
        }
        z
    }

    fn used(&self) -> Vec<usize> {
        (0..self.columns.len())
            .filter(|&k| self.columns[k].iter().any(|&c| c != 0))
            .collect()
    }

    /// The parameters reaching `z`, with ignored parameters set to 0.
    fn solve(&self, z: &[i128]) -> Option<Vec<i128>> {
        let used = self.used();
        let rows = z.len();
        // augmented matrix [M_used | z - offset] over Q
        let mut m: Vec<Vec<Ratio<i128>>> = (0..rows)
            .map(|i| {
                let mut r: Vec<Ratio<i128>> = used.iter().map(|&k| Ratio::from(self.columns[k][i])).collect();
                r.push(Ratio::from(z[i] - self.offset[i]));
                r
            })
            .collect();
        let k = used.len();
        let mut row = 0;
        for col in 0..k {
            let pivot = (row..rows).find(|&r| !m[r][col].is_zero())?;
            m.swap(row, pivot);
            let p = m[row][col];
            m[row].iter_mut().for_each(|x| *x /= p);
            for r in 0..rows {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col];
                    let pivot_row = m[row].clone();
                    m[r].iter_mut().zip(&pivot_row).for_each(|(x, &y)| *x -= f * y);
                }
            }
            row += 1;
        }
        if m[row..].iter().any(|r| !r[k].is_zero()) {
            return None;
        }
        let mut params = vec![0i128; self.columns.len()];
        for (idx, &kk) in used.iter().enumerate() {
            let v = m[idx][k];
            if !v.denom().is_one() {
                return None;
            }
            params[kk] = v.to_integer();
        }
        (self.eval(&params) == z).then_some(params)
    }
}

fn rank(columns: &[&Vec<i128>]) -> usize {
    let Some(rows) = columns.first().map(|c| c.len()) else {
        return 0;
    };
    let mut m: Vec<Vec<Ratio<i128>>> = (0..rows)
        .map(|i| columns.iter().map(|c| Ratio::from(c[i])).collect())
        .collect();
    let mut r = 0;
    for col in 0..columns.len() {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            let f = m[i][col] / m[r][col];
            let pivot_row = m[r].clone();
            m[i].iter_mut().zip(&pivot_row).for_each(|(x, &y)| *x -= f * y);
        }
        r += 1;
    }
    r
}

/// An affine description of infinitely many idempotents of `Z[Q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentFamily {
    pub name: String,
    pub quandle: Arc<FiniteQuandle>,
    pub params: Vec<String>,
    pub branches: Vec<AffineBranch>,
}

/// A family member: branch index and parameter values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPoint {
    pub family: String,
    pub branch: String,
    pub params: Vec<(String, i128)>,
}

impl fmt::Display for FamilyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(n, v)| format!("{n} = {v}")).collect();
        write!(f, "{}", self.family)?;
        if !self.branch.is_empty() {
            write!(f, " [{}]", self.branch)?;
        }
        if !params.is_empty() {
            write!(f, " at {}", params.join(", "))?;
        }
        Ok(())
    }
}

impl IdempotentFamily {
    /// Checks dimensions and that the directions used by each branch are
    /// linearly independent, so family members have unique parameters.
    pub fn new(name: &str, quandle: Arc<FiniteQuandle>, params: &[&str], branches: Vec<AffineBranch>) -> Result<Self> {
        let n = quandle.order();
        if branches.is_empty() {
            return Err(Error::Unsupported("a family needs at least one branch".into()));
        }
        for b in &branches {
            if b.offset.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: b.offset.len(),
                });
            }
            if b.columns.len() != params.len() {
                return Err(Error::DimensionMismatch {
                    expected: params.len(),
                    found: b.columns.len(),
                });
            }
            if let Some(c) = b.columns.iter().find(|c| c.len() != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.len(),
                });
            }
            let used: Vec<&Vec<i128>> = b.used().into_iter().map(|k| &b.columns[k]).collect();
            if rank(&used) != used.len() {
                return Err(Error::Unsupported(format!(
                    "branch `{}` has dependent directions",
                    b.label
                )));
            }
        }
        Ok(IdempotentFamily {
            name: name.to_string(),
            quandle,
            params: params.iter().map(|s| s.to_string()).collect(),
            branches,
        })
    }

    pub fn evaluate(&self, branch: usize, params: &[i128]) -> Result<RingElement> {
        let b = self.branches.get(branch).ok_or(Error::IndexOutOfRange {
            index: branch,
            n: self.branches.len(),
        })?;
        if params.len() != self.params.len() {
            return Err(Error::DimensionMismatch {
                expected: self.params.len(),
                found: params.len(),
            });
        }
        RingElement::from_ints(&self.quandle, CoefficientRing::Integers, &b.eval(params))
    }

    /// Finds branch and parameters producing `z`, if any.
    pub fn solve(&self, z: &[i128]) -> Option<FamilyPoint> {
        self.branches.iter().find_map(|b| {
            b.solve(z).map(|p| FamilyPoint {
                family: self.name.clone(),
                branch: b.label.clone(),
                params: b.used().into_iter().map(|k| (self.params[k].clone(), p[k])).collect(),
            })
        })
    }
}

impl fmt::Display for IdempotentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.quandle;
        let render = |v: &[i128]| {
            RingElement::from_ints(q, CoefficientRing::Integers, v)
                .map(|e| e.to_string())
                .unwrap_or_default()
        };
        let parts: Vec<String> = self
            .branches
            .iter()
            .map(|b| {
                let mut s = render(&b.offset);
                for k in b.used() {
                    s.push_str(&format!(" + {}*({})", self.params[k], render(&b.columns[k])));
                }
                if b.label.is_empty() {
                    s
                } else {
                    format!("[{}] {s}", b.label)
                }
            })
            .collect();
        write!(f, "{}: {}", self.name, parts.join("; "))
    }
}

/// Record of a successful grid verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCertificate {
    pub family: String,
    pub grid_radius: i128,
    pub points_per_axis: usize,
    pub points_checked: usize,
    /// Per-parameter degree of `z^2 - z`; the grid exceeds it by at least one.
    pub degree_bound: usize,
}

impl fmt::Display for FamilyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: z^2 - z vanishes at {} grid points ({} per parameter, radius {}); \
             each coordinate has degree <= {} per parameter, so it vanishes identically",
            self.family, self.points_checked, self.points_per_axis, self.grid_radius, self.degree_bound
        )
    }
}

/// Evaluates `z^2 - z` on the grid `[-r, r]^k` of every branch.
pub fn verify_family(f: &IdempotentFamily, grid_radius: i128) -> Result<FamilyCertificate> {
    if grid_radius < 1 {
        return Err(Error::Unsupported(
            "the grid needs at least three points per parameter".into(),
        ));
    }
    let k = f.params.len();
    let mut checked = 0;
    for b in &f.branches {
        let mut p = vec![-grid_radius; k];
        loop {
            let z = b.eval(&p);
            let sq = dense::mul(&f.quandle, &z, &z);
            if sq != z {
                let residual: Vec<i128> = sq.iter().zip(&z).map(|(a, b)| a - b).collect();
                let shown = RingElement::from_ints(&f.quandle, CoefficientRing::Integers, &residual)?;
                return Err(Error::VerificationFailed(format!(
                    "family {} branch `{}` at {:?}: z^2 - z = {shown}",
                    f.name, b.label, p
                )));
            }
            checked += 1;
            if !super::odometer(&mut p, -grid_radius, grid_radius) {
                break;
            }
        }
    }
    Ok(FamilyCertificate {
        family: f.name.clone(),
        grid_radius,
        points_per_axis: (2 * grid_radius + 1) as usize,
        points_checked: checked,
        degree_bound: 2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub bound: i128,
    pub covered: Vec<(RingElement, FamilyPoint)>,
    pub uncovered: Vec<RingElement>,
}

impl Coverage {
    pub fn covers(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Solves every nonzero box idempotent against the families.
pub fn family_covers_box(families: &[IdempotentFamily], bound: i128, budget: u128) -> Result<Coverage> {
    let q = families
        .first()
        .map(|f| Arc::clone(&f.quandle))
        .ok_or_else(|| Error::Unsupported("no families given".into()))?;
    if families.iter().any(|f| !f.quandle.same_structure(&q)) {
        return Err(Error::RingMismatch);
    }
    let mut coverage = Coverage {
        bound,
        covered: Vec::new(),
        uncovered: Vec::new(),
    };
    for z in super::box_vectors(&q, bound, budget)? {
        if z.iter().all(|&c| c == 0) {
            continue;
        }
        let el = RingElement::from_ints(&q, CoefficientRing::Integers, &z)?;
        match families.iter().find_map(|f| f.solve(&z)) {
            Some(p) => coverage.covered.push((el, p)),
            None => coverage.uncovered.push(el),
        }
    }
    Ok(coverage)
}

fn unit(n: usize, i: usize) -> Vec<i128> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn diff(n: usize, i: usize, j: usize) -> Vec<i128> {
    let mut v = vec![0; n];
    v[i] += 1;
    v[j] -= 1;
    v
}

/// The built-in families for `T<n>`, `R3`, `R4` and `Cs4`.
pub fn registry(name: &str) -> Result<Vec<IdempotentFamily>> {
    let key = name.trim().to_ascii_lowercase();
    let unknown = || Error::UnknownName(name.to_string());
    if let Some(n) = key.strip_prefix('t') {
        let n: usize = n.parse().map_err(|_| unknown())?;
        let q = Arc::new(FiniteQuandle::trivial(n)?);
        let names: Vec<String> = (1..n).map(|i| format!("d{i}")).collect();
        let params: Vec<&str> = names.iter().map(String::as_str).collect();
        let branch = AffineBranch {
            label: String::new(),
            offset: unit(n, 0),
            columns: (1..n).map(|i| diff(n, i, 0)).collect(),
        };
        return Ok(vec![IdempotentFamily::new(
            "x0 + augmentation ideal",
            q,
            &params,
            vec![branch],
        )?]);
    }
    match key.as_str() {
        "r3" => {
            let q = Arc::new(FiniteQuandle::dihedral(3)?);
            let branches = (0..3)
                .map(|i| AffineBranch {
                    label: format!("a{i}"),
                    offset: unit(3, i),
                    columns: vec![],
                })
                .collect();
            Ok(vec![IdempotentFamily::new("basis", q, &[], branches)?])
        }
        "r4" => {
            let q = Arc::new(FiniteQuandle::dihedral(4)?);
            let t1 = AffineBranch {
                label: "t=1".into(),
                offset: unit(4, 0),
                columns: vec![diff(4, 2, 0), vec![0; 4]],
            };
            let t0 = AffineBranch {
                label: "t=0".into(),
                offset: unit(4, 1),
                columns: vec![vec![0; 4], diff(4, 3, 1)],
            };
            Ok(vec![IdempotentFamily::new(
                "t-alpha-beta",
                q,
                &["alpha", "beta"],
                vec![t1, t0],
            )?])
        }
        "cs4" => {
            let q = Arc::new(FiniteQuandle::cs4());
            let xy = AffineBranch {
                label: String::new(),
                offset: unit(3, 0),
                columns: vec![diff(3, 1, 0)],
            };
            let diag = AffineBranch {
                label: String::new(),
                offset: unit(3, 2),
                columns: vec![vec![1, 1, -2]],
            };
            Ok(vec![
                IdempotentFamily::new("xy-line", Arc::clone(&q), &["beta"], vec![xy])?,
                IdempotentFamily::new("diagonal", q, &["alpha"], vec![diag])?,
            ])
        }
        _ => Err(unknown()),
    }
}
