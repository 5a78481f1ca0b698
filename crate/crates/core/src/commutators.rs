//! Commutators `[u, v] = uv - vu`, the commutator subalgebra, and
//! commutator length and width.
//!
//! The subalgebra generated by all commutators is the additive span of
//! iterated products of commutators of basis elements. By bilinearity it
//! is enough to adjoin products of current basis vectors (both orders)
//! until the span stops growing; the chain of spans is ascending inside
//! the finite-rank augmentation ideal, so this terminates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffs::{CoefficientRing, Scalar};
use crate::error::{check_bound, Error, Result};
use crate::idempotents::odometer;
use crate::lattice::Span;
use crate::quandle::{is_2transitive, predicates, quandle_automorphisms, FiniteQuandle};
use crate::ring::RingElement;

pub const MAX_CLOSURE_ORDER: usize = 8;

pub fn commutator(u: &RingElement, v: &RingElement) -> Result<RingElement> {
    u.mul(v)?.sub(&v.mul(u)?)
}

fn require_order(q: &FiniteQuandle) -> Result<()> {
    check_bound("quandle order", q.order() as u128, MAX_CLOSURE_ORDER as u128)
}

/// The span of the augmentation ideal, from the basis `x_i - x_0`.
pub fn delta_span(q: &Arc<FiniteQuandle>, ring: CoefficientRing) -> Result<Span> {
    let mut span = Span::new(ring, q.order())?;
    for v in crate::ring::aug_ideal_basis(q, ring, 0)?.vectors {
        span.insert_mut(&v.dense())?;
    }
    Ok(span)
}

/// Closure of the span of all `[x_i, x_j]` under products of basis vectors.
pub fn commutator_subalgebra(q: &Arc<FiniteQuandle>, ring: CoefficientRing) -> Result<Span> {
    require_order(q)?;
    let n = q.order();
    let mut span = Span::new(ring, n)?;
    for i in 0..n {
        for j in 0..n {
            let c = commutator(&RingElement::basis(q, ring, i)?, &RingElement::basis(q, ring, j)?)?;
            span.insert_mut(&c.dense())?;
        }
    }
    loop {
        let rows: Vec<RingElement> = span
            .rows()
            .iter()
            .map(|r| RingElement::from_dense(q, ring, r))
            .collect::<Result<_>>()?;
        let mut grew = false;
        for a in &rows {
            for b in &rows {
                grew |= span.insert_mut(&a.mul(b)?.dense())?;
            }
        }
        if !grew {
            return Ok(span);
        }
    }
}

/// Whether every basis vector of the commutator subalgebra has augmentation 0.
pub fn contained_in_delta(q: &Arc<FiniteQuandle>, ring: CoefficientRing) -> Result<bool> {
    Ok(commutator_subalgebra(q, ring)?
        .rows()
        .iter()
        .all(|r| r.iter().fold(ring.zero(), |a, &b| a + b).is_zero()))
}

pub fn closure_equals_delta(q: &Arc<FiniteQuandle>, ring: CoefficientRing) -> Result<bool> {
    Ok(commutator_subalgebra(q, ring)? == delta_span(q, ring)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMethod {
    /// `x = ab`, `y = ba` found in the table.
    Direct,
    /// `x = phi(cd)`, `y = phi(dc)` for one fixed non-commuting pair.
    Automorphism,
}

impl fmt::Display for WitnessMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessMethod::Direct => "direct",
            WitnessMethod::Automorphism => "automorphism",
        })
    }
}

/// For every ordered pair `x != y`, elements `a, b` with `x - y = [a, b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaEqualityCertificate {
    pub method: WitnessMethod,
    /// `(x, y, a, b)` with `ab = x` and `ba = y`.
    pub witnesses: Vec<(usize, usize, usize, usize)>,
    /// Bounds `1 <= cw <= n - 1` on the commutator width.
    pub width_lower: usize,
    pub width_upper: usize,
}

impl DeltaEqualityCertificate {
    pub fn verify(&self, q: &FiniteQuandle) -> bool {
        let n = q.order();
        self.witnesses.len() == n * (n - 1)
            && self
                .witnesses
                .iter()
                .all(|&(x, y, a, b)| x != y && q.mul(a, b) == x && q.mul(b, a) == y)
    }
}

/// Shows that the commutator subalgebra is the whole augmentation ideal
/// for quandles that are strongly non-commutative, or non-commutative with
/// a 2-transitive automorphism group.
pub fn strongly_noncomm_delta_equality(q: &FiniteQuandle) -> Result<DeltaEqualityCertificate> {
    let n = q.order();
    let p = predicates(q);
    if p.commutative {
        return Err(Error::HypothesisFailed("the quandle is commutative".into()));
    }
    let mut witnesses = Vec::with_capacity(n * (n - 1));
    let method = if p.strongly_non_commutative {
        let mut first: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                first.entry((q.mul(a, b), q.mul(b, a))).or_insert((a, b));
            }
        }
        for x in 0..n {
            for y in (0..n).filter(|&y| y != x) {
                let (a, b) = first[&(x, y)];
                witnesses.push((x, y, a, b));
            }
        }
        WitnessMethod::Direct
    } else if is_2transitive(q)? {
        witnesses = automorphism_witnesses(q)?;
        WitnessMethod::Automorphism
    } else {
        return Err(Error::HypothesisFailed(
            "neither strongly non-commutative nor 2-transitive under automorphisms".into(),
        ));
    };
    Ok(DeltaEqualityCertificate {
        method,
        witnesses,
        width_lower: 1,
        width_upper: n - 1,
    })
}

/// Witnesses `(x, y, phi(c), phi(d))` moving one non-commuting pair
/// `(cd, dc)` onto every ordered pair by automorphisms.
pub fn automorphism_witnesses(q: &FiniteQuandle) -> Result<Vec<(usize, usize, usize, usize)>> {
    let n = q.order();
    let (c, d) = (0..n)
        .flat_map(|c| (0..n).map(move |d| (c, d)))
        .find(|&(c, d)| q.mul(c, d) != q.mul(d, c))
        .ok_or_else(|| Error::HypothesisFailed("the quandle is commutative".into()))?;
    let (cd, dc) = (q.mul(c, d), q.mul(d, c));
    let auts = quandle_automorphisms(q)?;
    let mut out = Vec::with_capacity(n * (n - 1));
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let phi = auts
                .iter()
                .find(|f| f.apply(cd) == x && f.apply(dc) == y)
                .ok_or_else(|| Error::HypothesisFailed(format!("no automorphism sends ({cd}, {dc}) to ({x}, {y})")))?;
            out.push((x, y, phi.apply(c), phi.apply(d)));
        }
    }
    Ok(out)
}

/// `u = sum_i scalar_i [left_i, right_i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorCertificate {
    pub element: RingElement,
    pub terms: Vec<(Scalar, RingElement, RingElement)>,
}

impl CommutatorCertificate {
    pub fn length(&self) -> usize {
        self.terms.len()
    }

    pub fn evaluate(&self) -> Result<RingElement> {
        let mut acc = RingElement::zero(self.element.quandle(), self.element.ring());
        for (s, l, r) in &self.terms {
            acc = acc.add(&commutator(l, r)?.scale(*s)?)?;
        }
        Ok(acc)
    }

    pub fn verify(&self) -> bool {
        self.evaluate().is_ok_and(|v| v == self.element)
    }
}

impl fmt::Display for CommutatorCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.element)?;
        if self.terms.is_empty() {
            return write!(f, " 0");
        }
        for (k, (s, l, r)) in self.terms.iter().enumerate() {
            let sep = if k == 0 { " " } else { " + " };
            if s.is_one() {
                write!(f, "{sep}[{l}, {r}]")?;
            } else {
                write!(f, "{sep}({s})*[{l}, {r}]")?;
            }
        }
        Ok(())
    }
}

/// The quandles with a known single-commutator construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WidthOneShape {
    Trivial,
    R4,
    Cs4,
}

pub fn width_one_shape(q: &FiniteQuandle) -> Option<WidthOneShape> {
    if q.order() >= 2 && predicates(q).trivial {
        return Some(WidthOneShape::Trivial);
    }
    let r4 = FiniteQuandle::dihedral(4).expect("R4");
    if q.same_structure(&r4) {
        return Some(WidthOneShape::R4);
    }
    if q.same_structure(&FiniteQuandle::cs4()) {
        return Some(WidthOneShape::Cs4);
    }
    None
}

/// A single commutator equal to `u`, built from the coordinates of `u` in
/// the augmentation ideal. Table layouts must match `T_n`, `R4` or `Cs4`
/// exactly (basis order included).
pub fn single_commutator_witness(u: &RingElement) -> Result<CommutatorCertificate> {
    let q = u.quandle();
    let ring = u.ring();
    if !u.augmentation().is_zero() {
        return Err(Error::HypothesisFailed(format!(
            "{u} is outside the augmentation ideal"
        )));
    }
    let shape = width_one_shape(q)
        .ok_or_else(|| Error::Unsupported("no single-commutator construction for this quandle".into()))?;
    let b = |i: usize| RingElement::basis(q, ring, i);
    let c = |i: usize| u.coefficient(i);
    let (left, right) = match shape {
        // v = (1 - sum a_i) x0 + sum a_i x_i, w = x0
        WidthOneShape::Trivial => (u.add(&b(0)?)?, b(0)?),
        // alpha e1 + beta e2 + gamma e3 = [a2, beta a0 - gamma a1 - alpha a3]
        WidthOneShape::R4 => {
            let w = b(0)?.scale(c(2))?.sub(&b(1)?.scale(c(3))?)?.sub(&b(3)?.scale(c(1))?)?;
            (b(2)?, w)
        }
        // g1 e1 + g2 e2 = [x + (g1 + g2) e1 + g2 e2, x]
        WidthOneShape::Cs4 => {
            let (g1, g2) = (c(1), c(2));
            let e1 = b(1)?.sub(&b(0)?)?;
            let e2 = b(2)?.sub(&b(0)?)?;
            let l = b(0)?.add(&e1.scale(g1 + g2)?)?.add(&e2.scale(g2)?)?;
            (l, b(0)?)
        }
    };
    let cert = CommutatorCertificate {
        element: u.clone(),
        terms: vec![(ring.one(), left, right)],
    };
    if !cert.verify() {
        return Err(Error::VerificationFailed(format!(
            "single commutator for {u} does not evaluate back"
        )));
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwCertificate {
    pub shape: WidthOneShape,
    pub samples: usize,
    /// A nonzero commutator of basis elements, so the width is at least 1.
    pub nonzero: CommutatorCertificate,
    /// Every verified witness, in draw order.
    pub witnesses: Vec<CommutatorCertificate>,
}

/// Checks the single-commutator construction on random elements of the
/// commutator subalgebra, with coefficients in `[-5, 5]` over its basis.
pub fn cw_certificate(
    q: &Arc<FiniteQuandle>,
    ring: CoefficientRing,
    samples: usize,
    seed: u64,
) -> Result<CwCertificate> {
    let shape = width_one_shape(q)
        .ok_or_else(|| Error::Unsupported("no single-commutator construction for this quandle".into()))?;
    let basis = commutator_subalgebra(q, ring)?.rows();
    let n = q.order();
    let nonzero = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| q.mul(i, j) != q.mul(j, i))
        .map(|(i, j)| -> Result<CommutatorCertificate> {
            let (a, b) = (RingElement::basis(q, ring, i)?, RingElement::basis(q, ring, j)?);
            Ok(CommutatorCertificate {
                element: commutator(&a, &b)?,
                terms: vec![(ring.one(), a, b)],
            })
        })
        .transpose()?
        .ok_or_else(|| Error::HypothesisFailed("the quandle is commutative".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witnesses = Vec::with_capacity(samples);
    for _ in 0..samples {
        let mut u = vec![ring.zero(); n];
        for row in &basis {
            let k = ring.from_int(rng.gen_range(-5..=5));
            for (a, &r) in u.iter_mut().zip(row) {
                *a = *a + k * r;
            }
        }
        let cert = single_commutator_witness(&RingElement::from_dense(q, ring, &u)?)?;
        witnesses.push(cert);
    }
    Ok(CwCertificate {
        shape,
        samples,
        nonzero,
        witnesses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClSearch {
    /// Length 0: the element is zero.
    Zero,
    /// The minimum length within the coefficient bound, with a witness.
    Found(CommutatorCertificate),
    /// No decomposition of length at most `max_len` with entries in the box.
    NotWithinBounds { max_len: usize, bound: i128 },
}

impl fmt::Display for ClSearch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClSearch::Zero => write!(f, "length 0"),
            ClSearch::Found(c) => write!(f, "length {} (minimum within bounds): {c}", c.length()),
            ClSearch::NotWithinBounds { max_len, bound } => write!(
                f,
                "no decomposition of length at most {max_len} with coefficients in [-{bound}, {bound}]"
            ),
        }
    }
}

fn solve_field(cols: &[&[Scalar]], u: &[Scalar], ring: CoefficientRing) -> Option<Vec<Scalar>> {
    let k = cols.len();
    let mut m: Vec<Vec<Scalar>> = (0..u.len())
        .map(|i| cols.iter().map(|c| c[i]).chain(std::iter::once(u[i])).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inverse()?;
        m[row].iter_mut().for_each(|x| *x = *x * inv);
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col];
                other.iter_mut().zip(&pivot_row).for_each(|(x, &y)| *x = *x - f * y);
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut sol = vec![ring.zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m[r][k];
    }
    check_combination(cols, u, &sol).then_some(sol)
}

fn check_combination(cols: &[&[Scalar]], u: &[Scalar], sol: &[Scalar]) -> bool {
    (0..u.len()).all(|i| {
        let s = cols
            .iter()
            .zip(sol)
            .map(|(c, &a)| c[i] * a)
            .fold(u[i].ring().zero(), |a, b| a + b);
        s == u[i]
    })
}

fn ints(v: &[Scalar]) -> Vec<i128> {
    v.iter().map(|s| s.as_int().expect("integer")).collect()
}

/// Integer solution of `u = sum a_k cols[k]` for one or two columns.
fn solve_int(cols: &[&[Scalar]], u: &[Scalar]) -> Option<Vec<Scalar>> {
    let cs: Vec<Vec<i128>> = cols.iter().map(|c| ints(c)).collect();
    let uv = ints(u);
    let as_scalars = |v: Vec<i128>| v.into_iter().map(Scalar::Int).collect::<Vec<_>>();
    let k = cs.len();
    // rational elimination first
    let mut m: Vec<Vec<Ratio<i128>>> = (0..uv.len())
        .map(|i| {
            cs.iter()
                .map(|c| Ratio::from(c[i]))
                .chain(std::iter::once(Ratio::from(uv[i])))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let piv = m[row][col];
        m[row].iter_mut().for_each(|x| *x /= piv);
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col];
                other.iter_mut().zip(&pivot_row).for_each(|(x, &y)| *x -= f * y);
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    if pivots.len() == k {
        let mut sol = vec![0i128; k];
        for (r, &c) in pivots.iter().enumerate() {
            let v = m[r][k];
            if !v.denom().is_one() {
                return None;
            }
            sol[c] = v.to_integer();
        }
        return Some(as_scalars(sol));
    }
    // two parallel columns p*g and q*g with g primitive
    if k != 2 || pivots.is_empty() {
        return None;
    }
    let base = if cs[0].iter().any(|&x| x != 0) { &cs[0] } else { &cs[1] };
    let content = base.iter().fold(0i128, |g, &x| g.gcd(&x));
    let g: Vec<i128> = base.iter().map(|&x| x / content).collect();
    let i = g.iter().position(|&x| x != 0)?;
    let (p, q, t) = (cs[0][i] / g[i], cs[1][i] / g[i], uv[i] / g[i]);
    if uv[i] % g[i] != 0 {
        return None;
    }
    let e = p.extended_gcd(&q);
    if e.gcd == 0 || t % e.gcd != 0 {
        return None;
    }
    let f = t / e.gcd;
    let sol = vec![e.x * f, e.y * f];
    let out = as_scalars(sol);
    check_combination(cols, u, &out).then_some(out)
}

/// Distinct nonzero values of `[v, w]` over all pairs of `boxed`, each with
/// its lightest pair (ties to the earliest), ordered by that weight.
fn commutator_values<T>(
    q: &FiniteQuandle,
    boxed: &[Vec<i128>],
    weight: &[u128],
    zero: T,
    lift: impl Fn(i128) -> T + Sync,
) -> Vec<(Vec<T>, (usize, usize))>
where
    T: Copy + Eq + std::hash::Hash + Send + Sync + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let n = q.order();
    let key = |(a, b): (usize, usize)| (weight[a] + weight[b], a, b);
    // Sparse form of each element, so the inner loop skips zeros.
    let sparse: Vec<Vec<(usize, T)>> = boxed
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (i, lift(x)))
                .collect()
        })
        .collect();
    let threads = std::thread::available_parallelism()
        .map_or(1, |t| t.get())
        .min(sparse.len().max(1));
    let chunk = sparse.len().div_ceil(threads).max(1);
    let parts: Vec<HashMap<Vec<T>, (usize, usize)>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..sparse.len())
            .step_by(chunk)
            .map(|start| {
                let sparse = &sparse;
                s.spawn(move || {
                    let mut out: HashMap<Vec<T>, (usize, usize)> = HashMap::new();
                    let mut c = vec![zero; n];
                    for a in start..(start + chunk).min(sparse.len()) {
                        for (b, sb) in sparse.iter().enumerate() {
                            c.fill(zero);
                            for &(i, x) in &sparse[a] {
                                for &(j, y) in sb {
                                    let p = x * y;
                                    let (ij, ji) = (q.mul(i, j), q.mul(j, i));
                                    c[ij] = c[ij] + p;
                                    c[ji] = c[ji] - p;
                                }
                            }
                            if c.iter().all(|&x| x == zero) {
                                continue;
                            }
                            match out.get_mut(&c) {
                                Some(e) => {
                                    if key((a, b)) < key(*e) {
                                        *e = (a, b);
                                    }
                                }
                                None => {
                                    out.insert(c.clone(), (a, b));
                                }
                            }
                        }
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search thread")).collect()
    });
    let mut values: HashMap<Vec<T>, (usize, usize)> = HashMap::new();
    for part in parts {
        for (c, ab) in part {
            let e = values.entry(c).or_insert(ab);
            if key(ab) < key(*e) {
                *e = ab;
            }
        }
    }
    let mut values: Vec<(Vec<T>, (usize, usize))> = values.into_iter().collect();
    values.sort_by_key(|(_, ab)| key(*ab));
    values
}

/// Every nonzero commutator `[v, w]` with `v, w` in a coefficient box,
/// keyed by value and keeping the lightest pair. Built once, queried many times.
pub struct CommutatorTable {
    quandle: Arc<FiniteQuandle>,
    ring: CoefficientRing,
    bound: i128,
    elems: Vec<RingElement>,
    values: Vec<(Vec<Scalar>, (usize, usize))>,
}

impl CommutatorTable {
    /// Values are collected in parallel over the left factor.
    pub fn new(q: &Arc<FiniteQuandle>, ring: CoefficientRing, bound: i128, budget: u128) -> Result<Self> {
        if !(ring.is_field() || ring == CoefficientRing::Integers) {
            return Err(Error::NotIntegralDomain(ring));
        }
        let n = q.order();
        let side = (2 * bound + 1) as u128;
        let count = side.checked_pow(n as u32).unwrap_or(u128::MAX);
        check_bound("commutator pairs", count.saturating_mul(count), budget)?;
        let mut boxed: Vec<Vec<i128>> = Vec::new();
        let mut v = vec![-bound; n];
        loop {
            boxed.push(v.clone());
            if !odometer(&mut v, -bound, bound) {
                break;
            }
        }
        // Light factors first, so reported decompositions are the smallest found.
        boxed.sort_by_key(|v| v.iter().map(|x| x.unsigned_abs()).sum::<u128>());
        let weight: Vec<u128> = boxed.iter().map(|v| v.iter().map(|x| x.unsigned_abs()).sum()).collect();
        let elems: Vec<RingElement> = boxed
            .iter()
            .map(|v| RingElement::from_ints(q, ring, v))
            .collect::<Result<_>>()?;
        let values: Vec<(Vec<Scalar>, (usize, usize))> = if ring == CoefficientRing::Integers {
            commutator_values(q, &boxed, &weight, 0i128, |x| x)
                .into_iter()
                .map(|(c, ab)| (c.into_iter().map(Scalar::Int).collect(), ab))
                .collect()
        } else {
            commutator_values(q, &boxed, &weight, ring.zero(), |x| ring.from_int(x))
        };
        Ok(CommutatorTable {
            quandle: q.clone(),
            ring,
            bound,
            elems,
            values,
        })
    }

    /// Number of distinct nonzero commutator values.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Shortest `u = sum_{i <= max_len} s_i [v_i, w_i]` over the table;
    /// scalars are unrestricted.
    pub fn search(&self, u: &RingElement, max_len: usize, budget: u128) -> Result<ClSearch> {
        if max_len > 2 {
            return Err(Error::Unsupported("exact search is limited to length 2".into()));
        }
        if !Arc::ptr_eq(u.quandle(), &self.quandle) && !u.quandle().same_structure(&self.quandle) {
            return Err(Error::HypothesisFailed("element belongs to a different quandle".into()));
        }
        if u.ring() != self.ring {
            return Err(Error::HypothesisFailed(
                "element has a different coefficient ring".into(),
            ));
        }
        if u.is_zero() {
            return Ok(ClSearch::Zero);
        }
        let ring = self.ring;
        let values = &self.values;
        let target = u.dense();
        let solve = |cols: &[&[Scalar]]| {
            if ring == CoefficientRing::Integers {
                solve_int(cols, &target)
            } else {
                solve_field(cols, &target, ring)
            }
        };
        let certificate = |picks: &[usize], sol: Vec<Scalar>| CommutatorCertificate {
            element: u.clone(),
            terms: picks
                .iter()
                .zip(sol)
                .map(|(&p, s)| {
                    let (a, b) = values[p].1;
                    (s, self.elems[a].clone(), self.elems[b].clone())
                })
                .collect(),
        };
        for (k, (c, _)) in values.iter().enumerate() {
            if let Some(sol) = solve(&[c]) {
                return Ok(ClSearch::Found(certificate(&[k], sol)));
            }
        }
        if max_len == 2 {
            check_bound("commutator value pairs", (values.len() as u128).pow(2), budget)?;
            for i in 0..values.len() {
                for j in i + 1..values.len() {
                    if let Some(sol) = solve(&[&values[i].0, &values[j].0]) {
                        return Ok(ClSearch::Found(certificate(&[i, j], sol)));
                    }
                }
            }
        }
        Ok(ClSearch::NotWithinBounds {
            max_len,
            bound: self.bound,
        })
    }
}

/// Exhaustive search for `u = sum_{i <= max_len} s_i [v_i, w_i]` with all
/// `v_i, w_i` in the coefficient box; scalars are unrestricted.
pub fn cl_exact_small(u: &RingElement, max_len: usize, bound: i128, budget: u128) -> Result<ClSearch> {
    if max_len > 2 {
        return Err(Error::Unsupported("exact search is limited to length 2".into()));
    }
    if u.is_zero() {
        return Ok(ClSearch::Zero);
    }
    CommutatorTable::new(u.quandle(), u.ring(), bound, budget)?.search(u, max_len, budget)
}

/// Width bounds for a non-commutative quandle, plus an empirical check of
/// how many random augmentation-ideal elements are single commutators
/// within a small coefficient box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthReport {
    pub certificate: DeltaEqualityCertificate,
    pub tried: usize,
    pub single_commutators: usize,
    pub bound: i128,
}

pub fn width_bounds(
    q: &Arc<FiniteQuandle>,
    samples: usize,
    bound: i128,
    seed: u64,
    budget: u128,
) -> Result<WidthReport> {
    let certificate = strongly_noncomm_delta_equality(q)?;
    let n = q.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = CommutatorTable::new(q, CoefficientRing::Integers, bound, budget)?;
    let mut hits = 0;
    for _ in 0..samples {
        let mut v: Vec<i128> = (1..n).map(|_| rng.gen_range(-3..=3)).collect();
        v.insert(0, -v.iter().sum::<i128>());
        let u = RingElement::from_ints(q, CoefficientRing::Integers, &v)?;
        match table.search(&u, 1, budget)? {
            ClSearch::Zero | ClSearch::Found(_) => hits += 1,
            ClSearch::NotWithinBounds { .. } => {}
        }
    }
    Ok(WidthReport {
        certificate,
        tried: samples,
        single_commutators: hits,
        bound,
    })
}
