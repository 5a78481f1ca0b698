//! Zero-divisor witnesses in finite quandle rings and sampling evidence for
//! their absence in rings of orderable semi-latin quandles.
//!
//! A missing witness is never a proof that no zero-divisor exists.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::unique_products;
use crate::coeffs::CoefficientRing;
use crate::error::{check_bound, Error, Result};
use crate::infinite::{
    sparse_is_zero, sparse_mul, sparse_to_string, FreeQuandle, FreeQuandleElement, IntQuandle, Magma, SparseElement,
};
use crate::quandle::FiniteQuandle;
use crate::ring::{ExtRingElement, RingElement};

/// `A` with `x != y` and equal multisets `{a x : a in A}` and `{a y : a in A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertWitness {
    pub a: Vec<usize>,
    pub x: usize,
    pub y: usize,
}

fn column_multiset(q: &FiniteQuandle, a: &[usize], x: usize) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().map(|&s| q.mul(s, x)).collect();
    v.sort_unstable();
    v
}

pub fn is_inert_witness(q: &FiniteQuandle, w: &InertWitness) -> bool {
    w.x != w.y && !w.a.is_empty() && column_multiset(q, &w.a, w.x) == column_multiset(q, &w.a, w.y)
}

/// Subsets of `0..n` with `k` elements, in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The first witness by subset size, then lexicographically.
pub fn inert_witness(q: &FiniteQuandle, max_size: usize) -> Result<Option<InertWitness>> {
    let n = q.order();
    check_bound("quandle order", n as u128, 16)?;
    for k in 1..=max_size.min(n) {
        for a in subsets(n, k) {
            for x in 0..n {
                let col = column_multiset(q, &a, x);
                for y in x + 1..n {
                    if col == column_multiset(q, &a, y) {
                        return Ok(Some(InertWitness { a, x, y }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The first closed subset with at least two elements, by size.
pub fn smallest_subquandle(q: &FiniteQuandle) -> Option<Vec<usize>> {
    let n = q.order();
    if n > 16 {
        return (n >= 2).then(|| (0..n).collect());
    }
    (2..=n).find_map(|k| subsets(n, k).into_iter().find(|s| q.is_closed(s)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    TrivialSubquandle,
    FiniteSubquandle,
    NotSemiLatin,
    Inert,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::TrivialSubquandle,
        Strategy::FiniteSubquandle,
        Strategy::NotSemiLatin,
        Strategy::Inert,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "auto" => Strategy::Auto,
            "trivial-subquandle" => Strategy::TrivialSubquandle,
            "finite-subquandle" => Strategy::FiniteSubquandle,
            "not-semi-latin" => Strategy::NotSemiLatin,
            "inert" => Strategy::Inert,
            other => return Err(Error::Parse(format!("unknown strategy {other:?}"))),
        })
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::TrivialSubquandle => "trivial-subquandle",
            Strategy::FiniteSubquandle => "finite-subquandle",
            Strategy::NotSemiLatin => "not-semi-latin",
            Strategy::Inert => "inert",
        })
    }
}

/// Nonzero `u`, `v` with `u v = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDivisorWitness {
    pub strategy: Strategy,
    pub u: RingElement,
    pub v: RingElement,
}

impl ZeroDivisorWitness {
    pub fn verify(&self) -> bool {
        !self.u.is_zero() && !self.v.is_zero() && self.u.mul(&self.v).is_ok_and(|p| p.is_zero())
    }
}

fn attempt(q: &Arc<FiniteQuandle>, ring: CoefficientRing, s: Strategy) -> Result<Option<(RingElement, RingElement)>> {
    let n = q.order();
    let b = |i: usize| RingElement::basis(q, ring, i);
    let sum = |set: &[usize]| RingElement::sum_of(q, ring, set);
    Ok(match s {
        Strategy::TrivialSubquandle => {
            let pair = (0..n)
                .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
                .find(|&(x, y)| q.mul(x, y) == x && q.mul(y, x) == y);
            match pair {
                Some((x, y)) => {
                    let u = b(x)?.sub(&b(y)?)?;
                    Some((u.clone(), u))
                }
                None => None,
            }
        }
        Strategy::FiniteSubquandle => match smallest_subquandle(q) {
            Some(a) => Some((sum(&a)?, b(a[0])?.sub(&b(a[1])?)?)),
            None => None,
        },
        Strategy::NotSemiLatin => {
            let triple = (0..n)
                .find_map(|x| (0..n).find_map(|y| (y + 1..n).find(|&z| q.mul(x, y) == q.mul(x, z)).map(|z| (x, y, z))));
            match triple {
                Some((x, y, z)) => Some((b(x)?, b(y)?.sub(&b(z)?)?)),
                None => None,
            }
        }
        Strategy::Inert => match inert_witness(q, n)? {
            Some(w) => Some((sum(&w.a)?, b(w.x)?.sub(&b(w.y)?)?)),
            None => None,
        },
        Strategy::Auto => unreachable!("expanded by the caller"),
    })
}

/// Builds a zero-divisor pair by the chosen recipe; `Auto` tries the
/// recipes in the order of [`Strategy::ALL`]. Each pair is re-multiplied
/// before it is returned.
pub fn zero_divisor_witness(
    q: &Arc<FiniteQuandle>,
    ring: CoefficientRing,
    strategy: Strategy,
) -> Result<Option<ZeroDivisorWitness>> {
    let order: Vec<Strategy> = match strategy {
        Strategy::Auto => Strategy::ALL.to_vec(),
        s => vec![s],
    };
    for s in order {
        if let Some((u, v)) = attempt(q, ring, s)? {
            let w = ZeroDivisorWitness { strategy: s, u, v };
            if !w.verify() {
                return Err(Error::VerificationFailed(format!(
                    "{s}: ({}) * ({}) is not zero",
                    w.u, w.v
                )));
            }
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// `x (e - x) = 0` in the ring with a unit adjoined.
pub fn extended_ring_witness(
    q: &Arc<FiniteQuandle>,
    ring: CoefficientRing,
    x: usize,
) -> Result<(ExtRingElement, ExtRingElement)> {
    let xe = ExtRingElement::from_body(RingElement::basis(q, ring, x)?);
    let other = ExtRingElement::unit_element(q, ring).sub(&xe)?;
    if !xe.mul(&other)?.is_zero() {
        return Err(Error::VerificationFailed("x (e - x) is not zero".into()));
    }
    Ok((xe, other))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoZeroDivisorReport {
    pub trials: usize,
    pub zero_products: usize,
    /// The first pair with a zero product, rendered.
    pub first_zero: Option<(String, String)>,
    /// Support pairs where the unique-product claim was checked.
    pub unique_product_checks: usize,
    pub unique_product_failures: usize,
}

fn sample_element<E: Ord + Clone, R: Rng>(
    rng: &mut R,
    support: usize,
    coeff_bound: i128,
    mut draw: impl FnMut(&mut R) -> E,
) -> SparseElement<E> {
    loop {
        let mut u = SparseElement::new();
        for _ in 0..rng.gen_range(1..=support) {
            let c = loop {
                let c = rng.gen_range(-coeff_bound..=coeff_bound);
                if c != 0 {
                    break c;
                }
            };
            *u.entry(draw(rng)).or_insert(0) += c;
        }
        u.retain(|_, c| *c != 0);
        if !u.is_empty() {
            return u;
        }
    }
}

/// Samples pairs of nonzero elements and counts zero products. With
/// `extremes` set, each support pair must have unique products at both
/// `max A` and `min A`, as for semi-latin quandles orderable by `Ord`.
fn up_sample<M: Magma, R: Rng>(
    m: &M,
    rng: &mut R,
    trials: usize,
    support: usize,
    coeff_bound: i128,
    extremes: bool,
    mut draw: impl FnMut(&mut R) -> M::Elem,
) -> Result<NoZeroDivisorReport> {
    if support == 0 || coeff_bound < 1 {
        return Err(Error::Unsupported(
            "support and coefficient bound must be positive".into(),
        ));
    }
    let mut report = NoZeroDivisorReport {
        trials,
        zero_products: 0,
        first_zero: None,
        unique_product_checks: 0,
        unique_product_failures: 0,
    };
    for _ in 0..trials {
        let u = sample_element(rng, support, coeff_bound, &mut draw);
        let v = sample_element(rng, support, coeff_bound, &mut draw);
        if sparse_is_zero(&sparse_mul(m, &u, &v)) {
            report.zero_products += 1;
            report
                .first_zero
                .get_or_insert_with(|| (sparse_to_string(m, &u), sparse_to_string(m, &v)));
        }
        let a: Vec<M::Elem> = u.keys().cloned().collect();
        let b: Vec<M::Elem> = v.keys().cloned().collect();
        let census = unique_products(m, &a, &b)?;
        report.unique_product_checks += 1;
        let ok = if extremes {
            census.max_witness.is_some() && census.min_witness.is_some()
        } else {
            census.up
        };
        if !ok {
            report.unique_product_failures += 1;
        }
    }
    Ok(report)
}

/// Elements drawn from `[-window, window]`. The extreme unique-product
/// check applies to `CoreZ`, which is semi-latin and left orderable by the
/// natural order.
pub fn up_sample_int(
    q: &IntQuandle,
    trials: usize,
    support: usize,
    coeff_bound: i128,
    window: i128,
    seed: u64,
) -> Result<NoZeroDivisorReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let extremes = matches!(q, IntQuandle::CoreZ | IntQuandle::AlexZ(-1));
    up_sample(q, &mut rng, trials, support, coeff_bound, extremes, |r| {
        r.gen_range(-window..=window)
    })
}

/// Elements are random normal forms with words of length at most
/// `max_word_len`; only the plain unique-product property is checked.
pub fn up_sample_free(
    fq: &FreeQuandle,
    trials: usize,
    support: usize,
    coeff_bound: i128,
    max_word_len: usize,
    seed: u64,
) -> Result<NoZeroDivisorReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = fq.rank;
    up_sample(fq, &mut rng, trials, support, coeff_bound, false, |r| {
        FreeQuandleElement::random(rank, max_word_len, r)
    })
}
