//! Quandles sitting inside quandle rings.
//!
//! A subset of a quandle ring is a quandle when it is closed under ring
//! multiplication and the axioms hold for the restricted product. The zero
//! element is never part of a listed maximal quandle: any quandle
//! containing 0 is `{0}` itself, and it is left out by convention.

mod parametric;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use parametric::{
    certify_not_extendable, certify_parametric_quandle, cs4_diagonal_part, cs4_line_part, cs4_n1, cs4_n2,
    r4_maximal_quandle, ClosureRule, FamilyPart, NotExtendableCertificate, ParameterMap, ParametricCertificate,
    ParametricQuandle, RightTranslationCheck,
};

use crate::catalog;
use crate::error::{check_bound, Error, Result};
use crate::idempotents::{idempotents_box, idempotents_modular};
use crate::quandle::{verify_quandle, FiniteQuandle};
use crate::ring::RingElement;

pub const DEFAULT_MAX_ELEMENTS: usize = 20;
pub const DEFAULT_NODE_BUDGET: u128 = 10_000_000;

/// Why a finite subset of a quandle ring fails to be a quandle. Indices
/// refer to the input list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingQuandleViolation {
    Empty,
    Duplicate {
        first: usize,
        second: usize,
    },
    NotClosed {
        left: usize,
        right: usize,
        product: RingElement,
    },
    NotIdempotent {
        index: usize,
    },
    RightTranslationNotInjective {
        right: usize,
        first: usize,
        second: usize,
    },
    NotDistributive {
        i: usize,
        j: usize,
        k: usize,
    },
}

impl fmt::Display for RingQuandleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingQuandleViolation::Empty => write!(f, "empty set"),
            RingQuandleViolation::Duplicate { first, second } => {
                write!(f, "elements {first} and {second} coincide")
            }
            RingQuandleViolation::NotClosed { left, right, product } => {
                write!(
                    f,
                    "product of elements {left} and {right} is {product}, outside the set"
                )
            }
            RingQuandleViolation::NotIdempotent { index } => {
                write!(f, "element {index} is not idempotent")
            }
            RingQuandleViolation::RightTranslationNotInjective { right, first, second } => write!(
                f,
                "right multiplication by element {right} sends elements {first} and {second} to the same product"
            ),
            RingQuandleViolation::NotDistributive { i, j, k } => {
                write!(f, "right distributivity fails on elements ({i}, {j}, {k})")
            }
        }
    }
}

/// A finite quandle of ring elements with its multiplication table, where
/// `table.mul(i, j)` is the index of `elements[i] * elements[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingQuandle {
    pub elements: Vec<RingElement>,
    pub table: FiniteQuandle,
}

impl RingQuandle {
    /// The name of an isomorphic catalog quandle, searched up to order 6.
    pub fn isomorphism_tag(&self) -> Option<&'static str> {
        (self.table.order() <= 6)
            .then(|| catalog::identify(&self.table))
            .flatten()
    }

    pub fn contains(&self, e: &RingElement) -> bool {
        self.elements.contains(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuandleCheck {
    Quandle(RingQuandle),
    Violation(RingQuandleViolation),
}

impl QuandleCheck {
    pub fn holds(&self) -> bool {
        matches!(self, QuandleCheck::Quandle(_))
    }
}

fn same_ring_all(elements: &[RingElement]) -> Result<()> {
    if let Some(first) = elements.first() {
        if elements.iter().any(|e| !e.same_ring(first)) {
            return Err(Error::RingMismatch);
        }
    }
    Ok(())
}

/// Checks closure and the three axioms on a finite set of ring elements.
pub fn is_ring_quandle(elements: &[RingElement]) -> Result<QuandleCheck> {
    same_ring_all(elements)?;
    if elements.is_empty() {
        return Ok(QuandleCheck::Violation(RingQuandleViolation::Empty));
    }
    let mut index: HashMap<&RingElement, usize> = HashMap::new();
    for (k, e) in elements.iter().enumerate() {
        if let Some(&first) = index.get(e) {
            return Ok(QuandleCheck::Violation(RingQuandleViolation::Duplicate {
                first,
                second: k,
            }));
        }
        index.insert(e, k);
    }
    let n = elements.len();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = elements[i].mul(&elements[j])?;
            match index.get(&p) {
                Some(&k) => table[i][j] = k,
                None => {
                    return Ok(QuandleCheck::Violation(RingQuandleViolation::NotClosed {
                        left: i,
                        right: j,
                        product: p,
                    }))
                }
            }
        }
    }
    Ok(match verify_quandle(&table) {
        Ok(t) => QuandleCheck::Quandle(RingQuandle {
            elements: elements.to_vec(),
            table: t,
        }),
        Err(Error::IdempotenceViolation { i, .. }) => {
            QuandleCheck::Violation(RingQuandleViolation::NotIdempotent { index: i })
        }
        Err(Error::RightTranslationViolation { j, i1, i2, .. }) => {
            QuandleCheck::Violation(RingQuandleViolation::RightTranslationNotInjective {
                right: j,
                first: i1,
                second: i2,
            })
        }
        Err(Error::DistributivityViolation { i, j, k, .. }) => {
            QuandleCheck::Violation(RingQuandleViolation::NotDistributive { i, j, k })
        }
        Err(e) => return Err(e),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalQuandles {
    /// Ordered by size, then by the sorted element lists.
    pub quandles: Vec<RingQuandle>,
    /// Whether 0 was among the candidates and dropped.
    pub zero_excluded: bool,
    pub candidates: usize,
}

/// Products of candidate pairs as indices into the candidate list.
struct ProductTable {
    n: usize,
    prod: Vec<Option<usize>>,
}

impl ProductTable {
    fn new(items: &[RingElement]) -> Result<Self> {
        let n = items.len();
        let index: HashMap<&RingElement, usize> = items.iter().enumerate().map(|(k, e)| (e, k)).collect();
        let mut prod = Vec::with_capacity(n * n);
        for a in items {
            for b in items {
                prod.push(index.get(&a.mul(b)?).copied());
            }
        }
        Ok(ProductTable { n, prod })
    }

    fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.prod[i * self.n + j]
    }

    /// Closure and the axioms for the subset `mask`.
    fn is_quandle(&self, mask: u64) -> bool {
        let members: Vec<usize> = (0..self.n).filter(|&i| mask >> i & 1 == 1).collect();
        if members.is_empty() {
            return false;
        }
        for &i in &members {
            if self.get(i, i) != Some(i) {
                return false;
            }
            for &j in &members {
                match self.get(i, j) {
                    Some(k) if mask >> k & 1 == 1 => {}
                    _ => return false,
                }
            }
        }
        for &j in &members {
            let mut seen = 0u64;
            for &i in &members {
                let p = self.get(i, j).unwrap();
                if seen >> p & 1 == 1 {
                    return false;
                }
                seen |= 1 << p;
            }
        }
        for &i in &members {
            for &j in &members {
                for &k in &members {
                    let ij = self.get(i, j).unwrap();
                    let lhs = self.get(ij, k).unwrap();
                    let rhs = self.get(self.get(i, k).unwrap(), self.get(j, k).unwrap()).unwrap();
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn raw_scan(&self) -> Vec<u64> {
        (1u64..1 << self.n).filter(|&m| self.is_quandle(m)).collect()
    }

    /// Grows subsets in index order; a branch dies as soon as a product of
    /// chosen elements leaves the candidate list or lands on a skipped one.
    /// The two top-level branches (first candidate skipped or taken) run
    /// on separate threads, each with the full node budget.
    fn dfs(&self, budget: u128) -> Result<Vec<u64>> {
        if self.n == 0 {
            return Ok(Vec::new());
        }
        let first_ok = self.get(0, 0) == Some(0);
        let (skip, take) = std::thread::scope(|s| {
            let skip = s.spawn(|| {
                let mut out = Vec::new();
                self.grow(1, 0, 1, &mut out, &mut 0, budget).map(|_| out)
            });
            let mut out = Vec::new();
            let take = if first_ok {
                self.grow(1, 1, 0, &mut out, &mut 0, budget).map(|_| out)
            } else {
                Ok(out)
            };
            (skip.join().expect("search thread"), take)
        });
        let mut all = skip?;
        all.extend(take?);
        Ok(all)
    }

    fn grow(
        &self,
        pos: usize,
        chosen: u64,
        skipped: u64,
        out: &mut Vec<u64>,
        nodes: &mut u128,
        budget: u128,
    ) -> Result<()> {
        *nodes += 1;
        check_bound("subset search nodes", *nodes, budget)?;
        if pos == self.n {
            if chosen != 0 && self.is_quandle(chosen) {
                out.push(chosen);
            }
            return Ok(());
        }
        self.grow(pos + 1, chosen, skipped | 1 << pos, out, nodes, budget)?;
        let with = chosen | 1 << pos;
        let consistent = (0..self.n).filter(|&i| with >> i & 1 == 1).all(|i| {
            [self.get(i, pos), self.get(pos, i)]
                .into_iter()
                .all(|p| matches!(p, Some(k) if skipped >> k & 1 == 0))
        });
        if consistent {
            self.grow(pos + 1, with, skipped, out, nodes, budget)?;
        }
        Ok(())
    }
}

fn maximal_masks(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut maximal: Vec<u64> = Vec::new();
    for m in masks {
        if !maximal.iter().any(|&big| big & m == m) {
            maximal.push(m);
        }
    }
    maximal
}

/// All inclusion-maximal ring quandles inside a finite candidate list,
/// typically a list of idempotents.
pub fn maximal_quandles_finite(candidates: &[RingElement], max_elements: usize) -> Result<MaximalQuandles> {
    maximal_quandles_with_budget(candidates, max_elements, DEFAULT_NODE_BUDGET)
}

pub fn maximal_quandles_with_budget(
    candidates: &[RingElement],
    max_elements: usize,
    node_budget: u128,
) -> Result<MaximalQuandles> {
    same_ring_all(candidates)?;
    let mut items: Vec<RingElement> = candidates.to_vec();
    items.sort();
    items.dedup();
    let before = items.len();
    items.retain(|e| !e.is_zero());
    let zero_excluded = items.len() != before;
    let count = items.len();
    let mut result = MaximalQuandles {
        quandles: Vec::new(),
        zero_excluded,
        candidates: count,
    };
    if items.is_empty() {
        return Ok(result);
    }
    if let QuandleCheck::Quandle(q) = is_ring_quandle(&items)? {
        result.quandles.push(q);
        return Ok(result);
    }
    check_bound("candidate count", count as u128, max_elements.min(63) as u128)?;
    let table = ProductTable::new(&items)?;
    let masks = if count <= 12 {
        table.raw_scan()
    } else {
        table.dfs(node_budget)?
    };
    let mut found: Vec<RingQuandle> = maximal_masks(masks)
        .into_iter()
        .map(|m| {
            let els: Vec<RingElement> = (0..count)
                .filter(|&i| m >> i & 1 == 1)
                .map(|i| items[i].clone())
                .collect();
            match is_ring_quandle(&els) {
                Ok(QuandleCheck::Quandle(q)) => q,
                _ => unreachable!("subset was checked"),
            }
        })
        .collect();
    found.sort_by(|a, b| {
        a.elements
            .len()
            .cmp(&b.elements.len())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    result.quandles = found;
    Ok(result)
}

/// Compares integral maximal quandles, reduced mod `m`, with the maximal
/// quandles of `Z_m[Q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub modulus: u64,
    pub bound: i128,
    pub integral: Vec<RingQuandle>,
    /// Reduction of each integral quandle, as a sorted element set.
    pub images: Vec<Vec<RingElement>>,
    pub modular: Vec<RingQuandle>,
    /// Indices into `modular` that are not the image of an integral quandle.
    pub unmatched: Vec<usize>,
}

impl ReductionReport {
    pub fn surjective(&self) -> bool {
        self.unmatched.is_empty()
    }
}

/// The integral side uses box idempotents with coefficients in `[-bound, bound]`.
pub fn mq_reduction_check(q: &Arc<FiniteQuandle>, m: u64, bound: i128, budget: u128) -> Result<ReductionReport> {
    let integral = maximal_quandles_finite(&idempotents_box(q, bound, budget)?, DEFAULT_MAX_ELEMENTS)?.quandles;
    let modular = maximal_quandles_finite(&idempotents_modular(q, m, budget)?, DEFAULT_MAX_ELEMENTS)?.quandles;
    let images: Vec<Vec<RingElement>> = integral
        .iter()
        .map(|rq| {
            let mut img: Vec<RingElement> = rq.elements.iter().map(|e| e.reduce_mod(m)).collect::<Result<_>>()?;
            img.sort();
            img.dedup();
            Ok(img)
        })
        .collect::<Result<_>>()?;
    let unmatched = modular
        .iter()
        .enumerate()
        .filter(|(_, mq)| {
            let mut els = mq.elements.clone();
            els.sort();
            !images.contains(&els)
        })
        .map(|(k, _)| k)
        .collect();
    Ok(ReductionReport {
        modulus: m,
        bound,
        integral,
        images,
        modular,
        unmatched,
    })
}
