//! Orderability of finite quandles, unique products, and zero-divisors.

mod zero_divisors;

pub use zero_divisors::{
    extended_ring_witness, inert_witness, is_inert_witness, smallest_subquandle, up_sample_free, up_sample_int,
    zero_divisor_witness, InertWitness, NoZeroDivisorReport, Strategy, ZeroDivisorWitness,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{check_bound, Error, Result};
use crate::infinite::{Magma, Side};
use crate::quandle::{permutations, FiniteQuandle};

pub const MAX_ORDER_SEARCH: usize = 9;
pub const ORDER_SEARCH_BUDGET: u128 = 10_000_000;

/// A linear order on a finite quandle, listed from smallest to largest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOrder {
    pub side: Side,
    pub chain: Vec<usize>,
}

impl LinearOrder {
    /// Position of each element in the chain.
    pub fn rank(&self) -> Vec<usize> {
        let mut r = vec![0; self.chain.len()];
        for (pos, &x) in self.chain.iter().enumerate() {
            r[x] = pos;
        }
        r
    }

    /// Whether every translation on `side` is strictly increasing.
    pub fn respects(&self, q: &FiniteQuandle) -> bool {
        let r = self.rank();
        let n = q.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                r[x] >= r[y]
                    || (0..n).all(|z| {
                        let (p, s) = products(q, self.side, x, y, z);
                        r[p] < r[s]
                    })
            })
        })
    }

    /// `a2 < a0 < a1`.
    pub fn display(&self, q: &FiniteQuandle) -> String {
        self.chain.iter().map(|&x| q.label(x)).collect::<Vec<_>>().join(" < ")
    }
}

fn products(q: &FiniteQuandle, side: Side, x: usize, y: usize, z: usize) -> (usize, usize) {
    match side {
        Side::Right => (q.mul(x, z), q.mul(y, z)),
        Side::Left => (q.mul(z, x), q.mul(z, y)),
    }
}

struct OrderSearch<'a> {
    q: &'a FiniteQuandle,
    side: Side,
    nodes: u128,
}

impl OrderSearch<'_> {
    /// Checks every constraint whose four elements are all placed.
    fn consistent(&self, pos: &[Option<usize>]) -> bool {
        let n = self.q.order();
        for x in 0..n {
            let Some(px) = pos[x] else { continue };
            for y in 0..n {
                match pos[y] {
                    Some(py) if px < py => {}
                    _ => continue,
                }
                for z in 0..n {
                    let (a, b) = products(self.q, self.side, x, y, z);
                    if a == b {
                        return false;
                    }
                    if let (Some(pa), Some(pb)) = (pos[a], pos[b]) {
                        if pa >= pb {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Inserts element `k` at every position of the chain in turn.
    fn insert(&mut self, chain: &mut Vec<usize>, k: usize) -> Result<bool> {
        self.nodes += 1;
        check_bound("order search nodes", self.nodes, ORDER_SEARCH_BUDGET)?;
        let n = self.q.order();
        if k == n {
            return Ok(true);
        }
        for at in 0..=chain.len() {
            chain.insert(at, k);
            let mut pos = vec![None; n];
            for (p, &x) in chain.iter().enumerate() {
                pos[x] = Some(p);
            }
            if self.consistent(&pos) && self.insert(chain, k + 1)? {
                return Ok(true);
            }
            chain.remove(at);
        }
        Ok(false)
    }
}

/// Backtracking search for an order preserved by translations on `side`.
/// `None` means none exists.
pub fn find_order(q: &FiniteQuandle, side: Side) -> Result<Option<LinearOrder>> {
    check_bound("quandle order", q.order() as u128, MAX_ORDER_SEARCH as u128)?;
    let mut search = OrderSearch { q, side, nodes: 0 };
    let mut chain = Vec::new();
    Ok(search.insert(&mut chain, 0)?.then_some(LinearOrder { side, chain }))
}

/// Tries all `n!` orders; an oracle for small tables.
pub fn find_order_brute(q: &FiniteQuandle, side: Side) -> Result<Option<LinearOrder>> {
    check_bound("quandle order", q.order() as u128, 6)?;
    Ok(permutations(q.order())
        .into_iter()
        .map(|chain| LinearOrder { side, chain })
        .find(|o| o.respects(q)))
}

/// Every product `a * b` with `a` in `A` and `b` in `B`, with its
/// representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniqueProductReport<E> {
    pub a: Vec<E>,
    pub b: Vec<E>,
    pub products: BTreeMap<E, Vec<(E, E)>>,
    pub unique: Vec<E>,
    /// Some product is uniquely represented.
    pub up: bool,
    /// Two products are uniquely represented, or `|A| + |B| <= 2`.
    pub tup: bool,
    /// `(max A, b', product)` with the product uniquely represented.
    pub max_witness: Option<(E, E, E)>,
    /// `(min A, b'', product)` with the product uniquely represented.
    pub min_witness: Option<(E, E, E)>,
}

impl<E> UniqueProductReport<E> {
    pub fn representation_count(&self) -> usize {
        self.products.values().map(Vec::len).sum()
    }
}

/// The product census of two finite subsets; duplicates are dropped and
/// `A`, `B` are sorted by the element order.
pub fn unique_products<M: Magma>(m: &M, a: &[M::Elem], b: &[M::Elem]) -> Result<UniqueProductReport<M::Elem>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::HypothesisFailed("A and B must be non-empty".into()));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    a.dedup();
    b.sort();
    b.dedup();
    type Census<E> = BTreeMap<E, Vec<(E, E)>>;
    let mut products: Census<M::Elem> = BTreeMap::new();
    for x in &a {
        for y in &b {
            products.entry(m.op(x, y)).or_default().push((x.clone(), y.clone()));
        }
    }
    let unique: Vec<M::Elem> = products
        .iter()
        .filter(|(_, reps)| reps.len() == 1)
        .map(|(p, _)| p.clone())
        .collect();
    let witness = |x: &M::Elem| {
        b.iter().find_map(|y| {
            let p = m.op(x, y);
            (products[&p].len() == 1).then(|| (x.clone(), y.clone(), p))
        })
    };
    let max_witness = witness(a.last().expect("non-empty"));
    let min_witness = witness(&a[0]);
    Ok(UniqueProductReport {
        up: !unique.is_empty(),
        tup: a.len() + b.len() <= 2 || unique.len() >= 2,
        a,
        b,
        products,
        unique,
        max_witness,
        min_witness,
    })
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain: Vec<String> = self.chain.iter().map(|x| x.to_string()).collect();
        write!(f, "{} order {}", self.side, chain.join(" < "))
    }
}
