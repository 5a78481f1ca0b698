//! Ring automorphisms of `Z[Q]` as integer matrices.
//!
//! Column `j` of a matrix is the coefficient vector of the image of the
//! `j`-th basis element. A linear map is a ring automorphism when the
//! matrix is unimodular and `phi(x_i x_j) = phi(x_i) phi(x_j)` for all
//! basis pairs; every column is then an idempotent, so the bounded search
//! draws columns from the box idempotents only.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::coeffs::{cadd, cmul, csub};
use crate::error::{Error, Result};
use crate::idempotents::box_vectors;
use crate::quandle::{quandle_automorphisms, FiniteQuandle};
use crate::ring::dense;

pub const DEFAULT_GROUP_CAP: usize = 1000;

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i128>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(cols: &[Vec<i128>]) -> Result<Self> {
        let n = cols.len();
        if let Some(bad) = cols.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let mut data = vec![0; n * n];
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                data[i * n + j] = v;
            }
        }
        Ok(IntMatrix { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    /// The matrix sending basis element `j` to basis element `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut data = vec![0; n * n];
        for (j, &i) in perm.iter().enumerate() {
            data[i * n + j] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i128>> {
        self.data
            .chunks(self.n.max(1))
            .map(|r| r.to_vec())
            .take(self.n)
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn max_abs_entry(&self) -> u128 {
        self.data.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] = cadd(data[i * n + j], cmul(a, other.get(k, j)));
                }
            }
        }
        Ok(IntMatrix { n, data })
    }

    pub fn apply(&self, v: &[i128]) -> Vec<i128> {
        (0..self.n)
            .map(|i| (0..self.n).fold(0, |acc, k| cadd(acc, cmul(self.get(i, k), v[k]))))
            .collect()
    }

    /// Fraction-free elimination.
    pub fn det(&self) -> i128 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut m = self.rows();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&r| m[r][k] != 0) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = csub(cmul(m[i][j], m[k][k]), cmul(m[i][k], m[k][j]));
                    m[i][j] = num / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    /// The integer inverse of a unimodular matrix.
    pub fn inverse(&self) -> Option<IntMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        let n = self.n;
        let mut m: Vec<Vec<Ratio<i128>>> = (0..n)
            .map(|i| {
                let mut r: Vec<Ratio<i128>> = (0..n).map(|j| Ratio::from(self.get(i, j))).collect();
                r.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
                r
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !m[r][c].is_zero())?;
            m.swap(c, p);
            let piv = m[c][c];
            m[c].iter_mut().for_each(|x| *x /= piv);
            let pivot_row = m[c].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != c && !row[c].is_zero() {
                    let f = row[c];
                    row.iter_mut().zip(&pivot_row).for_each(|(x, &y)| *x -= f * y);
                }
            }
        }
        let rows = m
            .into_iter()
            .map(|r| r[n..].iter().map(|x| x.to_integer()).collect())
            .collect();
        IntMatrix::new(rows).ok()
    }

    /// `[[a,b],[c,d]]`.
    pub fn to_compact(&self) -> String {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for (k, r) in self.rows().iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(|v| format!("{v:>w$}")).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Basis pairs `(i, j)` with `phi(x_i x_j) != phi(x_i) phi(x_j)`.
pub fn multiplicativity_failures(q: &FiniteQuandle, m: &IntMatrix) -> Vec<(usize, usize)> {
    let n = q.order();
    let cols: Vec<Vec<i128>> = (0..n).map(|j| m.column(j)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if dense::mul(q, &cols[i], &cols[j]) != cols[q.mul(i, j)] {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn is_ring_automorphism(q: &FiniteQuandle, m: &IntMatrix) -> bool {
    m.order() == q.order() && m.is_unimodular() && multiplicativity_failures(q, m).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismSearch {
    pub bound: i128,
    /// Sorted; complete among matrices with entries in `[-bound, bound]`.
    pub matrices: Vec<IntMatrix>,
    pub candidate_columns: usize,
    /// Indices of matrices whose inverse has an entry beyond the bound.
    pub truncated_inverses: Vec<usize>,
    /// Every inverse within the bound is in the list.
    pub inverse_closed: bool,
}

impl AutomorphismSearch {
    pub fn summary(&self) -> String {
        format!(
            "{} automorphisms, complete within entry bound {}",
            self.matrices.len(),
            self.bound
        )
    }
}

struct ColumnSearch<'a> {
    q: &'a FiniteQuandle,
    cands: &'a [Vec<i128>],
    nodes: &'a AtomicU64,
    budget: u64,
}

impl ColumnSearch<'_> {
    fn grow(&self, chosen: &mut Vec<usize>, out: &mut Vec<IntMatrix>) -> Result<()> {
        let visited = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if visited > self.budget {
            return Err(Error::BoundExceeded {
                what: "automorphism search nodes",
                value: visited as u128,
                limit: self.budget as u128,
            });
        }
        let n = self.q.order();
        let k = chosen.len();
        if k == n {
            let cols: Vec<Vec<i128>> = chosen.iter().map(|&c| self.cands[c].clone()).collect();
            let m = IntMatrix::from_columns(&cols)?;
            if m.is_unimodular() {
                out.push(m);
            }
            return Ok(());
        }
        for c in 0..self.cands.len() {
            if chosen.contains(&c) || !self.independent(chosen, c) {
                continue;
            }
            chosen.push(c);
            if self.consistent(chosen) {
                self.grow(chosen, out)?;
            }
            chosen.pop();
        }
        Ok(())
    }

    fn independent(&self, chosen: &[usize], c: usize) -> bool {
        let mut span = crate::lattice::IntLatticeBasis::new(self.q.order());
        for &i in chosen.iter().chain(std::iter::once(&c)) {
            let before = span.rank();
            if span.insert_mut(&self.cands[i]).is_err() || span.rank() == before {
                return false;
            }
        }
        true
    }

    /// Multiplicativity on every basis pair whose product is also placed.
    fn consistent(&self, chosen: &[usize]) -> bool {
        let k = chosen.len();
        let last = k - 1;
        (0..k).all(|i| {
            [(i, last), (last, i)].into_iter().all(|(a, b)| {
                let t = self.q.mul(a, b);
                t >= k || dense::mul(self.q, &self.cands[chosen[a]], &self.cands[chosen[b]]) == self.cands[chosen[t]]
            })
        }) && (0..last).all(|a| {
            (0..last).all(|b| {
                let t = self.q.mul(a, b);
                t != last || dense::mul(self.q, &self.cands[chosen[a]], &self.cands[chosen[b]]) == self.cands[chosen[t]]
            })
        })
    }
}

/// All ring automorphisms of `Z[Q]` whose entries lie in `[-bound, bound]`.
/// The first column is split across threads.
pub fn automorphisms_bounded(q: &FiniteQuandle, bound: i128, budget: u128) -> Result<AutomorphismSearch> {
    let cands: Vec<Vec<i128>> = box_vectors(q, bound, budget)?
        .into_iter()
        .filter(|v| v.iter().any(|&c| c != 0))
        .collect();
    let nodes = AtomicU64::new(0);
    let search = ColumnSearch {
        q,
        cands: &cands,
        nodes: &nodes,
        budget: budget.min(u64::MAX as u128) as u64,
    };
    let threads = std::thread::available_parallelism()
        .map_or(1, |t| t.get())
        .min(cands.len().max(1));
    let mut matrices = Vec::new();
    if q.order() > 0 {
        let results: Vec<Result<Vec<IntMatrix>>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let search = &search;
                    let cands = &cands;
                    s.spawn(move || {
                        let mut out = Vec::new();
                        for first in (t..cands.len()).step_by(threads) {
                            let mut chosen = vec![first];
                            if search.consistent(&chosen) {
                                search.grow(&mut chosen, &mut out)?;
                            }
                        }
                        Ok(out)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("search thread")).collect()
        });
        for r in results {
            matrices.extend(r?);
        }
    }
    matrices.sort();
    let index: HashMap<&IntMatrix, usize> = matrices.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut truncated = Vec::new();
    let mut closed = true;
    for (k, m) in matrices.iter().enumerate() {
        let inv = m.inverse().expect("unimodular");
        if inv.max_abs_entry() > bound.unsigned_abs() {
            truncated.push(k);
        } else if !index.contains_key(&inv) {
            closed = false;
        }
    }
    Ok(AutomorphismSearch {
        bound,
        candidate_columns: cands.len(),
        matrices,
        truncated_inverses: truncated,
        inverse_closed: closed,
    })
}

/// Quandle automorphisms of `q` as permutation matrices.
pub fn induced_permutation_matrices(q: &FiniteQuandle) -> Result<Vec<IntMatrix>> {
    let mut v: Vec<IntMatrix> = quandle_automorphisms(q)?
        .iter()
        .map(|p| IntMatrix::permutation(p.as_slice()))
        .collect();
    v.sort();
    Ok(v)
}

type Indexed = Arc<dyn Fn(i128) -> IntMatrix + Send + Sync>;

/// Named matrices for relation words: fixed ones like `T` and indexed
/// families like `A(2)`.
#[derive(Clone, Default)]
pub struct Generators {
    fixed: BTreeMap<String, IntMatrix>,
    indexed: BTreeMap<String, Indexed>,
}

impl fmt::Debug for Generators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Generators")
            .field("fixed", &self.fixed)
            .field("indexed", &self.indexed.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl Generators {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fixed(mut self, name: &str, m: IntMatrix) -> Self {
        self.fixed.insert(name.into(), m);
        self
    }

    pub fn with_indexed(mut self, name: &str, f: impl Fn(i128) -> IntMatrix + Send + Sync + 'static) -> Self {
        self.indexed.insert(name.into(), Arc::new(f));
        self
    }

    pub fn fixed(&self, name: &str) -> Option<&IntMatrix> {
        self.fixed.get(name)
    }

    pub fn indexed(&self, name: &str, k: i128) -> Option<IntMatrix> {
        self.indexed.get(name).map(|f| f(k))
    }

    fn order(&self) -> Option<usize> {
        self.fixed
            .values()
            .next()
            .map(|m| m.order())
            .or_else(|| self.indexed.values().next().map(|f| f(0).order()))
    }

    /// Evaluates a product word such as `B(1)*A(2)*B(1)` or `I`.
    pub fn eval_word(&self, word: &str) -> Result<IntMatrix> {
        let n = self.order().ok_or_else(|| Error::Parse("no generators".into()))?;
        let mut acc = IntMatrix::identity(n);
        for factor in word.split('*').map(str::trim) {
            let m = if factor == "I" {
                IntMatrix::identity(n)
            } else if let Some((name, rest)) = factor.split_once('(') {
                let arg = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed index in {factor:?}")))?;
                let k: i128 = arg
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad index in {factor:?}")))?;
                self.indexed(name.trim(), k)
                    .ok_or_else(|| Error::UnknownName(name.trim().into()))?
            } else if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in {word:?}")));
            } else {
                self.fixed(factor)
                    .cloned()
                    .ok_or_else(|| Error::UnknownName(factor.into()))?
            };
            acc = acc.mul(&m)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCertificate {
    pub checked: Vec<String>,
}

/// Checks each `lhs=rhs` instance by matrix multiplication.
pub fn verify_relations(gens: &Generators, relations: &[String]) -> Result<RelationCertificate> {
    let mut checked = Vec::new();
    for rel in relations {
        let (l, r) = rel
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("relation without '=': {rel:?}")))?;
        let (a, b) = (gens.eval_word(l)?, gens.eval_word(r)?);
        if a != b {
            return Err(Error::VerificationFailed(format!(
                "{rel}: left side {} but right side {}",
                a.to_compact(),
                b.to_compact()
            )));
        }
        checked.push(rel.trim().replace(' ', ""));
    }
    Ok(RelationCertificate { checked })
}

/// `A(a) = [[1-a, -a], [a, 1+a]]`, unimodular with determinant 1.
pub fn t2_a(a: i128) -> IntMatrix {
    IntMatrix::new(vec![vec![1 - a, -a], vec![a, 1 + a]]).expect("2x2")
}

/// `B(a) = [[1-a, 2-a], [a, a-1]]`, determinant -1.
pub fn t2_b(a: i128) -> IntMatrix {
    IntMatrix::new(vec![vec![1 - a, 2 - a], vec![a, a - 1]]).expect("2x2")
}

pub fn t2_generators() -> Generators {
    Generators::new().with_indexed("A", t2_a).with_indexed("B", t2_b)
}

/// Instances of `A(a)A(b) = A(a+b)`, `B(a)B(b) = A(a-b)` and
/// `B(1)A(a)B(1) = A(-a)` for `a, b` in `[-radius, radius]`.
pub fn t2_relation_instances(radius: i128) -> Vec<String> {
    let mut out = vec!["B(1)*B(1)=I".to_string(), "A(0)=I".to_string()];
    for a in -radius..=radius {
        for b in -radius..=radius {
            out.push(format!("A({a})*A({b})=A({})", a + b));
            out.push(format!("B({a})*B({b})=A({})", a - b));
        }
        out.push(format!("B(1)*A({a})*B(1)=A({})", -a));
    }
    out
}

/// `A` swaps `a1, a3`, `B` swaps `a0, a2`, `T` is induced by
/// `a0 <-> a1, a2 <-> a3`.
pub fn r4_generators() -> Generators {
    Generators::new()
        .with_fixed("A", IntMatrix::permutation(&[0, 3, 2, 1]))
        .with_fixed("B", IntMatrix::permutation(&[2, 1, 0, 3]))
        .with_fixed("T", IntMatrix::permutation(&[1, 0, 3, 2]))
}

pub fn r4_relations() -> Vec<String> {
    ["A*A=I", "B*B=I", "A*B=B*A", "T*A*T=B"].map(String::from).to_vec()
}

/// The two candidate shapes for `Z[Cs4]` with `z` sent to `x + y - z`.
pub fn cs4_rejected_shapes() -> [IntMatrix; 2] {
    [
        IntMatrix::new(vec![vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, -1]]).expect("3x3"),
        IntMatrix::new(vec![vec![0, 1, 1], vec![1, 0, 1], vec![0, 0, -1]]).expect("3x3"),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupClosure {
    Finite {
        elements: Vec<IntMatrix>,
        /// `table[i][j]` is the index of `elements[i] * elements[j]`.
        table: Vec<Vec<usize>>,
    },
    ExceedsCap {
        cap: usize,
    },
}

impl GroupClosure {
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupClosure::Finite { elements, .. } => Some(elements.len()),
            GroupClosure::ExceedsCap { .. } => None,
        }
    }
}

/// Closes invertible matrices under multiplication, identity first.
pub fn group_order_small(gens: &[IntMatrix], cap: usize) -> Result<GroupClosure> {
    let Some(n) = gens.first().map(|g| g.order()) else {
        return Ok(GroupClosure::Finite {
            elements: Vec::new(),
            table: Vec::new(),
        });
    };
    let mut elements = vec![IntMatrix::identity(n)];
    let mut index: HashMap<IntMatrix, usize> = HashMap::from([(elements[0].clone(), 0)]);
    let mut next = 0;
    while next < elements.len() {
        for g in gens {
            let p = elements[next].mul(g)?;
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Ok(GroupClosure::ExceedsCap { cap });
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        next += 1;
    }
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| Ok(index[&a.mul(b)?]))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    Ok(GroupClosure::Finite { elements, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: u128 = 10_000_000;

    #[test]
    fn det_and_inverse() {
        let m = IntMatrix::new(vec![vec![2, 1, 0], vec![1, 1, 0], vec![0, 3, -1]]).unwrap();
        assert_eq!(m.det(), -1);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(3));
        assert_eq!(IntMatrix::new(vec![vec![2, 0], vec![0, 1]]).unwrap().inverse(), None);
        assert_eq!(
            IntMatrix::new(vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]])
                .unwrap()
                .det(),
            -3
        );
        assert_eq!(t2_a(3).det(), 1);
        assert_eq!(t2_b(3).det(), -1);
    }

    #[test]
    fn display_is_row_major() {
        let m = IntMatrix::new(vec![vec![1, -10], vec![0, 2]]).unwrap();
        assert_eq!(m.to_string(), "[  1 -10]\n[  0   2]");
        assert_eq!(m.to_compact(), "[[1,-10],[0,2]]");
        assert_eq!(IntMatrix::permutation(&[1, 0]).column(0), vec![0, 1]);
    }

    #[test]
    fn r3_has_only_permutations() {
        let q = FiniteQuandle::dihedral(3).unwrap();
        for b in 1..=2 {
            let s = automorphisms_bounded(&q, b, BUDGET).unwrap();
            assert_eq!(s.matrices.len(), 6);
            assert_eq!(s.matrices, induced_permutation_matrices(&q).unwrap());
            assert!(s.inverse_closed);
        }
    }

    #[test]
    fn cs4_has_two() {
        let q = FiniteQuandle::cs4();
        let s = automorphisms_bounded(&q, 2, BUDGET).unwrap();
        assert_eq!(
            s.matrices,
            vec![IntMatrix::permutation(&[1, 0, 2]), IntMatrix::identity(3)]
        );
        for b in cs4_rejected_shapes() {
            assert!(b.is_unimodular());
            // x * z = y is the first relation to break
            assert!(multiplicativity_failures(&q, &b).contains(&(0, 2)));
        }
    }

    #[test]
    fn t2_box_matches_formulas() {
        let q = FiniteQuandle::trivial(2).unwrap();
        let s = automorphisms_bounded(&q, 2, BUDGET).unwrap();
        // brute force every 2x2 matrix with entries in [-2, 2]
        let mut oracle = Vec::new();
        for e in 0..5i128.pow(4) {
            let d: Vec<i128> = (0..4).map(|k| (e / 5i128.pow(k)) % 5 - 2).collect();
            let m = IntMatrix::new(vec![vec![d[0], d[1]], vec![d[2], d[3]]]).unwrap();
            if is_ring_automorphism(&q, &m) {
                oracle.push(m);
            }
        }
        oracle.sort();
        assert_eq!(s.matrices, oracle);
        let mut formulas: Vec<IntMatrix> = [-1, 0, 1].map(t2_a).into_iter().chain([0, 1, 2].map(t2_b)).collect();
        formulas.sort();
        assert_eq!(s.matrices, formulas);
        // A(-1) and A(1) are mutually inverse, each B(a) is an involution
        assert!(s.truncated_inverses.is_empty());
        assert!(s.inverse_closed);
    }

    #[test]
    fn r4_group() {
        let q = FiniteQuandle::dihedral(4).unwrap();
        let s = automorphisms_bounded(&q, 2, BUDGET).unwrap();
        assert_eq!(s.matrices.len(), 8);
        let g = r4_generators();
        for name in ["A", "B", "T"] {
            assert!(s.matrices.contains(g.fixed(name).unwrap()));
        }
        verify_relations(&g, &r4_relations()).unwrap();
        let gens: Vec<IntMatrix> = ["A", "B", "T"].iter().map(|n| g.fixed(n).unwrap().clone()).collect();
        assert_eq!(group_order_small(&gens, DEFAULT_GROUP_CAP).unwrap().order(), Some(8));
    }

    #[test]
    fn t2_relations_and_closure() {
        let g = t2_generators();
        let c = verify_relations(&g, &t2_relation_instances(3)).unwrap();
        assert!(c.checked.contains(&"A(2)*A(3)=A(5)".to_string()));
        let err = verify_relations(&g, &["A(1)*A(1)=A(3)".into()]).unwrap_err();
        assert!(matches!(err, Error::VerificationFailed(_)));
        assert!(matches!(g.eval_word("C"), Err(Error::UnknownName(_))));
        assert!(matches!(g.eval_word("A(x)"), Err(Error::Parse(_))));
        let closure = group_order_small(&[t2_a(1), t2_b(1)], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(closure, GroupClosure::ExceedsCap { cap: DEFAULT_GROUP_CAP });
    }

    #[test]
    fn r3_closure_table() {
        let q = FiniteQuandle::dihedral(3).unwrap();
        let perms = induced_permutation_matrices(&q).unwrap();
        match group_order_small(&perms, DEFAULT_GROUP_CAP).unwrap() {
            GroupClosure::Finite { elements, table } => {
                assert_eq!(elements.len(), 6);
                assert!(table.iter().all(|row| row.contains(&0)));
            }
            other => panic!("{other:?}"),
        }
    }
}
