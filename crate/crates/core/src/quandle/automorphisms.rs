use super::FiniteQuandle;
use crate::error::{check_bound, Error, Result};

pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 8;

/// A permutation of quandle indices.
///
/// Values from [`QuandlePermutation::new`] and the automorphism search obey
/// `perm(i * j) = perm(i) * perm(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandlePermutation {
    perm: Vec<usize>,
}

impl QuandlePermutation {
    /// Checks that `perm` is a bijection respecting the operation of `q`.
    pub fn new(q: &FiniteQuandle, perm: Vec<usize>) -> Result<Self> {
        let n = q.order();
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        let mut hit = vec![false; n];
        for &v in &perm {
            if v >= n || std::mem::replace(&mut hit[v], true) {
                return Err(Error::NotAutomorphism("not a permutation".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if perm[q.mul(i, j)] != q.mul(perm[i], perm[j]) {
                    return Err(Error::NotAutomorphism(format!("the law fails on ({i}, {j})")));
                }
            }
        }
        Ok(QuandlePermutation { perm })
    }

    pub(crate) fn new_unchecked(perm: Vec<usize>) -> Self {
        QuandlePermutation { perm }
    }

    pub fn identity(n: usize) -> Self {
        QuandlePermutation { perm: (0..n).collect() }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &QuandlePermutation) -> QuandlePermutation {
        QuandlePermutation {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> QuandlePermutation {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        QuandlePermutation { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}

/// Counts used to discard impossible images early: fixed points of the right
/// translation, fixed points of the left translation, and the size of the
/// image of the left translation.
fn signature(q: &FiniteQuandle, a: usize) -> (usize, usize, usize) {
    let n = q.order();
    let right_fixed = (0..n).filter(|&x| q.mul(x, a) == x).count();
    let left_fixed = (0..n).filter(|&x| q.mul(a, x) == x).count();
    let mut image = q.row(a).to_vec();
    image.sort_unstable();
    image.dedup();
    (right_fixed, left_fixed, image.len())
}

struct Search<'a> {
    src: &'a FiniteQuandle,
    dst: &'a FiniteQuandle,
    candidates: Vec<Vec<usize>>,
    limit: usize,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Extends the partial map through products until it is closed.
    fn propagate(&self, map: &mut [usize], used: &mut [bool]) -> bool {
        let n = self.src.order();
        loop {
            let mut changed = false;
            for x in 0..n {
                if map[x] == usize::MAX {
                    continue;
                }
                for y in 0..n {
                    if map[y] == usize::MAX {
                        continue;
                    }
                    let z = self.src.mul(x, y);
                    let fz = self.dst.mul(map[x], map[y]);
                    if map[z] == usize::MAX {
                        if used[fz] || !self.candidates[z].contains(&fz) {
                            return false;
                        }
                        map[z] = fz;
                        used[fz] = true;
                        changed = true;
                    } else if map[z] != fz {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, map: Vec<usize>, used: Vec<bool>) {
        if self.found.len() >= self.limit {
            return;
        }
        let n = self.src.order();
        let next = (0..n)
            .filter(|&x| map[x] == usize::MAX)
            .min_by_key(|&x| self.candidates[x].iter().filter(|&&c| !used[c]).count());
        let Some(x) = next else {
            self.found.push(map);
            return;
        };
        for c in self.candidates[x].clone() {
            if used[c] {
                continue;
            }
            let mut m = map.clone();
            let mut u = used.clone();
            m[x] = c;
            u[c] = true;
            if self.propagate(&mut m, &mut u) {
                self.run(m, u);
            }
        }
    }
}

/// Isomorphisms `src -> dst` as index maps, at most `limit` of them, in
/// lexicographic order when the search is not cut short.
pub fn find_isomorphisms(src: &FiniteQuandle, dst: &FiniteQuandle, limit: usize) -> Vec<Vec<usize>> {
    let n = src.order();
    if n != dst.order() || limit == 0 {
        return Vec::new();
    }
    let dst_sig: Vec<_> = (0..n).map(|b| signature(dst, b)).collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let s = signature(src, a);
            (0..n).filter(|&b| dst_sig[b] == s).collect()
        })
        .collect();
    let mut search = Search {
        src,
        dst,
        candidates,
        limit,
        found: Vec::new(),
    };
    search.run(vec![usize::MAX; n], vec![false; n]);
    let mut found = search.found;
    found.sort();
    found
}

pub fn are_isomorphic(a: &FiniteQuandle, b: &FiniteQuandle) -> bool {
    !find_isomorphisms(a, b, 1).is_empty()
}

/// The automorphism group of `q` in lexicographic order, for `n <= 8`.
pub fn quandle_automorphisms(q: &FiniteQuandle) -> Result<Vec<QuandlePermutation>> {
    quandle_automorphisms_with_bound(q, DEFAULT_AUTOMORPHISM_BOUND)
}

pub fn quandle_automorphisms_with_bound(q: &FiniteQuandle, bound: usize) -> Result<Vec<QuandlePermutation>> {
    check_bound("quandle order", q.order() as u128, bound as u128)?;
    Ok(find_isomorphisms(q, q, usize::MAX)
        .into_iter()
        .map(QuandlePermutation::new_unchecked)
        .collect())
}

/// Whether automorphisms act transitively on ordered pairs of distinct elements.
pub fn is_2transitive(q: &FiniteQuandle) -> Result<bool> {
    is_2transitive_with_bound(q, DEFAULT_AUTOMORPHISM_BOUND)
}

pub fn is_2transitive_with_bound(q: &FiniteQuandle, bound: usize) -> Result<bool> {
    let n = q.order();
    if n < 2 {
        return Err(Error::Unsupported("2-transitivity needs at least two elements".into()));
    }
    let auts = quandle_automorphisms_with_bound(q, bound)?;
    let mut pairs: Vec<(usize, usize)> = auts.iter().map(|s| (s.apply(0), s.apply(1))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    Ok(pairs.len() == n * (n - 1))
}
