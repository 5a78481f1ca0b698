//! Finite quandles given by multiplication tables.

mod automorphisms;
mod group;
mod io;
mod predicates;

use std::fmt;

pub use automorphisms::{
    are_isomorphic, find_isomorphisms, is_2transitive, is_2transitive_with_bound, quandle_automorphisms,
    quandle_automorphisms_with_bound, QuandlePermutation, DEFAULT_AUTOMORPHISM_BOUND,
};
pub(crate) use group::permutations;
pub use group::FiniteGroup;
pub use io::{parse_table_file, write_table_file};
pub use predicates::{inner_orbits, predicates, Predicates};

use crate::error::{Error, Result};

/// A finite quandle on `{0, .., n-1}`; `mul(i, j)` is the index of `x_i * x_j`.
///
/// Values are only built through [`verify_quandle`] or the constructors, so
/// the three quandle axioms always hold.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    n: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// Validates a table and returns the quandle, or the first violated axiom.
///
/// Shape problems are reported first, then idempotence, then bijectivity of
/// right translations, then right distributivity, each with a witness.
pub fn verify_quandle(table: &[Vec<usize>]) -> Result<FiniteQuandle> {
    let n = table.len();
    if n == 0 {
        return Err(Error::MalformedTable("empty table".into()));
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::MalformedTable(format!("entry ({i}, {j}) = {v} is out of range")));
            }
            flat.push(v);
        }
    }
    let at = |i: usize, j: usize| flat[i * n + j];
    for i in 0..n {
        if at(i, i) != i {
            return Err(Error::IdempotenceViolation { i, product: at(i, i) });
        }
    }
    for j in 0..n {
        let mut seen = vec![usize::MAX; n];
        for i in 0..n {
            let p = at(i, j);
            if seen[p] != usize::MAX {
                return Err(Error::RightTranslationViolation {
                    j,
                    i1: seen[p],
                    i2: i,
                    product: p,
                });
            }
            seen[p] = i;
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = at(at(i, j), k);
                let rhs = at(at(i, k), at(j, k));
                if lhs != rhs {
                    return Err(Error::DistributivityViolation { i, j, k, lhs, rhs });
                }
            }
        }
    }
    Ok(FiniteQuandle {
        n,
        table: flat,
        labels: None,
    })
}

fn valid_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "mod"
}

impl FiniteQuandle {
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        verify_quandle(table)
    }

    pub(crate) fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        verify_quandle(&table)
    }

    /// Attaches display labels. Labels must be distinct identifiers.
    pub fn with_labels<S: AsRef<str>>(mut self, labels: &[S]) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: labels.len(),
            });
        }
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, l) in labels.iter().enumerate() {
            if !valid_label(l) {
                return Err(Error::Parse(format!("invalid label `{l}`")));
            }
            if labels[..i].contains(l) {
                return Err(Error::Parse(format!("duplicate label `{l}`")));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The trivial quandle `T_n`: `x_i * x_j = x_i`, labelled `x0, x1, ..`.
    pub fn trivial(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable("a quandle needs at least one element".into()));
        }
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        Self::from_fn(n, |i, _| i)?.with_labels(&labels)
    }

    /// The dihedral quandle `R_n`: `a_i * a_j = a_{2j - i mod n}`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable("a quandle needs at least one element".into()));
        }
        Self::from_fn(n, |i, j| (2 * j + n - i % n) % n)
    }

    /// The three-element quandle with rows `x: (x, x, y)`, `y: (y, y, x)`,
    /// `z: (z, z, z)`.
    pub fn cs4() -> Self {
        Self::from_table(&[vec![0, 0, 1], vec![1, 1, 0], vec![2, 2, 2]])
            .and_then(|q| q.with_labels(&["x", "y", "z"]))
            .expect("fixed table")
    }

    /// `a * b = b^{-1} a b`.
    pub fn conj(g: &FiniteGroup) -> Result<Self> {
        Self::from_fn(g.order(), |a, b| g.mul(g.mul(g.inverse(b), a), b))
    }

    /// `a * b = b a^{-1} b`.
    pub fn core(g: &FiniteGroup) -> Result<Self> {
        Self::from_fn(g.order(), |a, b| g.mul(g.mul(b, g.inverse(a)), b))
    }

    /// `a * b = phi(a b^{-1}) b` for a group automorphism `phi`.
    pub fn alex(g: &FiniteGroup, phi: &[usize]) -> Result<Self> {
        g.check_automorphism(phi)?;
        Self::from_fn(g.order(), |a, b| g.mul(phi[g.mul(a, g.inverse(b))], b))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.table[i * self.n..(i + 1) * self.n]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn has_custom_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("a{i}"),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.n).map(|i| self.label(i)).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        (0..self.n).find(|&i| self.label(i) == label)
    }

    /// Same element count and table; labels are ignored.
    pub fn same_structure(&self, other: &FiniteQuandle) -> bool {
        self.n == other.n && self.table == other.table
    }

    /// The right translation `S_j: i -> i * j`.
    pub fn right_translation(&self, j: usize) -> QuandlePermutation {
        QuandlePermutation::new_unchecked((0..self.n).map(|i| self.mul(i, j)).collect())
    }

    /// The unique `i` with `i * j = k`.
    pub fn right_divide(&self, k: usize, j: usize) -> usize {
        (0..self.n)
            .find(|&i| self.mul(i, j) == k)
            .expect("right translations are bijective")
    }

    /// Whether `set` is closed under the operation, hence a subquandle.
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        set.iter().for_each(|&i| member[i] = true);
        set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, b)]))
    }
}

impl fmt::Display for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.labels();
        let w = labels.iter().map(String::len).max().unwrap_or(1);
        write!(f, "{:w$} |", "*")?;
        for l in &labels {
            write!(f, " {l:>w$}")?;
        }
        writeln!(f)?;
        for i in 0..self.n {
            write!(f, "{:w$} |", labels[i])?;
            for j in 0..self.n {
                write!(f, " {:>w$}", labels[self.mul(i, j)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
