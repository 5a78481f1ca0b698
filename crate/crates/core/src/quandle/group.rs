use crate::error::{Error, Result};

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    cayley: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates associativity, the identity and inverses.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidGroup("ragged or out-of-range table".into()));
        }
        let m = |a: usize, b: usize| table[a][b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("{a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup {
            n,
            cayley: table.concat(),
            identity,
            inverse,
        })
    }

    /// `Z_n` under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        let t: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&t)
    }

    /// The symmetric group on `k` points. Elements are the permutations in
    /// lexicographic order, so index 0 is the identity; the product `s t`
    /// applies `t` first.
    pub fn symmetric(k: usize) -> Result<Self> {
        let perms = permutations(k);
        let index = |p: &Vec<usize>| perms.binary_search(p).unwrap();
        let t: Vec<Vec<usize>> = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&(0..k).map(|i| s[t[i]]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(&t)
    }

    /// The map `a -> k a` on `Z_n` as an index permutation (an automorphism
    /// exactly when `gcd(k, n) = 1`).
    pub fn cyclic_scaling(n: usize, k: i64) -> Result<Vec<usize>> {
        if n == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        let k = k.rem_euclid(n as i64) as usize;
        Ok((0..n).map(|a| (a * k) % n).collect())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.n + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_automorphism(&self, phi: &[usize]) -> bool {
        self.check_automorphism(phi).is_ok()
    }

    pub(crate) fn check_automorphism(&self, phi: &[usize]) -> Result<()> {
        if phi.len() != self.n {
            return Err(Error::NotAutomorphism(format!(
                "map has {} entries for a group of order {}",
                phi.len(),
                self.n
            )));
        }
        let mut hit = vec![false; self.n];
        for &v in phi {
            if v >= self.n || hit[v] {
                return Err(Error::NotAutomorphism("map is not a bijection".into()));
            }
            hit[v] = true;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if phi[self.mul(a, b)] != self.mul(phi[a], phi[b]) {
                    return Err(Error::NotAutomorphism(format!(
                        "phi({a}*{b}) differs from phi({a})*phi({b})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// All automorphisms of `Z_n`, as scalings by units, in increasing unit order.
    pub fn cyclic_automorphisms(n: usize) -> Vec<Vec<usize>> {
        (1..n.max(2))
            .filter(|&k| num_integer::gcd(k, n) == 1)
            .map(|k| (0..n).map(|a| (a * k) % n).collect())
            .collect()
    }
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

/// Advances to the next permutation in lexicographic order.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three_is_non_abelian() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn cyclic_units() {
        assert_eq!(FiniteGroup::cyclic_automorphisms(5).len(), 4);
        assert_eq!(FiniteGroup::cyclic_automorphisms(12).len(), 4);
        assert_eq!(FiniteGroup::cyclic_automorphisms(1), vec![vec![0]]);
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert!(!z6.is_automorphism(&FiniteGroup::cyclic_scaling(6, 2).unwrap()));
        assert!(z6.is_automorphism(&FiniteGroup::cyclic_scaling(6, 5).unwrap()));
    }

    #[test]
    fn non_group_rejected() {
        assert!(FiniteGroup::from_table(&[vec![0, 0], vec![0, 1]]).is_err());
    }
}
