use std::collections::BTreeMap;

use super::Magma;
use crate::coeffs::{cadd, cmul};

/// An integer linear combination of finitely many magma elements.
pub type SparseElement<E> = BTreeMap<E, i128>;

/// Bilinear product of two finitely supported combinations.
pub fn sparse_mul<M: Magma>(m: &M, u: &SparseElement<M::Elem>, v: &SparseElement<M::Elem>) -> SparseElement<M::Elem> {
    let mut out: SparseElement<M::Elem> = BTreeMap::new();
    for (a, &ca) in u {
        for (b, &cb) in v {
            let e = out.entry(m.op(a, b)).or_insert(0);
            *e = cadd(*e, cmul(ca, cb));
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn sparse_is_zero<E>(u: &SparseElement<E>) -> bool {
    u.values().all(|&c| c == 0)
}

/// Renders in increasing element order, e.g. `x(-1) + x9 - x11`.
pub fn sparse_to_string<M: Magma>(m: &M, u: &SparseElement<M::Elem>) -> String {
    let terms = u.iter().filter(|(_, &c)| c != 0).map(|(e, &c)| (c, m.label(e)));
    crate::ring::format_terms(terms.map(|(c, l)| (c < 0, c.unsigned_abs().to_string(), l)))
}
