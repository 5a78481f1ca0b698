//! Idempotents `z^2 = z` of quandle rings.
//!
//! Over an integral domain the augmentation of an idempotent is 0 or 1,
//! since it is itself an idempotent of the coefficient ring. The searches
//! use this to fix the last coordinate from the others.

mod family;

use std::sync::Arc;

pub use family::{
    family_covers_box, registry, verify_family, AffineBranch, Coverage, FamilyCertificate, FamilyPoint,
    IdempotentFamily, DEFAULT_GRID_RADIUS,
};

use crate::coeffs::{csub, CoefficientRing};
use crate::error::{check_bound, Error, Result};
use crate::quandle::FiniteQuandle;
use crate::ring::{dense, RingElement};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

fn pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// Steps `v` through `[lo, hi]^len` in odometer order; false once it wraps.
pub(crate) fn odometer(v: &mut [i128], lo: i128, hi: i128) -> bool {
    for x in v.iter_mut().rev() {
        if *x < hi {
            *x += 1;
            return true;
        }
        *x = lo;
    }
    false
}

/// All integer idempotents with every coefficient in `[-bound, bound]`,
/// zero included, in lexicographic coefficient order.
pub fn idempotents_box(q: &Arc<FiniteQuandle>, bound: i128, budget: u128) -> Result<Vec<RingElement>> {
    if bound < 0 {
        return Err(Error::Unsupported("negative bound".into()));
    }
    Ok(box_vectors(q, bound, budget)?
        .into_iter()
        .map(|v| RingElement::from_ints(q, CoefficientRing::Integers, &v).expect("dimension n"))
        .collect())
}

/// The dense vectors behind [`idempotents_box`].
pub(crate) fn box_vectors(q: &FiniteQuandle, bound: i128, budget: u128) -> Result<Vec<Vec<i128>>> {
    let n = q.order();
    check_bound("box size", pow(2 * bound as u128 + 1, n), budget)?;
    let mut out = Vec::new();
    let mut head = vec![-bound; n - 1];
    loop {
        let s: i128 = head.iter().sum();
        for eps in [0, 1] {
            let last = csub(eps, s);
            if last.abs() <= bound {
                let mut z = head.clone();
                z.push(last);
                if dense::is_idempotent(q, &z) {
                    out.push(z);
                }
            }
        }
        if !odometer(&mut head, -bound, bound) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// All idempotents over `Z_m`, zero included, in lexicographic order of
/// representatives. The augmentation shortcut is used only for prime `m`.
pub fn idempotents_modular(q: &Arc<FiniteQuandle>, m: u64, budget: u128) -> Result<Vec<RingElement>> {
    let ring = CoefficientRing::integers_mod(m)?;
    let n = q.order();
    check_bound("search size", pow(m as u128, n), budget)?;
    let prime = ring.is_integral_domain();
    let free = if prime { n - 1 } else { n };
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut head = vec![0i128; free];
    let hi = m as i128 - 1;
    loop {
        let base: Vec<u64> = head.iter().map(|&x| x as u64).collect();
        let candidates: Vec<Vec<u64>> = if prime {
            let s = base.iter().fold(0u64, |a, &x| (a + x) % m);
            [0u64, 1]
                .iter()
                .map(|&eps| {
                    let mut z = base.clone();
                    z.push((eps + m - s) % m);
                    z
                })
                .collect()
        } else {
            vec![base]
        };
        for z in candidates {
            if dense::mul_mod(q, &z, &z, m) == z {
                out.push(z);
            }
        }
        if !odometer(&mut head, 0, hi) {
            break;
        }
    }
    out.sort();
    out.dedup();
    Ok(out
        .into_iter()
        .map(|v| {
            let ints: Vec<i128> = v.into_iter().map(i128::from).collect();
            RingElement::from_ints(q, ring, &ints).expect("dimension n")
        })
        .collect())
}
