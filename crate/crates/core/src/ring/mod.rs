//! Arithmetic in quandle rings `R[Q]` and extended rings `R[Q] + Re`.

mod element;
mod ext;
mod parse;

pub use element::{aug_ideal_basis, delta_square_is_zero, AugIdealBasis, RingElement};
pub use ext::ExtRingElement;
pub use parse::parse_element;

/// Joins `(negative, magnitude, label)` terms as `2*a0 - a1 + 3*a2`,
/// dropping unit magnitudes; the empty sum prints as `0`.
pub(crate) fn format_terms<I>(terms: I) -> String
where
    I: IntoIterator<Item = (bool, String, String)>,
{
    let mut out = String::new();
    for (neg, mag, label) in terms {
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Dense integer arithmetic in `Z[Q]`, used by the bounded searches.
pub(crate) mod dense {
    use crate::coeffs::{cadd, cmul};
    use crate::quandle::FiniteQuandle;

    pub fn mul(q: &FiniteQuandle, u: &[i128], v: &[i128]) -> Vec<i128> {
        let n = q.order();
        let mut out = vec![0i128; n];
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b != 0 {
                    let k = q.mul(i, j);
                    out[k] = cadd(out[k], cmul(a, b));
                }
            }
        }
        out
    }

    pub fn is_idempotent(q: &FiniteQuandle, z: &[i128]) -> bool {
        mul(q, z, z) == z
    }

    /// Arithmetic modulo `m` on canonical representatives.
    pub fn mul_mod(q: &FiniteQuandle, u: &[u64], v: &[u64], m: u64) -> Vec<u64> {
        let n = q.order();
        let mut out = vec![0u128; n];
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b != 0 {
                    let k = q.mul(i, j);
                    out[k] = (out[k] + a as u128 * b as u128) % m as u128;
                }
            }
        }
        out.into_iter().map(|x| x as u64).collect()
    }
}
