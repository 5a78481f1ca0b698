use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Magma;
use crate::coeffs::{cadd, cmul, csub};
use crate::error::{Error, Result};

/// A quandle structure on the integers given by a closed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntQuandle {
    /// `a * b = 2b - a`.
    CoreZ,
    /// `a * b = c a + (1 - c) b`.
    AlexZ(i128),
}

impl IntQuandle {
    /// Right translations are bijective only when multiplication by `c` is
    /// an automorphism of `Z`, so `c` must be `1` or `-1`.
    pub fn alex_z(c: i128) -> Result<Self> {
        if c != 1 && c != -1 {
            return Err(Error::NotAutomorphism(format!(
                "multiplication by {c} is not an automorphism of Z"
            )));
        }
        Ok(IntQuandle::AlexZ(c))
    }

    pub fn mul(&self, a: i128, b: i128) -> i128 {
        match *self {
            IntQuandle::CoreZ => csub(cmul(2, b), a),
            IntQuandle::AlexZ(c) => cadd(cmul(c, a), cmul(csub(1, c), b)),
        }
    }

    /// The unique `z` with `z * b = a`.
    pub fn right_divide(&self, a: i128, b: i128) -> i128 {
        match *self {
            IntQuandle::CoreZ => csub(cmul(2, b), a),
            // c z = a - (1 - c) b with c = +-1
            IntQuandle::AlexZ(c) => cmul(c, csub(a, cmul(csub(1, c), b))),
        }
    }

    /// Checks idempotence, right division and distributivity on random
    /// triples from `[-window, window]`; returns the first failure.
    pub fn verify_sample(&self, triples: usize, window: i128, seed: u64) -> Option<(i128, i128, i128)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..triples).find_map(|_| {
            let [x, y, z] = [(); 3].map(|_| rng.gen_range(-window..=window));
            let ok = self.mul(x, x) == x
                && self.mul(self.right_divide(x, y), y) == x
                && self.mul(self.mul(x, y), z) == self.mul(self.mul(x, z), self.mul(y, z));
            (!ok).then_some((x, y, z))
        })
    }
}

impl fmt::Display for IntQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntQuandle::CoreZ => write!(f, "CoreZ"),
            IntQuandle::AlexZ(c) => write!(f, "AlexZ({c})"),
        }
    }
}

impl Magma for IntQuandle {
    type Elem = i128;
    fn op(&self, a: &i128, b: &i128) -> i128 {
        self.mul(*a, *b)
    }
    fn label(&self, a: &i128) -> String {
        if *a < 0 {
            format!("x({a})")
        } else {
            format!("x{a}")
        }
    }
}

/// Which side the fixed factor multiplies from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `x < y` implies `x z < y z`.
    Right,
    /// `x < y` implies `z x < z y`.
    Left,
}

impl Side {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(Side::Right),
            "left" => Ok(Side::Left),
            _ => Err(Error::Parse(format!("side must be left or right, got `{s}`"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub side: Side,
    pub trials: usize,
    pub violations: usize,
    /// `(x, y, z)` with `x < y` whose products are not in increasing order.
    pub witness: Option<(i128, i128, i128)>,
}

/// Whether the triple respects the order law for `side`.
pub fn respects_order(q: &IntQuandle, side: Side, x: i128, y: i128, z: i128) -> bool {
    debug_assert!(x < y);
    match side {
        Side::Right => q.mul(x, z) < q.mul(y, z),
        Side::Left => q.mul(z, x) < q.mul(z, y),
    }
}

/// Samples triples from `[-window, window]` under the natural order of `Z`.
pub fn order_monotonicity_sample(
    q: &IntQuandle,
    side: Side,
    trials: usize,
    window: i128,
    seed: u64,
) -> MonotonicityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MonotonicityReport {
        side,
        trials,
        violations: 0,
        witness: None,
    };
    for _ in 0..trials {
        let mut x = rng.gen_range(-window..=window);
        let mut y = rng.gen_range(-window..=window);
        let z = rng.gen_range(-window..=window);
        if x == y {
            y = x + 1;
        }
        if x > y {
            std::mem::swap(&mut x, &mut y);
        }
        if !respects_order(q, side, x, y, z) {
            report.violations += 1;
            report.witness.get_or_insert((x, y, z));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_products() {
        let q = IntQuandle::CoreZ;
        assert_eq!(q.mul(1, 2), 3);
        assert_eq!(q.mul(-7, -7), -7);
        assert_eq!(q.verify_sample(100, 1000, 1), None);
    }

    #[test]
    fn alexander_minus_one_is_core() {
        let a = IntQuandle::alex_z(-1).unwrap();
        for x in -5..5 {
            for y in -5..5 {
                assert_eq!(a.mul(x, y), IntQuandle::CoreZ.mul(x, y));
            }
        }
        assert_eq!(a.verify_sample(100, 1000, 2), None);
        assert_eq!(IntQuandle::alex_z(1).unwrap().verify_sample(100, 1000, 3), None);
        assert!(IntQuandle::alex_z(2).is_err());
        assert!(IntQuandle::alex_z(0).is_err());
    }

    #[test]
    fn core_is_left_but_not_right_monotone() {
        let q = IntQuandle::CoreZ;
        assert!(!respects_order(&q, Side::Right, 0, 1, 0));
        assert_eq!(q.mul(0, 0), 0);
        assert_eq!(q.mul(1, 0), -1);
        let left = order_monotonicity_sample(&q, Side::Left, 2000, 100, 0);
        assert_eq!(left.violations, 0);
        let right = order_monotonicity_sample(&q, Side::Right, 200, 100, 0);
        let (x, y, z) = right.witness.unwrap();
        assert!(x < y && q.mul(x, z) >= q.mul(y, z));
    }
}
