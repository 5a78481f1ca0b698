//! Infinite quandles: free quandles and integer-indexed quandles, plus a
//! small generic layer for finitely supported ring elements over any magma.

mod free;
mod int;
mod sparse;

pub use free::{fq_equal, fq_semi_latin_sample, FreeQuandle, FreeQuandleElement, Letter, SemiLatinReport};
pub use int::{order_monotonicity_sample, respects_order, IntQuandle, MonotonicityReport, Side};
pub use sparse::{sparse_is_zero, sparse_mul, sparse_to_string, SparseElement};

use std::fmt::Debug;

use crate::quandle::FiniteQuandle;

/// A set with a binary operation, enough to multiply finitely supported
/// linear combinations.
pub trait Magma {
    type Elem: Clone + Ord + Debug;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn label(&self, a: &Self::Elem) -> String;
}

impl Magma for FiniteQuandle {
    type Elem = usize;
    fn op(&self, a: &usize, b: &usize) -> usize {
        self.mul(*a, *b)
    }
    fn label(&self, a: &usize) -> String {
        FiniteQuandle::label(self, *a)
    }
}
