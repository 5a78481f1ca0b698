//! Exact computations with finite quandles and their quandle rings.
//!
//! A quandle ring `R[Q]` is the free `R`-module on a quandle `Q` with the
//! quandle operation extended bilinearly. The crate covers idempotents,
//! quandles sitting inside the ring, ring automorphisms, commutators,
//! zero-divisors, orderability and non-associative identity checks.
//!
//! ```
//! use quandlekit::{catalog, ring::RingElement, CoefficientRing};
//!
//! let r3 = std::sync::Arc::new(quandlekit::FiniteQuandle::dihedral(3).unwrap());
//! let a0 = RingElement::basis(&r3, CoefficientRing::Integers, 0).unwrap();
//! let a1 = RingElement::basis(&r3, CoefficientRing::Integers, 1).unwrap();
//! let e1 = a1.sub(&a0).unwrap();
//! assert_eq!(e1.mul(&e1).unwrap().to_string(), "a0 + a1 - 2*a2");
//! ```

pub mod automorphisms;
pub mod catalog;
pub mod certificate;
pub mod cli;
pub mod coeffs;
pub mod commutators;
pub mod error;
pub mod idempotents;
pub mod infinite;
pub mod lattice;
pub mod nonassoc;
pub mod order_zero;
pub mod quandle;
pub mod report;
pub mod ring;
pub mod substructures;

pub use coeffs::{CoefficientRing, Scalar};
pub use error::{Error, Result};
pub use lattice::{EchelonBasis, IntLatticeBasis, Span};
pub use quandle::{FiniteGroup, FiniteQuandle, QuandlePermutation};
pub use ring::{ExtRingElement, RingElement};
