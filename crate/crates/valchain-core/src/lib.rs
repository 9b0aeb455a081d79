//! Exact arithmetic for semi-valuations on K[T] built by chains of augmentations.
//!
//! The crate is organized bottom-up:
//!
//! * [`value`] — extended values `q`, `a + b*sqrt(d)`, `inf`, and finitely generated
//!   value groups with exact order and group joins.
//! * [`field`] — the two shipped base fields: rationals with a p-adic valuation and
//!   rational functions over F_p with the t-adic valuation.
//! * [`poly`] — dense univariate polynomials over a base field, Euclidean division,
//!   phi-adic expansion, derivatives.
//! * [`valuation`] — evaluation of Gauss, ordinary-augmented, limit-augmented and
//!   stable-family semi-valuations; v-equivalence; a randomized key-polynomial
//!   falsifier.
//! * [`chain`] — augmentation chains: realization, structural validation, step.
//! * [`content`] — content of finitely presented modules over the valuation ring.
//! * [`enlarge`] — symbolic finite presentations of the unit-ball enlargements of an
//!   augmentation, with exact Jacobian-determinant valuations and their limit check.
//! * [`invariants`] — differents, log differents, discrepancies, the Kähler value of
//!   dT, and the absolute log different, computed from a chain.
//! * [`sample`] — deterministic random generators for elements, polynomials and
//!   chains (used by the falsifier and the test suites).
//!
//! Everything is exact: no floating point is used anywhere, including the continued
//! fraction machinery for quadratic irrationals.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod chain;
pub mod content;
pub mod enlarge;
pub mod error;
pub mod field;
pub mod invariants;
pub mod poly;
pub mod sample;
pub mod valuation;
pub mod value;

pub use error::Error;
pub use value::{Value, ValueGroup};
