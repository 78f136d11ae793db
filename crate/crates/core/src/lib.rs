//! Exact symbolic computation with Sullivan models, finite commutative
//! differential graded algebras, and mapping-space models over the rationals.
//!
//! All arithmetic is exact (arbitrary-precision rationals), every
//! representative choice is made by reduced row echelon form over the
//! canonical monomial order, and all values are immutable once built, so
//! results are bit-for-bit reproducible. Operations are pure functions of
//! their inputs; nothing in the crate mutates shared state.

pub mod cdga;
pub mod error;
pub mod gca;
pub mod linalg;
pub mod mapmodel;

pub use error::{Error, Violation};
