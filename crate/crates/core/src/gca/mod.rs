//! Graded-commutative polynomial algebra over the rationals.
//!
//! Generators carry a positive degree (and optionally a lower grading);
//! monomials are canonical ordered products with Koszul signs; polynomials
//! are exact rational combinations. Derivations extend generator values by
//! the graded Leibniz rule, and weighted gradings support the Euler identity.

mod derivation;
mod gens;
mod grading;
mod monomial;
mod poly;

pub use derivation::{partial_derivative, Derivation};
pub use gens::{GenSet, Generator};
pub use grading::{euler_identity_check, EulerReport, WeightedGrading};
pub use monomial::{Monomial, Normalized, Sign};
pub use poly::{rat, ratio, HomDegree, Polynomial, Rational};
