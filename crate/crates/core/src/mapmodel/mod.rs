//! Models for mapping spaces between rational spaces.
//!
//! The source is a finite-basis commutative algebra, the target a free model;
//! the mapping-space model is a free algebra on one generator per pair of a
//! source basis element and a target generator, with the differential
//! extracted from the evaluation constraint in the tensor of the two. The rest
//! of the module packages the bookkeeping around that construction: finite
//! quotients of free models to use as sources, the primitive/exact/harmonic
//! basis split that diagonalises a finite differential, the quotient complex
//! that drops words with two or more positive-row factors, and rank checks
//! (homotopy of the mapping space from the factors, vanishing above the
//! target dimension, and the splitting of function-space cohomology into free
//! pieces when the target is an odd sphere).

mod checks;
mod finite_model;
mod haefliger;
mod quotient;
mod split;
mod tensor;

pub use checks::{
    homotopy_formula, hurewicz_vanishing_check, thom_splitting_check, ThomOutcome,
    VanishingOutcome,
};
pub use finite_model::finite_model_from_minimal;
pub use haefliger::{haefliger_model, HaefligerModel};
pub use quotient::{theorem2_quotient, CheckLine, QuotientComplex};
pub use split::{basis_split, BasisRole, BasisSplit};
pub use tensor::{TensorCdga, TensorElem};
