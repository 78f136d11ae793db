//! Commutative differential graded algebras and their invariants: validation,
//! cohomology, Sullivan models, homotopy and Hurewicz ranks, formality.

mod algebra;
mod bigraded;
mod cohomology;
mod finite;
mod formality;
mod homotopy;
mod minimal;
mod morphism;
mod rank;
mod sullivan;

pub use algebra::{Cdga, Limits};
pub use bigraded::{bigraded_model, weight_cohomology_ranks};
pub use cohomology::{
    class_coords, class_in_algebra, cohomology, cohomology_algebra, degree_data, Cohomology,
    CohomologyAlgebra, DegreeData,
};
pub use finite::{FinVec, FiniteBuilder, FiniteCdga};
pub use formality::{
    formality_witness_linear, massey_scan, triple_massey, MasseyResult, MasseyWitness,
};
pub use homotopy::{homotopy_ranks, hurewicz_ranks};
pub use minimal::minimal_model;
pub use morphism::{verify_quasi_iso, Morphism, QuasiIsoReport};
pub use rank::RankTable;
pub use sullivan::SullivanAlgebra;
