//! Error and violation types shared by the whole library.

use thiserror::Error;

/// A broken algebra law found by `validate`, together with a witness element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Which law failed (e.g. "d_squared", "graded_commutativity").
    pub law: &'static str,
    /// Human-readable witness: the offending element(s) and values.
    pub witness: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.law, self.witness)
    }
}

/// Errors raised by algebra construction and the computational operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}` for this algebra")]
    UnknownGenerator(String),

    #[error("operands belong to different algebras")]
    MixedAlgebras,

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("generator `{0}` must have degree >= 1")]
    InvalidDegree(String),

    #[error("value assigned to `{gen}` must be homogeneous of degree {expected}, found {found}")]
    InhomogeneousValue {
        gen: String,
        expected: i64,
        found: String,
    },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial is not homogeneous for the given weighting")]
    NotWeightHomogeneous,

    #[error("monomial budget exceeded in degree {degree}: needs more than {limit} monomials")]
    BudgetExceeded { degree: u32, limit: usize },

    #[error("coefficient vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generators supplied only up to degree {available}, but degree {needed} is required")]
    InsufficientRange { needed: u32, available: u32 },

    #[error("no value assigned for generator `{0}` under this morphism")]
    MissingValue(String),

    #[error("validation failed: {0}")]
    Invalid(Violation),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Invalid(v)
    }
}
