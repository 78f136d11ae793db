//! The common interface of differential graded algebras with effective bases.
//!
//! Both algebra kinds (free Sullivan algebras and finite-basis algebras) and
//! the tensor algebras built from them expose the same handful of operations:
//! arithmetic on elements, the differential, and a deterministic basis of
//! every degree. Cohomology, quasi-isomorphism checks, and Massey products
//! are written once against this trait.

use crate::error::Error;
use crate::gca::Rational;

/// Resource limits for basis enumeration.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Maximum number of monomials enumerated in any single degree.
    pub max_monomials: usize,
}

impl Limits {
    pub fn with_max_monomials(max_monomials: usize) -> Self {
        Limits { max_monomials }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_monomials: 200_000,
        }
    }
}

/// A commutative differential graded algebra with finite-dimensional graded
/// pieces and an effective, deterministically ordered basis in each degree.
pub trait Cdga {
    type Elem: Clone + PartialEq;

    fn zero_elem(&self) -> Self::Elem;
    fn unit_elem(&self) -> Self::Elem;
    fn add_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale_elem(&self, c: &Rational, a: &Self::Elem) -> Self::Elem;
    fn mul_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Error>;
    fn d_elem(&self, a: &Self::Elem) -> Result<Self::Elem, Error>;

    /// Basis of the degree-q piece, in a fixed deterministic order.
    fn degree_basis(&self, q: u32, limits: &Limits) -> Result<Vec<Self::Elem>, Error>;

    /// Coordinates of a homogeneous degree-q element in `degree_basis` order.
    fn coords_in_degree(
        &self,
        a: &Self::Elem,
        q: u32,
        limits: &Limits,
    ) -> Result<Vec<Rational>, Error>;

    fn display_elem(&self, a: &Self::Elem) -> String;

    fn degree_dim(&self, q: u32, limits: &Limits) -> Result<usize, Error> {
        Ok(self.degree_basis(q, limits)?.len())
    }

    /// Largest degree through which the generator/basis list is known to be
    /// complete; `None` means the algebra is fully given.
    fn completeness(&self) -> Option<u32> {
        None
    }

    fn sub_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let minus_one = -Rational::from_integer(1.into());
        self.add_elems(a, &self.scale_elem(&minus_one, b))
    }

    /// Rebuild an element from `degree_basis` coordinates.
    fn elem_from_coords(
        &self,
        coords: &[Rational],
        q: u32,
        limits: &Limits,
    ) -> Result<Self::Elem, Error> {
        let basis = self.degree_basis(q, limits)?;
        if basis.len() != coords.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coords.len(),
            });
        }
        let mut out = self.zero_elem();
        for (c, b) in coords.iter().zip(&basis) {
            out = self.add_elems(&out, &self.scale_elem(c, b));
        }
        Ok(out)
    }
}
