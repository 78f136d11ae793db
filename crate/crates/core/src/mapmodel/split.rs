//! Splitting a finite-basis algebra along its differential.
//!
//! For a valid connected algebra A the positive-degree part decomposes as
//! primitives ⊕ exacts ⊕ harmonics: the exact classes {yᵢ} form an echelon
//! basis of d(A), each primitive xᵢ is the echelon-chosen preimage with
//! d(xᵢ) = yᵢ, and the harmonics {e_j} complete {yᵢ} to a basis of the
//! closed elements. Together with the unit these vectors form a basis of A;
//! the split also carries a copy of A rewritten in that basis.

use std::sync::Arc;

use num::{One, Zero};

use crate::cdga::{Cdga, FinVec, FiniteBuilder, FiniteCdga, Limits};
use crate::gca::Rational;
use crate::linalg::{complement, QMatrix};

/// What a basis index of the rewritten algebra stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisRole {
    Unit,
    /// xᵢ with d(xᵢ) = yᵢ; the payload indexes the primitive list.
    Primitive(usize),
    /// yᵢ = d(xᵢ); the payload indexes the exact list.
    Exact(usize),
    /// A closed, non-exact completion class e_j.
    Harmonic(usize),
}

/// The split of a finite-basis algebra into primitives, exacts, and
/// harmonics, together with the same algebra rewritten in that basis.
#[derive(Debug, Clone)]
pub struct BasisSplit {
    source: Arc<FiniteCdga>,
    primitives: Vec<FinVec>,
    exacts: Vec<FinVec>,
    harmonics: Vec<FinVec>,
    algebra: Arc<FiniteCdga>,
}

impl BasisSplit {
    pub fn source(&self) -> &Arc<FiniteCdga> {
        &self.source
    }

    /// The source algebra in the basis {1, x₁.., y₁.., e₁..}; names are
    /// "x{i}", "y{i}", "e{j}" and d(xᵢ) = yᵢ holds on the nose.
    pub fn algebra(&self) -> &Arc<FiniteCdga> {
        &self.algebra
    }

    /// Primitives xᵢ in source coordinates.
    pub fn primitives(&self) -> &[FinVec] {
        &self.primitives
    }

    /// Exact classes yᵢ = d(xᵢ) in source coordinates.
    pub fn exacts(&self) -> &[FinVec] {
        &self.exacts
    }

    /// Closed non-exact completion classes e_j in source coordinates.
    pub fn harmonics(&self) -> &[FinVec] {
        &self.harmonics
    }

    /// Role of a basis index of the rewritten algebra.
    pub fn role_of(&self, idx: usize) -> BasisRole {
        let k = self.primitives.len();
        if idx == 0 {
            BasisRole::Unit
        } else if idx <= k {
            BasisRole::Primitive(idx - 1)
        } else if idx <= 2 * k {
            BasisRole::Exact(idx - 1 - k)
        } else {
            BasisRole::Harmonic(idx - 1 - 2 * k)
        }
    }

    /// Index of the primitive paired with the exact class at `idx`.
    pub fn primitive_index_for(&self, idx: usize) -> Option<usize> {
        match self.role_of(idx) {
            BasisRole::Exact(i) => Some(1 + i),
            _ => None,
        }
    }
}

/// Split a valid connected finite-basis algebra along its differential.
///
/// The input must satisfy the algebra laws (`validate`); on an algebra with
/// d² ≠ 0 the split basis cannot span and this function panics.
pub fn basis_split(a: &Arc<FiniteCdga>) -> BasisSplit {
    let limits = Limits::default();
    let dim = a.dim();
    let mut primitives = Vec::new();
    let mut exacts = Vec::new();
    let mut harmonics = Vec::new();

    let full = |idx_list: &[usize], coords: &[Rational]| -> FinVec {
        let mut v = vec![Rational::zero(); dim];
        for (pos, i) in idx_list.iter().enumerate() {
            v[*i] = coords[pos].clone();
        }
        v
    };

    for q in 1..=a.top_degree() {
        let here = a.degree_indices(q);
        let below = a.degree_indices(q - 1);
        if here.is_empty() {
            continue;
        }
        // Image of d in degree q, as echelon vectors over the degree-q basis.
        let d_cols: Vec<Vec<Rational>> = below
            .iter()
            .map(|&i| {
                a.coords_in_degree(a.diff_of(i), q, &limits)
                    .expect("differential values are homogeneous of degree +1")
            })
            .collect();
        let d_matrix = QMatrix::from_cols(here.len(), d_cols);
        let image = d_matrix.column_space_basis();
        for y in &image {
            let x_coords = d_matrix
                .solve(y)
                .expect("every echelon image vector has a primitive");
            primitives.push(full(&below, &x_coords));
            exacts.push(full(&here, y));
        }
        // Closed non-exact completions in degree q.
        let out_cols: Vec<Vec<Rational>> = here
            .iter()
            .map(|&i| {
                a.coords_in_degree(a.diff_of(i), q + 1, &limits)
                    .expect("differential values are homogeneous of degree +1")
            })
            .collect();
        let rows = out_cols.first().map(|c| c.len()).unwrap_or(0);
        let kernel = QMatrix::from_cols(rows, out_cols).kernel_basis();
        for e in complement(here.len(), &image, &kernel) {
            harmonics.push(full(&here, &e));
        }
    }

    // Rewrite A in the split basis. Degrees are read off the vectors.
    let degree_of = |v: &FinVec| -> u32 {
        v.iter()
            .position(|c| !c.is_zero())
            .map(|i| a.degree(i))
            .expect("split basis vectors are nonzero")
    };
    let mut builder = FiniteBuilder::new();
    let mut new_basis: Vec<FinVec> = vec![a.basis_vec(0)];
    for (i, x) in primitives.iter().enumerate() {
        builder.add_basis(&format!("x{}", i + 1), degree_of(x)).expect("fresh name");
        new_basis.push(x.clone());
    }
    for (i, y) in exacts.iter().enumerate() {
        builder.add_basis(&format!("y{}", i + 1), degree_of(y)).expect("fresh name");
        new_basis.push(y.clone());
    }
    for (j, e) in harmonics.iter().enumerate() {
        builder.add_basis(&format!("e{}", j + 1), degree_of(e)).expect("fresh name");
        new_basis.push(e.clone());
    }
    let change = QMatrix::from_cols(dim, new_basis.clone());
    let in_new_basis = |v: &FinVec| -> FinVec {
        change.solve(v).expect("the split basis spans the algebra")
    };
    let k = primitives.len();
    for i in 1..dim {
        // d(xᵢ) = yᵢ; exacts and harmonics are closed.
        if i <= k {
            let mut row = vec![Rational::zero(); dim];
            row[k + i] = Rational::one();
            builder.set_diff(i, row);
        }
        for j in 1..dim {
            let prod = a
                .mul_elems(&new_basis[i], &new_basis[j])
                .expect("dimension-checked product");
            builder.set_product(i, j, in_new_basis(&prod));
        }
    }
    let algebra = Arc::new(builder.build().expect("rewritten table is square"));
    debug_assert!(algebra.validate().is_ok());

    BasisSplit {
        source: a.clone(),
        primitives,
        exacts,
        harmonics,
        algebra,
    }
}
