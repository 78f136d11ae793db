//! Finite-basis quotients of free models with bounded cohomology.
//!
//! A free model (∧W, d) whose cohomology vanishes above its top nonzero
//! degree n admits a finite commutative model: quotient by the differential
//! ideal spanned by everything above degree n together with an echelon-chosen
//! complement S of the cocycles in degree n. The quotient keeps every
//! monomial below degree n, keeps the degree-n cocycles, and kills the rest;
//! the quotient map is a quasi-isomorphism because the ideal is acyclic.

use std::sync::Arc;

use num::{One, Zero};

use crate::cdga::{
    degree_data, verify_quasi_iso, Cdga, FinVec, FiniteBuilder, FiniteCdga, Limits, Morphism,
    SullivanAlgebra,
};
use crate::error::{Error, Violation};
use crate::gca::{Monomial, Normalized, Polynomial, Rational};
use crate::linalg::{complement, QMatrix};

/// Quotient a free model with cohomology concentrated in degrees ≤ n down to
/// a finite-basis algebra with top degree n, and verify the quotient map is a
/// quasi-isomorphism through n.
///
/// Vanishing of the cohomology above n is checked through `verify_cutoff`.
pub fn finite_model_from_minimal(
    m: &Arc<SullivanAlgebra>,
    n: u32,
    verify_cutoff: u32,
    limits: &Limits,
) -> Result<Arc<FiniteCdga>, Error> {
    if verify_cutoff < n {
        return Err(Error::Precondition(format!(
            "the verification cutoff {} must reach the top degree {}",
            verify_cutoff, n
        )));
    }
    if let Some(c) = m.completeness() {
        if verify_cutoff > c {
            return Err(Error::InsufficientRange {
                needed: verify_cutoff,
                available: c,
            });
        }
    }
    for q in n + 1..=verify_cutoff {
        let rank = degree_data(&**m, q, limits)?.reps.len();
        if rank > 0 {
            return Err(Error::Precondition(format!(
                "cohomology must vanish above degree {}; found rank {} in degree {}",
                n, rank, q
            )));
        }
    }
    if degree_data(&**m, n, limits)?.reps.is_empty() {
        return Err(Error::Precondition(format!(
            "degree-{} cohomology must be nonzero for the quotient to have top degree {}",
            n, n
        )));
    }

    // Monomial bases of the surviving degrees, and the degree-n cocycles.
    let mut bases: Vec<Vec<Monomial>> = Vec::with_capacity(n as usize + 1);
    for q in 0..=n {
        bases.push(m.monomial_basis(q, limits)?);
    }
    let top_basis = &bases[n as usize];
    let above = m.monomial_basis(n + 1, limits)?;
    let d_cols: Vec<Vec<Rational>> = top_basis
        .iter()
        .map(|mon| {
            let d = m
                .d(&Polynomial::from_term(mon.clone(), Rational::one()))
                .expect("differentials of basis monomials are defined");
            mono_coords(&d, &above)
        })
        .collect();
    let cocycles = QMatrix::from_cols(above.len(), d_cols).kernel_basis();
    let identity: Vec<Vec<Rational>> = (0..top_basis.len())
        .map(|i| {
            let mut e = vec![Rational::zero(); top_basis.len()];
            e[i] = Rational::one();
            e
        })
        .collect();
    let spill = complement(top_basis.len(), &cocycles, &identity);

    // Express a degree-n coordinate vector in the cocycle part of the
    // decomposition cocycles ⊕ spill.
    let mut splitter_cols = cocycles.clone();
    splitter_cols.extend(spill.iter().cloned());
    let splitter = QMatrix::from_cols(top_basis.len(), splitter_cols);
    let project = |coords: &[Rational]| -> Vec<Rational> {
        let solution = splitter
            .solve(coords)
            .expect("the cocycles and their complement span the top degree");
        solution[..cocycles.len()].to_vec()
    };

    // Assemble the quotient. Basis names are the displayed polynomials.
    let mut builder = FiniteBuilder::new();
    let mut index_of_monomial: Vec<Vec<usize>> = vec![Vec::new(); n as usize + 1];
    for q in 1..n {
        for mon in &bases[q as usize] {
            let idx = builder.add_basis(&format!("{}", mon), q)?;
            index_of_monomial[q as usize].push(idx);
        }
    }
    let mut cocycle_indices = Vec::new();
    for z in &cocycles {
        let name = format!("{}", combo(z, top_basis));
        cocycle_indices.push(builder.add_basis(&name, n)?);
    }
    let dim = 1 + (1..n).map(|q| bases[q as usize].len()).sum::<usize>() + cocycles.len();

    // Image of a homogeneous polynomial under the quotient map.
    let to_quotient = |p: &Polynomial, q: u32| -> FinVec {
        let mut out = vec![Rational::zero(); dim];
        if q > n || p.is_zero() {
            return out;
        }
        if q == 0 {
            out[0] = p.coeff(&Monomial::one());
            return out;
        }
        if q < n {
            for (m2, c) in p.terms() {
                let pos = bases[q as usize]
                    .iter()
                    .position(|b| b == m2)
                    .expect("canonical monomials appear in their degree basis");
                out[index_of_monomial[q as usize][pos]] = c.clone();
            }
            return out;
        }
        for (pos, c) in project(&mono_coords(p, top_basis)).into_iter().enumerate() {
            out[cocycle_indices[pos]] = c;
        }
        out
    };

    // Products of surviving monomials; everything landing above n is zero.
    for (qa, qb) in degree_pairs(n) {
        for (ia, ma) in bases[qa as usize].iter().enumerate() {
            for (ib, mb) in bases[qb as usize].iter().enumerate() {
                let value = match ma.mul(mb).expect("monomials share a generator set") {
                    Normalized::Zero => vec![Rational::zero(); dim],
                    Normalized::Term(mm, sign) => {
                        let p = Polynomial::from_term(
                            mm,
                            if sign < 0 { -Rational::one() } else { Rational::one() },
                        );
                        to_quotient(&p, qa + qb)
                    }
                };
                builder.set_product(
                    index_of_monomial[qa as usize][ia],
                    index_of_monomial[qb as usize][ib],
                    value,
                );
            }
        }
    }

    // Differential on surviving monomials; degree-n classes are cocycles.
    for q in 1..n {
        for (i, mon) in bases[q as usize].iter().enumerate() {
            let d = m.d(&Polynomial::from_term(mon.clone(), Rational::one()))?;
            builder.set_diff(index_of_monomial[q as usize][i], to_quotient(&d, q + 1));
        }
    }

    let finite = Arc::new(builder.build()?);
    debug_assert!(finite.validate().is_ok());

    // The quotient map must be a quasi-isomorphism through n.
    let mut quotient_map = Morphism::new(m.clone(), finite.clone());
    for g in m.gens().iter() {
        quotient_map.set(&g.clone(), to_quotient(&Polynomial::generator(&g), g.degree()))?;
    }
    let report = verify_quasi_iso(&quotient_map, n, limits)?;
    if !report.is_pass() {
        return Err(Error::Invalid(Violation {
            law: "quasi_isomorphism",
            witness: format!("{:?}", report),
        }));
    }
    Ok(finite)
}

fn mono_coords(p: &Polynomial, basis: &[Monomial]) -> Vec<Rational> {
    basis.iter().map(|m| p.coeff(m)).collect()
}

fn combo(coords: &[Rational], basis: &[Monomial]) -> Polynomial {
    let mut out = Polynomial::zero();
    for (c, m) in coords.iter().zip(basis) {
        if !c.is_zero() {
            out = out.add(&Polynomial::from_term(m.clone(), c.clone()));
        }
    }
    out
}

fn degree_pairs(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for qa in 1..n {
        for qb in 1..n {
            if qa + qb <= n {
                out.push((qa, qb));
            }
        }
    }
    out
}
