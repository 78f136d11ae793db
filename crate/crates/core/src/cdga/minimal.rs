//! Degree-by-degree construction of the minimal free model of a finite CDGA.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;

use crate::cdga::algebra::{Cdga, Limits};
use crate::cdga::cohomology::{class_coords, degree_data};
use crate::cdga::finite::{FinVec, FiniteCdga};
use crate::cdga::morphism::{assemble_model, verify_quasi_iso, Morphism, QuasiIsoReport};
use crate::cdga::sullivan::SullivanAlgebra;
use crate::error::{Error, Violation};
use crate::gca::{Derivation, GenSet, Generator, Rational};
use crate::linalg::{complement, QMatrix};

/// Build the minimal free model of `a` through degree `cutoff`, together
/// with the quasi-isomorphism onto `a`.
///
/// Requires rank-1 cohomology in degree 0 and none in degree 1. Generators
/// are named `v{degree}_{counter}` in creation order. Degree k is handled by
/// first adjoining closed generators hitting the part of H^k(a) not yet in
/// the image, then generators of degree k killing the kernel of the induced
/// map on H^{k+1}. The returned model is marked complete through `cutoff`
/// and has been re-verified as a quasi-isomorphism up to that degree.
pub fn minimal_model(
    a: &Arc<FiniteCdga>,
    cutoff: u32,
    limits: &Limits,
) -> Result<(Arc<SullivanAlgebra>, Morphism<FiniteCdga>), Error> {
    let h0 = degree_data(a.as_ref(), 0, limits)?;
    if h0.reps.len() != 1 {
        return Err(Error::Precondition(format!(
            "degree-0 cohomology must have rank 1, found {}",
            h0.reps.len()
        )));
    }
    let h1 = degree_data(a.as_ref(), 1, limits)?;
    if !h1.reps.is_empty() {
        return Err(Error::Precondition(format!(
            "degree-1 cohomology must vanish, found rank {}",
            h1.reps.len()
        )));
    }

    let mut gens = GenSet::new();
    let mut diff = Derivation::new(1);
    let mut phi_values: BTreeMap<Generator, FinVec> = BTreeMap::new();

    for k in 2..=cutoff {
        // close the gap on H^k: adjoin d-closed generators for a complement
        // of the image of H^k(model) in H^k(a)
        {
            let (model, phi) = assemble_model(&gens, &diff, &phi_values, a, None)?;
            let model_k = degree_data(model.as_ref(), k, limits)?;
            let a_k = degree_data(a.as_ref(), k, limits)?;
            let mut image_classes = Vec::with_capacity(model_k.reps.len());
            for r in &model_k.reps {
                let elem = model.elem_from_coords(r, k, limits)?;
                image_classes.push(class_coords(a.as_ref(), &a_k, &phi.apply(&elem)?, k, limits)?);
            }
            let identity: Vec<Vec<Rational>> = (0..a_k.reps.len())
                .map(|i| {
                    let mut e = vec![Rational::zero(); a_k.reps.len()];
                    e[i] = Rational::from_integer(1.into());
                    e
                })
                .collect();
            for gamma in complement(a_k.reps.len(), &image_classes, &identity) {
                // cocycle in `a` with class coordinates gamma
                let mut coords = vec![Rational::zero(); a_k.basis.len()];
                for (j, c) in gamma.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (pos, r) in a_k.reps[j].iter().enumerate() {
                        coords[pos] += r * c;
                    }
                }
                let target = a.elem_from_coords(&coords, k, limits)?;
                let name = format!("v{}_{}", k, gens.of_degree(k).len() + 1);
                let g = gens.add(&name, k)?;
                phi_values.insert(g, target);
            }
        }

        // kill the kernel of the induced map on H^{k+1}: adjoin degree-k
        // generators whose differentials realize the kernel classes
        {
            let (model, phi) = assemble_model(&gens, &diff, &phi_values, a, None)?;
            let model_k1 = degree_data(model.as_ref(), k + 1, limits)?;
            let a_k1 = degree_data(a.as_ref(), k + 1, limits)?;
            let mut cols = Vec::with_capacity(model_k1.reps.len());
            for r in &model_k1.reps {
                let elem = model.elem_from_coords(r, k + 1, limits)?;
                cols.push(class_coords(a.as_ref(), &a_k1, &phi.apply(&elem)?, k + 1, limits)?);
            }
            let kernel = QMatrix::from_cols(a_k1.reps.len(), cols).kernel_basis();
            let mut d_values = Vec::with_capacity(kernel.len());
            for kappa in &kernel {
                let mut coords = vec![Rational::zero(); model_k1.basis.len()];
                for (i, c) in kappa.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (pos, r) in model_k1.reps[i].iter().enumerate() {
                        coords[pos] += r * c;
                    }
                }
                let dz = model.elem_from_coords(&coords, k + 1, limits)?;
                // phi(dz) is exact in `a`; pick the echelon primitive
                let image = phi.apply(&dz)?;
                let b = a.coords_in_degree(&image, k + 1, limits)?;
                let a_basis_k = a.degree_basis(k, limits)?;
                let mut d_cols = Vec::with_capacity(a_basis_k.len());
                for e in &a_basis_k {
                    d_cols.push(a.coords_in_degree(&a.d_elem(e)?, k + 1, limits)?);
                }
                let u_coords = QMatrix::from_cols(b.len(), d_cols).solve(&b).ok_or_else(|| {
                    Error::Precondition(format!(
                        "kernel class image {} has no primitive in degree {}",
                        a.display_elem(&image),
                        k
                    ))
                })?;
                let u = a.elem_from_coords(&u_coords, k, limits)?;
                d_values.push((dz, u));
            }
            for (dz, u) in d_values {
                let name = format!("v{}_{}", k, gens.of_degree(k).len() + 1);
                let g = gens.add(&name, k)?;
                diff.set(&g, dz)?;
                phi_values.insert(g, u);
            }
        }
    }

    let (model, phi) = assemble_model(&gens, &diff, &phi_values, a, Some(cutoff))?;
    debug_assert!(model.is_minimal());
    match verify_quasi_iso(&phi, cutoff, limits)? {
        QuasiIsoReport::Pass => Ok((model, phi)),
        report => Err(Violation {
            law: "quasi_isomorphism",
            witness: format!("{:?}", report),
        }
        .into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::finite::FiniteBuilder;
    use crate::gca::{rat, Polynomial};

    fn sphere4() -> Arc<FiniteCdga> {
        let mut b = FiniteBuilder::new();
        b.add_basis("e", 4).unwrap();
        Arc::new(b.build().unwrap())
    }

    fn cp2() -> Arc<FiniteCdga> {
        let mut b = FiniteBuilder::new();
        let x = b.add_basis("x", 2).unwrap();
        let x2 = b.add_basis("x2", 4).unwrap();
        let mut e = vec![rat(0); 3];
        e[x2] = rat(1);
        b.set_product(x, x, e);
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn even_sphere_gets_two_generators() {
        let a = sphere4();
        let (model, phi) = minimal_model(&a, 10, &Limits::default()).unwrap();
        let degs: Vec<u32> = model.gens().iter().map(|g| g.degree()).collect();
        assert_eq!(degs, vec![4, 7]);
        let v = model.gens().by_name("v4_1").unwrap().clone();
        let w = model.gens().by_name("v7_1").unwrap().clone();
        assert!(model.diff().value(&v).is_zero());
        assert_eq!(
            model.diff().value(&w),
            Polynomial::generator(&v).try_pow(2).unwrap()
        );
        assert_eq!(phi.value(&v), Some(&a.basis_vec(1)));
        assert_eq!(phi.value(&w), Some(&a.zero_elem()));
        assert_eq!(model.complete_through(), Some(10));
    }

    #[test]
    fn odd_sphere_is_free_on_one_generator() {
        let mut b = FiniteBuilder::new();
        b.add_basis("e", 3).unwrap();
        let a = Arc::new(b.build().unwrap());
        let (model, _) = minimal_model(&a, 9, &Limits::default()).unwrap();
        let degs: Vec<u32> = model.gens().iter().map(|g| g.degree()).collect();
        assert_eq!(degs, vec![3]);
        assert!(model.has_linear_differential()); // d = 0
    }

    #[test]
    fn projective_plane_has_cubic_relation() {
        let a = cp2();
        let (model, _) = minimal_model(&a, 8, &Limits::default()).unwrap();
        let degs: Vec<u32> = model.gens().iter().map(|g| g.degree()).collect();
        assert_eq!(degs, vec![2, 5]);
        let x = model.gens().by_name("v2_1").unwrap().clone();
        let y = model.gens().by_name("v5_1").unwrap().clone();
        assert_eq!(
            model.diff().value(&y),
            Polynomial::generator(&x).try_pow(3).unwrap()
        );
    }

    #[test]
    fn degree_one_class_is_rejected() {
        let mut b = FiniteBuilder::new();
        b.add_basis("t", 1).unwrap();
        let a = Arc::new(b.build().unwrap());
        match minimal_model(&a, 5, &Limits::default()) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("degree-1")),
            Err(other) => panic!("unexpected error {:?}", other),
            Ok(_) => panic!("expected precondition error"),
        }
    }
}
