//! Weight-graded free models of graded algebras with zero differential.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::cdga::algebra::{Cdga, Limits};
use crate::cdga::finite::{FinVec, FiniteCdga};
use crate::cdga::morphism::assemble_model;
use crate::cdga::rank::RankTable;
use crate::cdga::sullivan::SullivanAlgebra;
use crate::error::Error;
use crate::gca::{Derivation, GenSet, Generator, Monomial, Polynomial, Rational};
use crate::linalg::{complement, QMatrix};

/// Build the weight-graded free model of a connected, simply-connected
/// graded algebra `h` with zero differential, through degree `cutoff`.
///
/// Generators carry a lower (weight) grading: weight 0 maps onto algebra
/// generators of `h`, weight 1 kills the relations, and weight p ≥ 2 kills
/// the weight-(p−1) cohomology introduced by earlier stages, so that the
/// weight-p cohomology of the result vanishes for every p ≥ 1 (see
/// [`weight_cohomology_ranks`]). The differential strictly lowers weight by
/// one. Generators are named `v{degree}_{counter}`.
pub fn bigraded_model(
    h: &Arc<FiniteCdga>,
    cutoff: u32,
    limits: &Limits,
) -> Result<Arc<SullivanAlgebra>, Error> {
    for i in 0..h.dim() {
        if h.diff_of(i).iter().any(|c| !c.is_zero()) {
            return Err(Error::Precondition(format!(
                "the differential must vanish, but d({}) = {}",
                h.name(i),
                h.display_elem(h.diff_of(i))
            )));
        }
    }
    if h.degree_indices(0).len() != 1 {
        return Err(Error::Precondition(
            "degree 0 must be spanned by the unit".to_string(),
        ));
    }
    if !h.degree_indices(1).is_empty() {
        return Err(Error::Precondition(
            "degree-1 classes are not supported (simply connected input required)".to_string(),
        ));
    }

    let mut gens = GenSet::new();
    let mut diff = Derivation::new(1);
    let mut psi_values: BTreeMap<Generator, FinVec> = BTreeMap::new();

    // weight 0: a complement of the decomposable part in each degree
    for q in 2..=cutoff {
        let idxs = h.degree_indices(q);
        if idxs.is_empty() {
            continue;
        }
        let mut products: Vec<FinVec> = Vec::new();
        for i in 1..h.dim() {
            for j in 1..h.dim() {
                if h.degree(i) + h.degree(j) == q {
                    let full = h.product_of(i, j);
                    products.push(idxs.iter().map(|&k| full[k].clone()).collect());
                }
            }
        }
        let identity: Vec<FinVec> = (0..idxs.len())
            .map(|i| {
                let mut e = vec![Rational::zero(); idxs.len()];
                e[i] = Rational::one();
                e
            })
            .collect();
        for gamma in complement(idxs.len(), &products, &identity) {
            let name = format!("v{}_{}", q, gens.of_degree(q).len() + 1);
            let g = gens.add_with_lower(&name, q, 0)?;
            let mut full = vec![Rational::zero(); h.dim()];
            for (&pos, c) in idxs.iter().zip(gamma) {
                full[pos] = c;
            }
            psi_values.insert(g, full);
        }
    }

    // weight p: kill the weight-(p-1) cohomology, degree by degree
    for p in 1..=cutoff {
        for q in 2..=cutoff + 1 {
            let (model, psi) = assemble_model(&gens, &diff, &psi_values, h, None)?;
            let cycles_basis = weight_basis(&model, p - 1, q, limits)?;
            if cycles_basis.is_empty() {
                continue;
            }
            let kernel: Vec<FinVec> = if p == 1 {
                // weight-0 elements are all closed; intersect with ker psi
                let mut cols = Vec::with_capacity(cycles_basis.len());
                for m in &cycles_basis {
                    let val = psi.apply(&Polynomial::from_term(m.clone(), Rational::one()))?;
                    cols.push(h.coords_in_degree(&val, q, limits)?);
                }
                QMatrix::from_cols(h.degree_indices(q).len(), cols).kernel_basis()
            } else {
                let target = weight_basis(&model, p - 2, q + 1, limits)?;
                d_matrix(&model, &cycles_basis, &target)?.kernel_basis()
            };
            if kernel.is_empty() {
                continue;
            }
            let prev = weight_basis(&model, p, q - 1, limits)?;
            let image_matrix = d_matrix(&model, &prev, &cycles_basis)?;
            let image: Vec<FinVec> = (0..prev.len()).map(|j| image_matrix.col(j)).collect();
            for r in complement(cycles_basis.len(), &image, &kernel) {
                let mut dz = Polynomial::zero();
                for (m, c) in cycles_basis.iter().zip(r) {
                    if !c.is_zero() {
                        dz = dz.add(&Polynomial::from_term(m.clone(), c));
                    }
                }
                let name = format!("v{}_{}", q - 1, gens.of_degree(q - 1).len() + 1);
                let g = gens.add_with_lower(&name, q - 1, p)?;
                diff.set(&g, dz)?;
                psi_values.insert(g, vec![Rational::zero(); h.dim()]);
            }
        }
    }

    let (model, _) = assemble_model(&gens, &diff, &psi_values, h, Some(cutoff))?;
    debug_assert!(model.validate().is_ok());
    Ok(model)
}

/// Cohomology ranks of the weight-p part of a weight-graded model: cycles
/// of weight p modulo differentials of weight-(p+1) elements, per degree.
pub fn weight_cohomology_ranks(
    model: &SullivanAlgebra,
    p: u32,
    cutoff: u32,
    limits: &Limits,
) -> Result<RankTable, Error> {
    if !model.gens().iter().all(|g| g.lower().is_some()) {
        return Err(Error::Precondition(
            "every generator must carry a weight".to_string(),
        ));
    }
    if let Some(c) = model.complete_through() {
        if cutoff > c {
            return Err(Error::InsufficientRange {
                needed: cutoff,
                available: c,
            });
        }
    }
    let mut ranks = RankTable::zeros(cutoff);
    for q in 0..=cutoff {
        let basis = weight_basis(model, p, q, limits)?;
        let cycles = if p == 0 {
            basis.len()
        } else {
            let target = weight_basis(model, p - 1, q + 1, limits)?;
            d_matrix(model, &basis, &target)?.kernel_basis().len()
        };
        let boundaries = if q == 0 {
            0
        } else {
            let prev = weight_basis(model, p + 1, q - 1, limits)?;
            d_matrix(model, &prev, &basis)?.rank()
        };
        ranks.set(q, cycles - boundaries);
    }
    Ok(ranks)
}

/// Monomials of degree q and weight p, in canonical order.
fn weight_basis(
    model: &SullivanAlgebra,
    p: u32,
    q: u32,
    limits: &Limits,
) -> Result<Vec<Monomial>, Error> {
    Ok(model
        .monomial_basis(q, limits)?
        .into_iter()
        .filter(|m| m.lower_weight() == p)
        .collect())
}

/// Matrix of d between two monomial lists (columns over `from`).
fn d_matrix(
    model: &SullivanAlgebra,
    from: &[Monomial],
    to: &[Monomial],
) -> Result<QMatrix, Error> {
    let index: BTreeMap<&Monomial, usize> = to.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut cols = Vec::with_capacity(from.len());
    for m in from {
        let dm = model.d(&Polynomial::from_term(m.clone(), Rational::one()))?;
        let mut col = vec![Rational::zero(); to.len()];
        for (mm, c) in dm.terms() {
            let Some(&i) = index.get(&mm) else {
                return Err(Error::NotWeightHomogeneous);
            };
            col[i] = c.clone();
        }
        cols.push(col);
    }
    Ok(QMatrix::from_cols(to.len(), cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::finite::FiniteBuilder;
    use crate::gca::rat;

    fn even_sphere2() -> Arc<FiniteCdga> {
        let mut b = FiniteBuilder::new();
        b.add_basis("x", 2).unwrap();
        Arc::new(b.build().unwrap())
    }

    fn wedge_of_two_odd() -> Arc<FiniteCdga> {
        let mut b = FiniteBuilder::new();
        b.add_basis("x", 3).unwrap();
        b.add_basis("y", 3).unwrap();
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn even_sphere_weights() {
        let model = bigraded_model(&even_sphere2(), 6, &Limits::default()).unwrap();
        let info: Vec<(String, u32, u32)> = model
            .gens()
            .iter()
            .map(|g| (g.name().to_string(), g.degree(), g.lower().unwrap()))
            .collect();
        assert_eq!(
            info,
            vec![
                ("v2_1".to_string(), 2, 0),
                ("v3_1".to_string(), 3, 1),
            ]
        );
        let x = model.gens().by_name("v2_1").unwrap().clone();
        let y = model.gens().by_name("v3_1").unwrap().clone();
        assert_eq!(
            model.diff().value(&y),
            Polynomial::generator(&x).try_pow(2).unwrap()
        );
    }

    #[test]
    fn zero_products_force_weight_two_generators() {
        let model = bigraded_model(&wedge_of_two_odd(), 7, &Limits::default()).unwrap();
        let info: Vec<(u32, u32)> = model
            .gens()
            .iter()
            .map(|g| (g.degree(), g.lower().unwrap()))
            .collect();
        assert_eq!(info, vec![(3, 0), (3, 0), (5, 1), (7, 2), (7, 2)]);
        let x = model.gens().by_name("v3_1").unwrap().clone();
        let y = model.gens().by_name("v3_2").unwrap().clone();
        let z = model.gens().by_name("v5_1").unwrap().clone();
        let xy = Polynomial::generator(&x)
            .try_mul(&Polynomial::generator(&y))
            .unwrap();
        assert_eq!(model.diff().value(&z), xy);
        // echelon representatives are canonical monomials with coefficient 1
        let xz = Polynomial::generator(&x)
            .try_mul(&Polynomial::generator(&z))
            .unwrap();
        let yz = Polynomial::generator(&y)
            .try_mul(&Polynomial::generator(&z))
            .unwrap();
        let w1 = model.gens().by_name("v7_1").unwrap().clone();
        let w2 = model.gens().by_name("v7_2").unwrap().clone();
        assert_eq!(model.diff().value(&w1), xz);
        assert_eq!(model.diff().value(&w2), yz);
    }

    #[test]
    fn positive_weight_cohomology_vanishes() {
        let limits = Limits::default();
        let model = bigraded_model(&wedge_of_two_odd(), 7, &limits).unwrap();
        // weight 0 reproduces the algebra's ranks
        let w0 = weight_cohomology_ranks(&model, 0, 7, &limits).unwrap();
        assert_eq!(w0, RankTable::from_pairs(7, &[(0, 1), (3, 2)]));
        for p in 1..=3 {
            let wp = weight_cohomology_ranks(&model, p, 7, &limits).unwrap();
            assert_eq!(wp, RankTable::zeros(7), "weight {}", p);
        }
    }

    #[test]
    fn preconditions_are_checked() {
        let mut b = FiniteBuilder::new();
        let x = b.add_basis("x", 2).unwrap();
        let y = b.add_basis("y", 3).unwrap();
        let mut dy = vec![rat(0); 3];
        dy[y] = rat(1);
        b.set_diff(x, dy);
        let withdiff = Arc::new(b.build().unwrap());
        assert!(matches!(
            bigraded_model(&withdiff, 5, &Limits::default()),
            Err(Error::Precondition(_))
        ));

        let mut b = FiniteBuilder::new();
        b.add_basis("t", 1).unwrap();
        let circle = Arc::new(b.build().unwrap());
        assert!(matches!(
            bigraded_model(&circle, 5, &Limits::default()),
            Err(Error::Precondition(_))
        ));
    }
}
