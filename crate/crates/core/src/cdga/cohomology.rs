//! Cohomology of a CDGA: ranks, representative cocycles, class coordinates,
//! and the induced algebra structure on cohomology.

use num::Zero;

use crate::cdga::algebra::{Cdga, Limits};
use crate::cdga::finite::{FinVec, FiniteBuilder, FiniteCdga};
use crate::cdga::rank::RankTable;
use crate::error::Error;
use crate::gca::Rational;
use crate::linalg::{complement, QMatrix};

/// Linear data of one degree q: the chain basis together with echelon bases
/// of the cocycles, the coboundaries, and the chosen class representatives
/// (a complement of the coboundaries inside the cocycles). All vectors are
/// coordinates over `basis`.
#[derive(Debug, Clone)]
pub struct DegreeData<E> {
    pub basis: Vec<E>,
    pub kernel: Vec<Vec<Rational>>,
    pub image: Vec<Vec<Rational>>,
    pub reps: Vec<Vec<Rational>>,
}

/// Cohomology ranks through a cutoff, with representative cocycles per degree.
#[derive(Debug, Clone)]
pub struct Cohomology<E> {
    pub ranks: RankTable,
    pub reps: Vec<Vec<E>>,
}

/// The cohomology of a CDGA as a finite CDGA with zero differential, plus a
/// representative cocycle for each basis class (index-aligned, unit first).
/// Products landing above the cutoff are truncated to zero, i.e. the algebra
/// is the quotient of H by the ideal of classes above the cutoff.
#[derive(Debug, Clone)]
pub struct CohomologyAlgebra<E> {
    pub algebra: FiniteCdga,
    pub reps: Vec<E>,
}

/// Compute the degree-q linear data of `alg`.
pub fn degree_data<T: Cdga>(alg: &T, q: u32, limits: &Limits) -> Result<DegreeData<T::Elem>, Error> {
    if let Some(c) = alg.completeness() {
        if q > c {
            return Err(Error::InsufficientRange {
                needed: q,
                available: c,
            });
        }
    }
    let basis = alg.degree_basis(q, limits)?;
    let next_dim = alg.degree_dim(q + 1, limits)?;
    let mut d_cols = Vec::with_capacity(basis.len());
    for b in &basis {
        let db = alg.d_elem(b)?;
        d_cols.push(alg.coords_in_degree(&db, q + 1, limits)?);
    }
    let kernel = QMatrix::from_cols(next_dim, d_cols).kernel_basis();
    let image = if q == 0 {
        Vec::new()
    } else {
        let prev = alg.degree_basis(q - 1, limits)?;
        let mut cols = Vec::with_capacity(prev.len());
        for b in &prev {
            let db = alg.d_elem(b)?;
            cols.push(alg.coords_in_degree(&db, q, limits)?);
        }
        QMatrix::from_cols(basis.len(), cols).column_space_basis()
    };
    let reps = complement(basis.len(), &image, &kernel);
    Ok(DegreeData {
        basis,
        kernel,
        image,
        reps,
    })
}

/// Coordinates of the cohomology class of the degree-q cocycle `a` over
/// `data.reps`. Fails if `a` is not a cocycle.
pub fn class_coords<T: Cdga>(
    alg: &T,
    data: &DegreeData<T::Elem>,
    a: &T::Elem,
    q: u32,
    limits: &Limits,
) -> Result<Vec<Rational>, Error> {
    let coords = alg.coords_in_degree(a, q, limits)?;
    let mut cols: Vec<Vec<Rational>> = data.reps.to_vec();
    cols.extend(data.image.iter().cloned());
    let m = QMatrix::from_cols(coords.len(), cols);
    let x = m.solve(&coords).ok_or_else(|| {
        Error::Precondition(format!(
            "{} does not represent a cohomology class in degree {}",
            alg.display_elem(a),
            q
        ))
    })?;
    Ok(x[..data.reps.len()].to_vec())
}

/// Cohomology ranks and representatives through `cutoff`.
pub fn cohomology<T: Cdga>(alg: &T, cutoff: u32, limits: &Limits) -> Result<Cohomology<T::Elem>, Error> {
    if let Some(c) = alg.completeness() {
        if cutoff > c {
            return Err(Error::InsufficientRange {
                needed: cutoff,
                available: c,
            });
        }
    }
    let mut ranks = RankTable::zeros(cutoff);
    let mut reps = Vec::with_capacity(cutoff as usize + 1);
    for q in 0..=cutoff {
        let data = degree_data(alg, q, limits)?;
        ranks.set(q, data.reps.len());
        let mut elems = Vec::with_capacity(data.reps.len());
        for r in &data.reps {
            elems.push(alg.elem_from_coords(r, q, limits)?);
        }
        reps.push(elems);
    }
    Ok(Cohomology { ranks, reps })
}

/// The cohomology algebra of `alg` through `cutoff`, with basis names
/// `h{q}_{k}` (k starting at 1 within each degree). Requires rank-1
/// cohomology in degree 0 (a connected algebra).
pub fn cohomology_algebra<T: Cdga>(
    alg: &T,
    cutoff: u32,
    limits: &Limits,
) -> Result<CohomologyAlgebra<T::Elem>, Error> {
    if let Some(c) = alg.completeness() {
        if cutoff > c {
            return Err(Error::InsufficientRange {
                needed: cutoff,
                available: c,
            });
        }
    }
    let mut data = Vec::with_capacity(cutoff as usize + 1);
    for q in 0..=cutoff {
        data.push(degree_data(alg, q, limits)?);
    }
    if data[0].reps.len() != 1 {
        return Err(Error::Precondition(format!(
            "degree-0 cohomology must have rank 1, found {}",
            data[0].reps.len()
        )));
    }
    let mut builder = FiniteBuilder::new();
    // builder index and degree per class, plus a representative element each
    let mut degrees: Vec<u32> = vec![0];
    let mut reps: Vec<T::Elem> = vec![alg.elem_from_coords(&data[0].reps[0], 0, limits)?];
    let mut first_index: Vec<usize> = vec![usize::MAX; cutoff as usize + 1];
    first_index[0] = 0;
    for q in 1..=cutoff {
        for k in 0..data[q as usize].reps.len() {
            let idx = builder.add_basis(&format!("h{}_{}", q, k + 1), q)?;
            if k == 0 {
                first_index[q as usize] = idx;
            }
            degrees.push(q);
            reps.push(alg.elem_from_coords(&data[q as usize].reps[k], q, limits)?);
        }
    }
    let total = degrees.len();
    for i in 1..total {
        for j in i..total {
            let s = degrees[i] + degrees[j];
            if s > cutoff {
                continue; // truncated to zero
            }
            let prod = alg.mul_elems(&reps[i], &reps[j])?;
            let cc = class_coords(alg, &data[s as usize], &prod, s, limits)?;
            let mut vec = vec![Rational::zero(); total];
            for (k, c) in cc.iter().enumerate() {
                if !c.is_zero() {
                    vec[first_index[s as usize] + k] = c.clone();
                }
            }
            builder.set_product(i, j, vec);
        }
    }
    let algebra = builder.build()?;
    Ok(CohomologyAlgebra { algebra, reps })
}

/// Convenience: the full coordinate vector of an element's class over all
/// classes of its degree in a [`CohomologyAlgebra`].
pub fn class_in_algebra<T: Cdga>(
    alg: &T,
    ha: &CohomologyAlgebra<T::Elem>,
    a: &T::Elem,
    q: u32,
    limits: &Limits,
) -> Result<FinVec, Error> {
    let data = degree_data(alg, q, limits)?;
    let cc = class_coords(alg, &data, a, q, limits)?;
    let idxs = ha.algebra.degree_indices(q);
    if idxs.len() != cc.len() {
        return Err(Error::DimensionMismatch {
            expected: idxs.len(),
            found: cc.len(),
        });
    }
    let mut out = vec![Rational::zero(); ha.algebra.dim()];
    for (pos, c) in idxs.into_iter().zip(cc) {
        out[pos] = c;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::{rat, Derivation, GenSet, Polynomial};
    use crate::cdga::sullivan::SullivanAlgebra;

    fn s4_model() -> SullivanAlgebra {
        let mut gens = GenSet::new();
        let v = gens.add("v", 4).unwrap();
        let w = gens.add("w", 7).unwrap();
        let mut d = Derivation::new(1);
        d.set(&w, Polynomial::generator(&v).try_pow(2).unwrap())
            .unwrap();
        SullivanAlgebra::new(gens, d).unwrap()
    }

    #[test]
    fn sphere_model_has_one_class() {
        let alg = s4_model();
        let limits = Limits::default();
        let h = cohomology(&alg, 12, &limits).unwrap();
        let want = RankTable::from_pairs(12, &[(0, 1), (4, 1)]);
        assert_eq!(h.ranks, want);
        let v = alg.gens().by_name("v").unwrap().clone();
        assert_eq!(h.reps[4], vec![Polynomial::generator(&v)]);
    }

    #[test]
    fn acyclic_finite_algebra() {
        // <1, x2, y3> with d(x) = y
        let mut b = FiniteBuilder::new();
        let x = b.add_basis("x", 2).unwrap();
        let y = b.add_basis("y", 3).unwrap();
        let mut dy = vec![rat(0); 3];
        dy[y] = rat(1);
        b.set_diff(x, dy);
        let alg = b.build().unwrap();
        let h = cohomology(&alg, 3, &Limits::default()).unwrap();
        assert_eq!(h.ranks, RankTable::from_pairs(3, &[(0, 1)]));
    }

    #[test]
    fn class_coords_detect_exact_and_non_cocycles() {
        let alg = s4_model();
        let limits = Limits::default();
        let v = alg.gens().by_name("v").unwrap().clone();
        let w = alg.gens().by_name("w").unwrap().clone();

        let d4 = degree_data(&alg, 4, &limits).unwrap();
        let three_v = Polynomial::generator(&v).scale(&rat(3));
        assert_eq!(class_coords(&alg, &d4, &three_v, 4, &limits).unwrap(), vec![rat(3)]);

        // v^2 = d(w) is exact: class is zero
        let d8 = degree_data(&alg, 8, &limits).unwrap();
        let v2 = Polynomial::generator(&v).try_pow(2).unwrap();
        assert!(d8.reps.is_empty());
        assert_eq!(class_coords(&alg, &d8, &v2, 8, &limits).unwrap(), vec![]);

        // w is not a cocycle
        let d7 = degree_data(&alg, 7, &limits).unwrap();
        assert!(class_coords(&alg, &d7, &Polynomial::generator(&w), 7, &limits).is_err());
    }

    #[test]
    fn cohomology_algebra_of_sphere_model() {
        let alg = s4_model();
        let ha = cohomology_algebra(&alg, 9, &Limits::default()).unwrap();
        assert_eq!(ha.algebra.dim(), 2);
        assert_eq!(ha.algebra.name(1), "h4_1");
        assert_eq!(ha.algebra.degree(1), 4);
        // [v]^2 = [v^2] = [d(w)] = 0
        assert!(ha.algebra.product_of(1, 1).iter().all(|c| c.is_zero()));
        assert!(ha.algebra.validate().is_ok());
    }

    #[test]
    fn cohomology_algebra_truncates_products_above_cutoff() {
        // the projective-plane table: 1, x(2), x2(4), x*x = x2
        let mut b = FiniteBuilder::new();
        let x = b.add_basis("x", 2).unwrap();
        let x2 = b.add_basis("x2", 4).unwrap();
        let mut e = vec![rat(0); 3];
        e[x2] = rat(1);
        b.set_product(x, x, e);
        let alg = b.build().unwrap();
        assert!(alg.validate().is_ok());

        let ha = cohomology_algebra(&alg, 4, &Limits::default()).unwrap();
        assert_eq!(ha.algebra.dim(), 3);
        // h2_1 * h2_1 = h4_1 survives; h2_1 * h4_1 lands above the cutoff
        let h2 = ha.algebra.index_of("h2_1").unwrap();
        let h4 = ha.algebra.index_of("h4_1").unwrap();
        assert_eq!(ha.algebra.product_of(h2, h2), &ha.algebra.basis_vec(h4));
        assert!(ha.algebra.product_of(h2, h4).iter().all(|c| c.is_zero()));
        assert!(ha.algebra.validate().is_ok());
    }
}
