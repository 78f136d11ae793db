//! Formality witnesses for linear differentials, and triple (Massey-style)
//! product obstructions.

use std::sync::Arc;

use num::{One, Zero};

use crate::cdga::algebra::{Cdga, Limits};
use crate::cdga::cohomology::{class_coords, degree_data, DegreeData};
use crate::cdga::homotopy::linear_diff_matrix;
use crate::cdga::morphism::Morphism;
use crate::cdga::sullivan::SullivanAlgebra;
use crate::error::Error;
use crate::gca::{Derivation, GenSet, Polynomial, Rational};
use crate::linalg::{complement, QMatrix, SpanBuilder};

/// For a free algebra whose differential is linear on generators, build the
/// quasi-isomorphism onto its cohomology presented as a free algebra with
/// zero differential on generators `h{degree}_{counter}`.
///
/// Per degree the generator space splits into harmonic generators (a
/// complement of the image inside the kernel of the linear differential),
/// the image itself, and a complement of the kernel; the witness projects
/// onto the harmonic part. The target inherits the source's completeness
/// marker.
pub fn formality_witness_linear(
    alg: &Arc<SullivanAlgebra>,
) -> Result<Morphism<SullivanAlgebra>, Error> {
    if !alg.has_linear_differential() {
        return Err(Error::Precondition(
            "the differential must be linear on generators".to_string(),
        ));
    }
    let mut tgens = GenSet::new();
    let mut assignments = Vec::new();
    for q in 1..=alg.gens().max_degree() {
        let gens_q = alg.gens().of_degree(q);
        if gens_q.is_empty() {
            continue;
        }
        let n = gens_q.len();
        let kernel = linear_diff_matrix(alg, q).kernel_basis();
        let image: Vec<Vec<Rational>> = if q == 1 {
            Vec::new()
        } else {
            let prev = linear_diff_matrix(alg, q - 1);
            (0..prev.cols).map(|j| prev.col(j)).collect()
        };
        let identity: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::one();
                e
            })
            .collect();
        let harmonic = complement(n, &image, &kernel);
        let closure = complement(n, &kernel, &identity);
        let mut hs = Vec::with_capacity(harmonic.len());
        for j in 0..harmonic.len() {
            hs.push(tgens.add(&format!("h{}_{}", q, j + 1), q)?);
        }
        let mut cols = harmonic.clone();
        cols.extend(image.iter().cloned());
        cols.extend(closure.iter().cloned());
        let m = QMatrix::from_cols(n, cols);
        for (gi, g) in gens_q.iter().enumerate() {
            let mut e = vec![Rational::zero(); n];
            e[gi] = Rational::one();
            let x = m.solve(&e).ok_or_else(|| {
                Error::Precondition(format!(
                    "generator space of degree {} does not split",
                    q
                ))
            })?;
            let mut val = Polynomial::zero();
            for (j, h) in hs.iter().enumerate() {
                if !x[j].is_zero() {
                    val = val.add(&Polynomial::generator(h).scale(&x[j]));
                }
            }
            assignments.push((g.clone(), val));
        }
    }
    let mut target = SullivanAlgebra::new(tgens, Derivation::new(1))?;
    if let Some(c) = alg.complete_through() {
        target = target.with_complete_through(c);
    }
    let target = Arc::new(target);
    let mut f = Morphism::new(alg.clone(), target);
    for (g, v) in assignments {
        f.set(&g, v)?;
    }
    Ok(f)
}

/// A triple product ⟨[x],[y],[z]⟩: one representative, its class, and the
/// indeterminacy subspace [x]·H + H·[z] in class coordinates.
#[derive(Debug, Clone)]
pub struct MasseyResult<E> {
    pub representative: E,
    pub class: Vec<Rational>,
    pub indeterminacy: Vec<Vec<Rational>>,
    pub nonzero_mod_indeterminacy: bool,
}

/// A nonzero triple product found by [`massey_scan`].
#[derive(Debug, Clone)]
pub struct MasseyWitness<E> {
    pub degrees: (u32, u32, u32),
    pub x: E,
    pub y: E,
    pub z: E,
    pub result: MasseyResult<E>,
}

/// The triple product ⟨[x],[y],[z]⟩ of cocycles with exact products x·y and
/// y·z: with d(a) = x·y and d(b) = y·z, the representative is
/// a·z − (−1)^{|x|} x·b, well-defined up to [x]·H^{|y|+|z|−1} + H^{|x|+|y|−1}·[z].
pub fn triple_massey<T: Cdga>(
    alg: &T,
    x: &T::Elem,
    qx: u32,
    y: &T::Elem,
    qy: u32,
    z: &T::Elem,
    qz: u32,
    limits: &Limits,
) -> Result<MasseyResult<T::Elem>, Error> {
    let qm = qx + qy + qz - 1;
    if let Some(c) = alg.completeness() {
        if qm > c {
            return Err(Error::InsufficientRange {
                needed: qm,
                available: c,
            });
        }
    }
    for (e, q, name) in [(x, qx, "x"), (y, qy, "y"), (z, qz, "z")] {
        alg.coords_in_degree(e, q, limits)?;
        if alg.d_elem(e)? != alg.zero_elem() {
            return Err(Error::Precondition(format!(
                "{} = {} is not a cocycle",
                name,
                alg.display_elem(e)
            )));
        }
    }
    let a = primitive_of(alg, &alg.mul_elems(x, y)?, qx + qy, limits, "x*y")?;
    let b = primitive_of(alg, &alg.mul_elems(y, z)?, qy + qz, limits, "y*z")?;
    let az = alg.mul_elems(&a, z)?;
    let xb = alg.mul_elems(x, &b)?;
    // the second summand carries -(-1)^{|x|}
    let sign = if qx % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    };
    let m = alg.add_elems(&az, &alg.scale_elem(&sign, &xb));
    debug_assert!(alg.d_elem(&m)? == alg.zero_elem());
    let data = degree_data(alg, qm, limits)?;
    let class = class_coords(alg, &data, &m, qm, limits)?;
    let mut span = SpanBuilder::new(data.reps.len());
    let mut indeterminacy = Vec::new();
    let mut absorb = |products: Vec<Vec<Rational>>| {
        for cc in products {
            if let Some(res) = span.insert(&cc) {
                indeterminacy.push(res);
            }
        }
    };
    absorb(classes_of_products(alg, &data, qm, x, qy + qz - 1, true, limits)?);
    absorb(classes_of_products(alg, &data, qm, z, qx + qy - 1, false, limits)?);
    let nonzero_mod_indeterminacy = span.insert(&class).is_some();
    Ok(MasseyResult {
        representative: m,
        class,
        indeterminacy,
        nonzero_mod_indeterminacy,
    })
}

/// Classes of fixed·H^q (or H^q·fixed when `left` is false) in the class
/// coordinates of degree `qm`.
fn classes_of_products<T: Cdga>(
    alg: &T,
    data_m: &DegreeData<T::Elem>,
    qm: u32,
    fixed: &T::Elem,
    q: u32,
    left: bool,
    limits: &Limits,
) -> Result<Vec<Vec<Rational>>, Error> {
    let data = degree_data(alg, q, limits)?;
    let mut out = Vec::with_capacity(data.reps.len());
    for r in &data.reps {
        let u = alg.elem_from_coords(r, q, limits)?;
        let p = if left {
            alg.mul_elems(fixed, &u)?
        } else {
            alg.mul_elems(&u, fixed)?
        };
        out.push(class_coords(alg, data_m, &p, qm, limits)?);
    }
    Ok(out)
}

/// The echelon primitive of an exact degree-`qw` element.
fn primitive_of<T: Cdga>(
    alg: &T,
    w: &T::Elem,
    qw: u32,
    limits: &Limits,
    label: &str,
) -> Result<T::Elem, Error> {
    let prev = alg.degree_basis(qw - 1, limits)?;
    let mut cols = Vec::with_capacity(prev.len());
    for e in &prev {
        cols.push(alg.coords_in_degree(&alg.d_elem(e)?, qw, limits)?);
    }
    let b = alg.coords_in_degree(w, qw, limits)?;
    let sol = QMatrix::from_cols(b.len(), cols).solve(&b).ok_or_else(|| {
        Error::Precondition(format!("{} = {} is not exact", label, alg.display_elem(w)))
    })?;
    alg.elem_from_coords(&sol, qw - 1, limits)
}

/// Scan all triples of class representatives in degrees 1..=cutoff (total
/// degree within the cutoff, all loops ascending) for a triple product that
/// is nonzero modulo its indeterminacy. Returns the first hit.
pub fn massey_scan<T: Cdga>(
    alg: &T,
    cutoff: u32,
    limits: &Limits,
) -> Result<Option<MasseyWitness<T::Elem>>, Error> {
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
    let rep_elem = |q: u32, i: usize| -> Result<T::Elem, Error> {
        alg.elem_from_coords(&data[q as usize].reps[i], q, limits)
    };
    for qa in 1..=cutoff {
        for qb in 1..=cutoff {
            for qc in 1..=cutoff {
                let qm = qa + qb + qc - 1;
                if qm > cutoff {
                    continue;
                }
                for i in 0..data[qa as usize].reps.len() {
                    let x = rep_elem(qa, i)?;
                    for j in 0..data[qb as usize].reps.len() {
                        let y = rep_elem(qb, j)?;
                        let xy = alg.mul_elems(&x, &y)?;
                        let cxy =
                            class_coords(alg, &data[(qa + qb) as usize], &xy, qa + qb, limits)?;
                        if cxy.iter().any(|c| !c.is_zero()) {
                            continue;
                        }
                        for k in 0..data[qc as usize].reps.len() {
                            let z = rep_elem(qc, k)?;
                            let yz = alg.mul_elems(&y, &z)?;
                            let cyz = class_coords(
                                alg,
                                &data[(qb + qc) as usize],
                                &yz,
                                qb + qc,
                                limits,
                            )?;
                            if cyz.iter().any(|c| !c.is_zero()) {
                                continue;
                            }
                            let result = triple_massey(alg, &x, qa, &y, qb, &z, qc, limits)?;
                            if result.nonzero_mod_indeterminacy {
                                return Ok(Some(MasseyWitness {
                                    degrees: (qa, qb, qc),
                                    x,
                                    y,
                                    z,
                                    result,
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}
