//! Morphisms out of a free CDGA, and the quasi-isomorphism check.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cdga::algebra::{Cdga, Limits};
use crate::cdga::cohomology::{class_coords, degree_data};
use crate::cdga::sullivan::SullivanAlgebra;
use crate::error::Error;
use crate::gca::{Derivation, GenSet, Generator, Polynomial};
use crate::linalg::QMatrix;

/// An algebra morphism ∧V → T determined by generator values. Values are
/// extended multiplicatively; whether the map commutes with differentials is
/// checked by [`verify_quasi_iso`], not assumed.
pub struct Morphism<T: Cdga> {
    source: Arc<SullivanAlgebra>,
    target: Arc<T>,
    values: BTreeMap<Generator, T::Elem>,
}

impl<T: Cdga> Clone for Morphism<T> {
    fn clone(&self) -> Self {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            values: self.values.clone(),
        }
    }
}

impl<T: Cdga> std::fmt::Debug for Morphism<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut map = f.debug_map();
        for (g, v) in &self.values {
            map.entry(&g.name(), &self.target.display_elem(v));
        }
        map.finish()
    }
}

impl<T: Cdga> Morphism<T> {
    pub fn new(source: Arc<SullivanAlgebra>, target: Arc<T>) -> Self {
        Morphism {
            source,
            target,
            values: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &Arc<SullivanAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<T> {
        &self.target
    }

    /// Assign the image of a source generator.
    pub fn set(&mut self, g: &Generator, value: T::Elem) -> Result<(), Error> {
        if !self.source.gens().contains(g) {
            return Err(Error::UnknownGenerator(g.name().to_string()));
        }
        self.values.insert(g.clone(), value);
        Ok(())
    }

    pub fn value(&self, g: &Generator) -> Option<&T::Elem> {
        self.values.get(g)
    }

    /// Apply the multiplicative extension to a polynomial.
    pub fn apply(&self, p: &Polynomial) -> Result<T::Elem, Error> {
        let t = self.target.as_ref();
        let mut acc = t.zero_elem();
        for (m, c) in p.terms() {
            let mut prod = t.unit_elem();
            for (g, e) in m.factors() {
                let v = self
                    .values
                    .get(g)
                    .ok_or_else(|| Error::MissingValue(g.name().to_string()))?;
                for _ in 0..*e {
                    prod = t.mul_elems(&prod, v)?;
                }
            }
            acc = t.add_elems(&acc, &t.scale_elem(c, &prod));
        }
        Ok(acc)
    }
}

/// Materialize accumulated generators, a differential, and generator values
/// into a fresh algebra/morphism pair sharing one `Arc`. Used by the model
/// constructions, which rebuild after every batch of adjoined generators.
pub(crate) fn assemble_model<T: Cdga>(
    gens: &GenSet,
    diff: &Derivation,
    values: &BTreeMap<Generator, T::Elem>,
    target: &Arc<T>,
    complete_through: Option<u32>,
) -> Result<(Arc<SullivanAlgebra>, Morphism<T>), Error> {
    let mut model = SullivanAlgebra::new(gens.clone(), diff.clone())?;
    if let Some(c) = complete_through {
        model = model.with_complete_through(c);
    }
    let model = Arc::new(model);
    let mut f = Morphism::new(model.clone(), target.clone());
    for (g, v) in values {
        f.set(g, v.clone())?;
    }
    Ok((model, f))
}

/// Outcome of [`verify_quasi_iso`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasiIsoReport {
    Pass,
    /// f(d g) and d(f g) disagree on the named generator.
    ChainMapFailure {
        generator: String,
        f_of_dg: String,
        d_of_fg: String,
    },
    /// The induced map on cohomology fails in the given degree.
    CohomologyFailure { degree: u32, detail: String },
}

impl QuasiIsoReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, QuasiIsoReport::Pass)
    }
}

/// Check that `f` is a map of differential algebras inducing an isomorphism
/// on cohomology in every degree up to `cutoff`. Returns the first failure.
pub fn verify_quasi_iso<T: Cdga>(
    f: &Morphism<T>,
    cutoff: u32,
    limits: &Limits,
) -> Result<QuasiIsoReport, Error> {
    for side in [f.source().completeness(), f.target().completeness()] {
        if let Some(c) = side {
            if cutoff > c {
                return Err(Error::InsufficientRange {
                    needed: cutoff,
                    available: c,
                });
            }
        }
    }
    let source = f.source().as_ref();
    let target = f.target().as_ref();
    for g in source.gens().iter() {
        if g.degree() > cutoff {
            continue;
        }
        let f_of_dg = f.apply(&source.diff().value(g))?;
        let d_of_fg = target.d_elem(&f.apply(&Polynomial::generator(g))?)?;
        if f_of_dg != d_of_fg {
            return Ok(QuasiIsoReport::ChainMapFailure {
                generator: g.name().to_string(),
                f_of_dg: target.display_elem(&f_of_dg),
                d_of_fg: target.display_elem(&d_of_fg),
            });
        }
    }
    for q in 0..=cutoff {
        let src = degree_data(source, q, limits)?;
        let tgt = degree_data(target, q, limits)?;
        if src.reps.len() != tgt.reps.len() {
            return Ok(QuasiIsoReport::CohomologyFailure {
                degree: q,
                detail: format!(
                    "cohomology rank {} in the source but {} in the target",
                    src.reps.len(),
                    tgt.reps.len()
                ),
            });
        }
        let mut cols = Vec::with_capacity(src.reps.len());
        for r in &src.reps {
            let elem = source.elem_from_coords(r, q, limits)?;
            let image = f.apply(&elem)?;
            cols.push(class_coords(target, &tgt, &image, q, limits)?);
        }
        let rank = QMatrix::from_cols(tgt.reps.len(), cols).rank();
        if rank != src.reps.len() {
            return Ok(QuasiIsoReport::CohomologyFailure {
                degree: q,
                detail: format!(
                    "induced map on degree-{} cohomology has rank {}, expected {}",
                    q,
                    rank,
                    src.reps.len()
                ),
            });
        }
    }
    Ok(QuasiIsoReport::Pass)
}
