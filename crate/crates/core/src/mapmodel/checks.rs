//! Rank-level checks on mapping-space models: the homotopy-group formula,
//! vanishing of the Hurewicz ranks above the target dimension, and the
//! Eilenberg-MacLane splitting of maps into a rational point of a single
//! degree.

use std::sync::Arc;

use crate::cdga::{
    cohomology, degree_data, hurewicz_ranks, Cdga, FiniteCdga, Limits, RankTable,
    SullivanAlgebra,
};
use crate::error::Error;
use crate::gca::{Derivation, GenSet, Generator, Monomial, Polynomial, Rational};
use crate::linalg::SpanBuilder;
use crate::mapmodel::haefliger::{haefliger_model, HaefligerModel};

/// Rational homotopy ranks of a mapping space from the homology of the source
/// and the homotopy of the target: rank in degree q is Σᵢ HX[i]·piY[q+i].
///
/// `piY` must extend far enough that every summand through the cutoff is
/// covered, i.e. through `cutoff + top_nonzero(HX)`.
pub fn homotopy_formula(
    hx: &RankTable,
    pi_y: &RankTable,
    cutoff: u32,
) -> Result<RankTable, Error> {
    let mut out = RankTable::zeros(cutoff);
    let Some(top) = hx.top_nonzero() else {
        return Ok(out);
    };
    if pi_y.cutoff() < cutoff + top {
        return Err(Error::InsufficientRange {
            needed: cutoff + top,
            available: pi_y.cutoff(),
        });
    }
    for q in 1..=cutoff {
        let mut rank = 0;
        for i in 0..=top {
            rank += hx.rank(i) * pi_y.rank(q + i);
        }
        out.set(q, rank);
    }
    Ok(out)
}

/// Outcome of the Hurewicz vanishing check: either every rank above the
/// target dimension is zero, or a witness class whose linear part survives.
#[derive(Debug, Clone)]
pub enum VanishingOutcome {
    /// All ranks above the target dimension vanish; the full table is kept
    /// for reporting.
    Pass(RankTable),
    Fail {
        degree: u32,
        witness: String,
    },
}

impl VanishingOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, VanishingOutcome::Pass(_))
    }
}

/// Check that the Hurewicz ranks of a mapping-space model vanish in every
/// degree above `n_dim`, the top nonzero cohomology degree of the target.
pub fn hurewicz_vanishing_check(
    h: &HaefligerModel,
    n_dim: u32,
    cutoff: u32,
    limits: &Limits,
) -> Result<VanishingOutcome, Error> {
    if cutoff <= n_dim {
        return Err(Error::Precondition(format!(
            "the cutoff {} must exceed the target dimension {}",
            cutoff, n_dim
        )));
    }
    let model = h.model();
    let ranks = hurewicz_ranks(model, cutoff, limits)?;
    for q in n_dim + 1..=cutoff {
        if ranks.rank(q) == 0 {
            continue;
        }
        // Recover a witness: a cohomology class whose linear part is not
        // already hit by the differential of the next-lower generators.
        let gens_q = model.gens().of_degree(q);
        let mut span = SpanBuilder::new(gens_q.len());
        for g in model.gens().of_degree(q - 1) {
            span.insert(&linear_coords(&model.diff().value(&g), &gens_q));
        }
        let data = degree_data(&**model, q, limits)?;
        for rep in &data.reps {
            let elem = model.elem_from_coords(rep, q, limits)?;
            if span.insert(&linear_coords(&elem, &gens_q)).is_some() {
                return Ok(VanishingOutcome::Fail {
                    degree: q,
                    witness: format!("{}", elem),
                });
            }
        }
        unreachable!("a positive rank always produces a witness");
    }
    Ok(VanishingOutcome::Pass(ranks))
}

fn linear_coords(p: &Polynomial, gens: &[Generator]) -> Vec<Rational> {
    let linear = p.linear_part();
    gens.iter()
        .map(|g| linear.coeff(&Monomial::generator(g)))
        .collect()
}

/// Comparison of the cohomology of a mapping-space model against the free
/// graded-commutative algebra predicted by the Eilenberg-MacLane splitting.
#[derive(Debug, Clone)]
pub struct ThomOutcome {
    /// Cohomology ranks of the constructed model.
    pub computed: RankTable,
    /// Ranks of the free algebra on one generator of degree r−i per
    /// degree-i cohomology class of the source.
    pub expected: RankTable,
    /// First degree where the two tables disagree, if any.
    pub mismatch: Option<u32>,
}

impl ThomOutcome {
    pub fn is_pass(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Map the source into a rational point of degree r (a free line with zero
/// differential) and compare the model's cohomology with the product of
/// Eilenberg-MacLane spaces it must split into.
pub fn thom_splitting_check(
    a: &Arc<FiniteCdga>,
    r: u32,
    cutoff: u32,
    limits: &Limits,
) -> Result<ThomOutcome, Error> {
    let top = a.top_degree();
    if r <= top {
        return Err(Error::Precondition(format!(
            "the target degree {} must exceed the top degree {} of the source",
            r, top
        )));
    }
    let mut gens = GenSet::new();
    gens.add("v", r)?;
    let yv = Arc::new(SullivanAlgebra::new(gens, Derivation::new(1))?);
    let h = haefliger_model(a, &yv, cutoff, limits)?;
    let computed = cohomology(&**h.model(), cutoff, limits)?.ranks;

    let ha = cohomology(&**a, top, limits)?;
    let mut free_gens = GenSet::new();
    for i in 0..=top {
        for j in 1..=ha.ranks.rank(i) {
            free_gens.add(&format!("k{}_{}", r - i, j), r - i)?;
        }
    }
    let free = SullivanAlgebra::new(free_gens, Derivation::new(1))?;
    let mut expected_ranks = Vec::with_capacity(cutoff as usize + 1);
    for q in 0..=cutoff {
        expected_ranks.push(free.monomial_basis(q, limits)?.len());
    }
    let expected = RankTable::new(cutoff, expected_ranks);
    let mismatch = (0..=cutoff).find(|&q| computed.rank(q) != expected.rank(q));
    Ok(ThomOutcome {
        computed,
        expected,
        mismatch,
    })
}
