//! Homotopy and Hurewicz ranks read off a free model.

use num::Zero;

use crate::cdga::algebra::{Cdga, Limits};
use crate::cdga::cohomology::degree_data;
use crate::cdga::rank::RankTable;
use crate::cdga::sullivan::SullivanAlgebra;
use crate::error::Error;
use crate::gca::{Generator, Polynomial, Rational};
use crate::linalg::{QMatrix, SpanBuilder};

/// Coordinates of the word-length-1 part of `p` over the generator list.
pub(crate) fn linear_gen_coords(p: &Polynomial, gens: &[Generator]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); gens.len()];
    let lp = p.linear_part();
    for (m, c) in lp.terms() {
        let (g, _) = &m.factors()[0];
        if let Some(pos) = gens.iter().position(|h| h == g) {
            out[pos] = c.clone();
        }
    }
    out
}

/// Matrix of the linear part of the differential from degree-q generators to
/// degree-(q+1) generators.
pub(crate) fn linear_diff_matrix(alg: &SullivanAlgebra, q: u32) -> QMatrix {
    let from = alg.gens().of_degree(q);
    let to = alg.gens().of_degree(q + 1);
    let cols = from
        .iter()
        .map(|g| linear_gen_coords(&alg.diff().value(g), &to))
        .collect();
    QMatrix::from_cols(to.len(), cols)
}

/// Ranks of the homotopy read off the model: the cohomology of the
/// generator space under the linear part of the differential. On a minimal
/// model this is simply the generator count per degree; on a non-minimal
/// model the linear part cancels generator pairs.
pub fn homotopy_ranks(alg: &SullivanAlgebra, cutoff: u32) -> Result<RankTable, Error> {
    if let Some(c) = alg.complete_through() {
        if cutoff > c {
            return Err(Error::InsufficientRange {
                needed: cutoff,
                available: c,
            });
        }
    }
    let mut ranks = RankTable::zeros(cutoff);
    let mut prev_rank = 0usize;
    for q in 1..=cutoff {
        let dim = alg.gens().of_degree(q).len();
        let r = linear_diff_matrix(alg, q).rank();
        let rank = (dim - r).checked_sub(prev_rank).ok_or_else(|| {
            Error::Precondition(format!(
                "the linear part of the differential is not a complex at degree {}",
                q
            ))
        })?;
        ranks.set(q, rank);
        prev_rank = r;
    }
    Ok(ranks)
}

/// Rank of the map sending a cohomology class to the linear part of its
/// representative, per degree: the part of cohomology visible in the
/// generator space.
pub fn hurewicz_ranks(
    alg: &SullivanAlgebra,
    cutoff: u32,
    limits: &Limits,
) -> Result<RankTable, Error> {
    if let Some(c) = alg.complete_through() {
        if cutoff > c {
            return Err(Error::InsufficientRange {
                needed: cutoff,
                available: c,
            });
        }
    }
    let mut ranks = RankTable::zeros(cutoff);
    for q in 1..=cutoff {
        let gens_q = alg.gens().of_degree(q);
        let mut span = SpanBuilder::new(gens_q.len());
        for g in alg.gens().of_degree(q - 1) {
            span.insert(&linear_gen_coords(&alg.diff().value(&g), &gens_q));
        }
        let base = span.rank();
        let data = degree_data(alg, q, limits)?;
        for r in &data.reps {
            let elem = alg.elem_from_coords(r, q, limits)?;
            span.insert(&linear_gen_coords(&elem, &gens_q));
        }
        ranks.set(q, span.rank() - base);
    }
    Ok(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::{Derivation, GenSet};

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
    fn minimal_model_counts_generators() {
        let alg = s4_model();
        let ranks = homotopy_ranks(&alg, 10).unwrap();
        assert_eq!(ranks, RankTable::from_pairs(10, &[(4, 1), (7, 1)]));
    }

    #[test]
    fn hurewicz_sees_only_the_bottom_class() {
        let alg = s4_model();
        let ranks = hurewicz_ranks(&alg, 10, &Limits::default()).unwrap();
        assert_eq!(ranks, RankTable::from_pairs(10, &[(4, 1)]));
    }

    #[test]
    fn linear_pairs_cancel() {
        // ∧(x2, z3; dx = z) is contractible
        let mut gens = GenSet::new();
        let x = gens.add("x", 2).unwrap();
        let z = gens.add("z", 3).unwrap();
        let mut d = Derivation::new(1);
        d.set(&x, Polynomial::generator(&z)).unwrap();
        let alg = SullivanAlgebra::new(gens, d).unwrap();
        assert_eq!(homotopy_ranks(&alg, 6).unwrap(), RankTable::zeros(6));
        assert_eq!(
            hurewicz_ranks(&alg, 6, &Limits::default()).unwrap(),
            RankTable::zeros(6)
        );
    }

    #[test]
    fn completeness_is_enforced() {
        let alg = s4_model().with_complete_through(5);
        assert_eq!(
            homotopy_ranks(&alg, 6),
            Err(Error::InsufficientRange {
                needed: 6,
                available: 5
            })
        );
    }
}
