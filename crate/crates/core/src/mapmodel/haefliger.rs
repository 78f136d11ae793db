//! The Sullivan model of a mapping space Map(X, Y).
//!
//! Inputs are a finite-basis model A of the source (top nonzero degree n) and
//! a free model (∧V, d) of the target, all of whose generators sit in degrees
//! above n. The mapping-space model is free on generators āᵢ⊗v — one per
//! basis element aᵢ of A and generator v of V, of degree |v| − |aᵢ| — and
//! carries the unique differential D making the evaluation map
//!
//! ```text
//!     φ : (∧V, d) → (A, d_A) ⊗ (∧(B⊗V), D),   φ(v) = Σᵢ aᵢ ⊗ (āᵢ⊗v)
//! ```
//!
//! a morphism of differential graded algebras. D is read off basis-element-
//! wise: with Φ = φ(dv) − (d_A⊗1)(φ(v)) expanded as Σᵢ aᵢ ⊗ Pᵢ, the value
//! D(āᵢ⊗v) is (−1)^{|aᵢ|} Pᵢ. Both D² = 0 and the chain-map law are verified
//! on every generator after construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::One;

use crate::cdga::{Cdga, FiniteCdga, Limits, Morphism, SullivanAlgebra};
use crate::error::{Error, Violation};
use crate::gca::{Derivation, GenSet, Generator, Monomial, Rational};
use crate::mapmodel::tensor::{TensorCdga, TensorElem};

/// A mapping-space model together with its evaluation morphism and the two
/// algebras it was built from.
#[derive(Debug, Clone)]
pub struct HaefligerModel {
    model: Arc<SullivanAlgebra>,
    evaluation: Morphism<TensorCdga>,
    source_a: Arc<FiniteCdga>,
    source_v: Arc<SullivanAlgebra>,
    hypotheses_met: bool,
    components: BTreeMap<Generator, (usize, Generator)>,
    by_pair: BTreeMap<(usize, u32), Generator>,
}

impl HaefligerModel {
    /// The free model of the mapping space.
    pub fn model(&self) -> &Arc<SullivanAlgebra> {
        &self.model
    }

    /// The evaluation map φ from the target model into A ⊗ model.
    pub fn evaluation(&self) -> &Morphism<TensorCdga> {
        &self.evaluation
    }

    pub fn source_a(&self) -> &Arc<FiniteCdga> {
        &self.source_a
    }

    pub fn source_v(&self) -> &Arc<SullivanAlgebra> {
        &self.source_v
    }

    /// False when the source is the unit algebra alone; the construction then
    /// degenerates to a copy of the target model.
    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses_met
    }

    /// The model generator āᵢ⊗v for basis index i and target generator v.
    pub fn generator_for(&self, i: usize, v: &Generator) -> Option<&Generator> {
        self.by_pair.get(&(i, v.ordinal()))
    }

    /// The pair (basis index, target generator) a model generator came from.
    pub fn component_of(&self, g: &Generator) -> Option<(usize, &Generator)> {
        self.components.get(g).map(|(i, v)| (*i, v))
    }
}

/// Build the mapping-space model of Map(X, Y) from a finite model A of X and
/// a free model of Y, with all differentials verified.
///
/// The target model must be complete through `cutoff + n` (n the top degree
/// of A) so that every model degree through `cutoff` is fully present.
pub fn haefliger_model(
    a: &Arc<FiniteCdga>,
    yv: &Arc<SullivanAlgebra>,
    cutoff: u32,
    _limits: &Limits,
) -> Result<HaefligerModel, Error> {
    let n = a.top_degree();
    let hypotheses_met = a.dim() > 1;
    for v in yv.gens().iter() {
        if v.degree() <= n {
            return Err(Error::Precondition(format!(
                "every target generator must sit above the top degree {} of the source; `{}` has degree {}",
                n,
                v.name(),
                v.degree()
            )));
        }
    }
    if let Some(c) = yv.completeness() {
        if c < cutoff + n {
            return Err(Error::InsufficientRange {
                needed: cutoff + n,
                available: c,
            });
        }
    }

    // One generator per (basis element, target generator), in target-major
    // order so ordinals group by target generator.
    let mut gens = GenSet::new();
    let mut components = BTreeMap::new();
    let mut by_pair = BTreeMap::new();
    for v in yv.gens().iter() {
        for i in 0..a.dim() {
            let name = format!("{}⊗{}", a.name(i), v.name());
            let g = gens.add(&name, v.degree() - a.degree(i))?;
            components.insert(g.clone(), (i, v.clone()));
            by_pair.insert((i, v.ordinal()), g);
        }
    }

    // φ(v) = Σᵢ aᵢ ⊗ (āᵢ⊗v); the values never involve D, so they are fixed
    // before the differential is known.
    let mut phi_values: BTreeMap<Generator, TensorElem> = BTreeMap::new();
    for v in yv.gens().iter() {
        let mut val = TensorElem::zero();
        for i in 0..a.dim() {
            let g = &by_pair[&(i, v.ordinal())];
            val.push(i, Monomial::generator(g), Rational::one());
        }
        phi_values.insert(v.clone(), val);
    }

    // Read D off Φ = φ(dv) − (d_A⊗1)(φ(v)) inside a provisional tensor
    // algebra whose free factor still has zero differential: Φ never uses D.
    let scratch = Arc::new(SullivanAlgebra::new(gens.clone(), Derivation::new(1))?);
    let tensor0 = Arc::new(TensorCdga::new(a.clone(), scratch));
    let mut phi0 = Morphism::new(yv.clone(), tensor0.clone());
    for (v, val) in &phi_values {
        phi0.set(v, val.clone())?;
    }
    let mut diff = Derivation::new(1);
    for v in yv.gens().iter() {
        let phi_dv = phi0.apply(&yv.diff().value(v))?;
        let correction = tensor0.left_diff(&phi_values[v]);
        let big_phi = tensor0.sub_elems(&phi_dv, &correction);
        for i in 0..a.dim() {
            let mut p = big_phi.left_component(i);
            if p.is_zero() {
                continue;
            }
            if a.degree(i) % 2 == 1 {
                p = p.neg();
            }
            diff.set(&by_pair[&(i, v.ordinal())], p)?;
        }
    }

    let mut model = SullivanAlgebra::new(gens, diff)?;
    if let Some(c) = yv.completeness() {
        model = model.with_complete_through(c - n);
    }
    let model = Arc::new(model);
    model.validate()?;

    // Final chain-map verification on every target generator.
    let tensor = Arc::new(TensorCdga::new(a.clone(), model.clone()));
    let mut evaluation = Morphism::new(yv.clone(), tensor.clone());
    for (v, val) in &phi_values {
        evaluation.set(v, val.clone())?;
    }
    for v in yv.gens().iter() {
        let lhs = evaluation.apply(&yv.diff().value(v))?;
        let rhs = tensor.d_elem(&phi_values[v])?;
        if lhs != rhs {
            return Err(Error::Invalid(Violation {
                law: "chain_map",
                witness: format!(
                    "the evaluation map sends d({}) to {} but the differential of its image is {}",
                    v.name(),
                    tensor.display_elem(&lhs),
                    tensor.display_elem(&rhs)
                ),
            }));
        }
    }

    Ok(HaefligerModel {
        model,
        evaluation,
        source_a: a.clone(),
        source_v: yv.clone(),
        hypotheses_met,
        components,
        by_pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::FiniteBuilder;
    use crate::gca::{rat, Polynomial};

    fn odd_sphere_source(degree: u32) -> Arc<FiniteCdga> {
        let mut b = FiniteBuilder::new();
        b.add_basis("e", degree).unwrap();
        Arc::new(b.build().unwrap())
    }

    fn even_sphere_target() -> Arc<SullivanAlgebra> {
        let mut gens = GenSet::new();
        let v = gens.add("v", 4).unwrap();
        let w = gens.add("w", 7).unwrap();
        let mut d = Derivation::new(1);
        d.set(&w, Polynomial::generator(&v).try_pow(2).unwrap()).unwrap();
        Arc::new(SullivanAlgebra::new(gens, d).unwrap())
    }

    #[test]
    fn sphere_to_sphere_model_has_the_expected_differential() {
        let a = odd_sphere_source(3);
        let yv = even_sphere_target();
        let h = haefliger_model(&a, &yv, 12, &Limits::default()).unwrap();
        assert!(h.hypotheses_met());
        let names: Vec<&str> = h.model().gens().iter().map(|g| g.name()).collect();
        assert_eq!(names, ["1⊗v", "e⊗v", "1⊗w", "e⊗w"]);
        let degrees: Vec<u32> = h.model().gens().iter().map(|g| g.degree()).collect();
        assert_eq!(degrees, [4, 1, 7, 4]);

        let v = yv.gens().by_name("v").unwrap().clone();
        let w = yv.gens().by_name("w").unwrap().clone();
        let u4 = h.generator_for(0, &v).unwrap().clone();
        let z1 = h.generator_for(1, &v).unwrap().clone();
        let u7 = h.generator_for(0, &w).unwrap().clone();
        let z4 = h.generator_for(1, &w).unwrap().clone();

        let d = h.model().diff();
        assert!(d.value(&u4).is_zero());
        assert!(d.value(&z1).is_zero());
        assert_eq!(d.value(&u7), Polynomial::generator(&u4).try_pow(2).unwrap());
        let expected = Polynomial::generator(&u4)
            .try_mul(&Polynomial::generator(&z1))
            .unwrap()
            .scale(&rat(-2));
        assert_eq!(d.value(&z4), expected);
        assert_eq!(h.model().complete_through(), None);
        assert_eq!(h.component_of(&z4), Some((1, &w)));
    }

    #[test]
    fn collapsing_the_source_to_a_point_returns_the_target_model() {
        let a = Arc::new(FiniteBuilder::new().build().unwrap());
        let yv = even_sphere_target();
        let h = haefliger_model(&a, &yv, 12, &Limits::default()).unwrap();
        assert!(!h.hypotheses_met());
        let names: Vec<&str> = h.model().gens().iter().map(|g| g.name()).collect();
        assert_eq!(names, ["1⊗v", "1⊗w"]);
        let w1 = h.model().gens().by_name("1⊗w").unwrap().clone();
        let v1 = h.model().gens().by_name("1⊗v").unwrap().clone();
        assert_eq!(
            h.model().diff().value(&w1),
            Polynomial::generator(&v1).try_pow(2).unwrap()
        );
    }

    #[test]
    fn rejects_target_generators_at_or_below_the_source_top_degree() {
        let a = odd_sphere_source(3);
        let mut gens = GenSet::new();
        gens.add("v", 3).unwrap();
        gens.add("w", 5).unwrap();
        let yv = Arc::new(SullivanAlgebra::new(gens, Derivation::new(1)).unwrap());
        match haefliger_model(&a, &yv, 8, &Limits::default()) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("`v` has degree 3")),
            other => panic!("expected a precondition error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn reports_the_range_needed_for_the_cutoff() {
        let a = odd_sphere_source(3);
        let mut gens = GenSet::new();
        gens.add("v", 4).unwrap();
        let yv = Arc::new(
            SullivanAlgebra::new(gens, Derivation::new(1))
                .unwrap()
                .with_complete_through(8),
        );
        match haefliger_model(&a, &yv, 9, &Limits::default()) {
            Err(Error::InsufficientRange { needed, available }) => {
                assert_eq!((needed, available), (12, 8));
            }
            other => panic!("expected a range error, got {:?}", other.map(|_| ())),
        }
        assert!(haefliger_model(&a, &yv, 5, &Limits::default()).is_ok());
    }
}
