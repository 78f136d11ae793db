//! Structural invariants of the free-model constructions: minimality,
//! decomposable differentials, verified quasi-isomorphisms, and the purity of
//! the weight grading on bigraded models.

use std::sync::Arc;

use num::Zero;

use sullivan::cdga::{
    bigraded_model, cohomology, minimal_model, verify_quasi_iso, weight_cohomology_ranks,
    FiniteBuilder, FiniteCdga, Limits, QuasiIsoReport,
};
use sullivan::gca::rat;

fn sphere_cohomology(n: u32) -> Arc<FiniteCdga> {
    let mut b = FiniteBuilder::new();
    b.add_basis("e", n).unwrap();
    Arc::new(b.build().unwrap())
}

fn cp2_cohomology() -> Arc<FiniteCdga> {
    let mut b = FiniteBuilder::new();
    let x = b.add_basis("x", 2).unwrap();
    let x2 = b.add_basis("x2", 4).unwrap();
    let mut e = vec![rat(0); 3];
    e[x2] = rat(1);
    b.set_product(x, x, e);
    Arc::new(b.build().unwrap())
}

fn wedge_of_two_spheres() -> Arc<FiniteCdga> {
    // two degree-2 classes, all products zero
    let mut b = FiniteBuilder::new();
    b.add_basis("s", 2).unwrap();
    b.add_basis("t", 2).unwrap();
    Arc::new(b.build().unwrap())
}

fn contractible_pair() -> Arc<FiniteCdga> {
    let mut b = FiniteBuilder::new();
    let x = b.add_basis("x", 2).unwrap();
    let y = b.add_basis("y", 3).unwrap();
    let mut e = vec![rat(0); 3];
    e[y] = rat(1);
    b.set_diff(x, e);
    Arc::new(b.build().unwrap())
}

#[test]
fn minimal_models_are_minimal_and_quasi_isomorphic() {
    let limits = Limits::default();
    let cutoff = 8;
    for h in [
        sphere_cohomology(3),
        sphere_cohomology(4),
        sphere_cohomology(6),
        cp2_cohomology(),
        wedge_of_two_spheres(),
    ] {
        let (model, f) = minimal_model(&h, cutoff, &limits).unwrap();
        assert!(model.is_minimal());
        // minimality spelled out: every differential value is decomposable
        for g in model.gens().iter() {
            let dv = model.diff().value(g);
            assert_eq!(dv, dv.word_length_at_least(2));
        }
        assert_eq!(model.complete_through(), Some(cutoff));
        let report = verify_quasi_iso(&f, cutoff, &limits).unwrap();
        assert_eq!(report, QuasiIsoReport::Pass);
    }
}

#[test]
fn sphere_models_have_the_classical_generators() {
    let limits = Limits::default();
    // odd sphere: one generator; even sphere: the class and its square-killer
    let (odd, _) = minimal_model(&sphere_cohomology(3), 9, &limits).unwrap();
    assert_eq!(
        odd.gens().iter().map(|g| g.degree()).collect::<Vec<_>>(),
        vec![3]
    );
    let (even, _) = minimal_model(&sphere_cohomology(4), 10, &limits).unwrap();
    assert_eq!(
        even.gens().iter().map(|g| g.degree()).collect::<Vec<_>>(),
        vec![4, 7]
    );
    let w = even.gens().of_degree(7)[0].clone();
    let v = even.gens().of_degree(4)[0].clone();
    let dv = even.diff().value(&w);
    // dw is a nonzero multiple of v^2
    let v2 = sullivan::gca::Polynomial::generator(&v).try_pow(2).unwrap();
    let c = dv.coeff(v2.terms().next().unwrap().0);
    assert!(!c.is_zero());
    assert_eq!(dv, v2.scale(&c));
}

#[test]
fn wedge_model_grows_relation_killers_in_degree_three() {
    let limits = Limits::default();
    let (model, _) = minimal_model(&wedge_of_two_spheres(), 6, &limits).unwrap();
    // two classes in degree 2; their three pairwise products must die
    assert_eq!(model.gens().of_degree(2).len(), 2);
    assert_eq!(model.gens().of_degree(3).len(), 3);
    // and the model keeps matching the wedge cohomology in low degrees
    let h = cohomology(&*model, 6, &limits).unwrap();
    assert_eq!(h.ranks.rank(2), 2);
    assert_eq!(h.ranks.rank(3), 0);
    assert_eq!(h.ranks.rank(4), 0);
}

#[test]
fn model_of_an_acyclic_algebra_is_free_on_nothing() {
    let limits = Limits::default();
    let (model, f) = minimal_model(&contractible_pair(), 8, &limits).unwrap();
    assert_eq!(model.gens().iter().count(), 0);
    assert_eq!(
        verify_quasi_iso(&f, 8, &limits).unwrap(),
        QuasiIsoReport::Pass
    );
}

#[test]
fn minimal_model_rejects_nonconnected_input() {
    // two units (a second degree-0 class) break the connectivity requirement
    let mut b = FiniteBuilder::new();
    b.add_basis("p", 1).unwrap();
    let h = Arc::new(b.build().unwrap());
    assert!(matches!(
        minimal_model(&h, 4, &Limits::default()),
        Err(sullivan::Error::Precondition(_))
    ));
}

#[test]
fn bigraded_models_have_pure_weight_cohomology() {
    let limits = Limits::default();
    let cutoff = 8;
    for h in [
        sphere_cohomology(4),
        cp2_cohomology(),
        wedge_of_two_spheres(),
    ] {
        let model = bigraded_model(&h, cutoff, &limits).unwrap();
        // every generator is weighted and the differential drops the weight
        // by exactly one
        for g in model.gens().iter() {
            let w = g.lower().expect("bigraded generators carry weights");
            let dv = model.diff().value(g);
            for (m, _) in dv.terms() {
                assert_eq!(m.lower_weight(), w.saturating_sub(1));
            }
        }
        // weight-p cohomology vanishes for p >= 1 (purity)
        for p in 1..=3 {
            let table = weight_cohomology_ranks(&model, p, cutoff, &limits).unwrap();
            assert!(
                table.iter().all(|(_, r)| r == 0),
                "weight-{} cohomology should vanish, found {:?}",
                p,
                table.ranks()
            );
        }
        // while the total cohomology still matches the input
        let total = cohomology(&*model, cutoff, &limits).unwrap();
        for q in 0..=cutoff {
            assert_eq!(total.ranks.rank(q), h.degree_indices(q).len());
        }
    }
}
