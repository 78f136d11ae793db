//! Free graded-commutative algebras with a degree +1 differential.

use num::Zero;

use crate::cdga::algebra::{Cdga, Limits};
use crate::error::{Error, Violation};
use crate::gca::{Derivation, GenSet, Generator, HomDegree, Monomial, Polynomial, Rational};

/// A free graded-commutative algebra ∧V with a differential given on
/// generators. `complete_through` marks truncated generator lists (as
/// produced by cutoff-bounded model constructions): generators of degree at
/// most the marker are all present, higher ones may be missing. `None` means
/// the algebra is fully given.
#[derive(Debug, Clone)]
pub struct SullivanAlgebra {
    gens: GenSet,
    diff: Derivation,
    complete_through: Option<u32>,
}

impl SullivanAlgebra {
    /// Wrap a generator set and differential. Checks that the differential
    /// has degree +1 and only mentions generators of the set; the algebra
    /// laws themselves are checked by `validate`.
    pub fn new(gens: GenSet, diff: Derivation) -> Result<Self, Error> {
        if diff.degree() != 1 {
            return Err(Error::Precondition(format!(
                "differential must have degree +1, got {}",
                diff.degree()
            )));
        }
        for (g, value) in diff.assigned() {
            if !gens.contains(g) {
                return Err(Error::UnknownGenerator(g.name().to_string()));
            }
            for (m, _) in value.terms() {
                for (h, _) in m.factors() {
                    if !gens.contains(h) {
                        return Err(Error::UnknownGenerator(h.name().to_string()));
                    }
                }
            }
        }
        Ok(SullivanAlgebra {
            gens,
            diff,
            complete_through: None,
        })
    }

    /// Mark the generator list as complete only through the given degree.
    pub fn with_complete_through(mut self, degree: u32) -> Self {
        self.complete_through = Some(degree);
        self
    }

    pub fn gens(&self) -> &GenSet {
        &self.gens
    }

    pub fn diff(&self) -> &Derivation {
        &self.diff
    }

    pub fn complete_through(&self) -> Option<u32> {
        self.complete_through
    }

    /// Apply the differential to a polynomial.
    pub fn d(&self, p: &Polynomial) -> Result<Polynomial, Error> {
        self.diff.apply(p)
    }

    /// Check the algebra laws; returns the first violation found.
    ///
    /// Checked: d(g) homogeneous of degree |g|+1, d∘d = 0 on generators
    /// (hence everywhere, by the Leibniz rule), and — when every generator
    /// carries a lower grading — that d lowers the grading by exactly one.
    pub fn validate(&self) -> Result<(), Error> {
        for g in self.gens.iter() {
            let dg = self.diff.value(g);
            match dg.homogeneous_degree() {
                HomDegree::Zero => {}
                HomDegree::Degree(q) if q == g.degree() + 1 => {}
                other => {
                    return Err(Violation {
                        law: "differential_degree",
                        witness: format!(
                            "d({}) = {} must be homogeneous of degree {}, found {:?}",
                            g,
                            dg,
                            g.degree() + 1,
                            other
                        ),
                    }
                    .into());
                }
            }
        }
        for g in self.gens.iter() {
            let ddg = self.diff.apply(&self.diff.value(g))?;
            if !ddg.is_zero() {
                return Err(Violation {
                    law: "d_squared",
                    witness: format!("d(d({})) = {}", g, ddg),
                }
                .into());
            }
        }
        if !self.gens.is_empty() && self.gens.iter().all(|g| g.lower().is_some()) {
            for g in self.gens.iter() {
                let p = g.lower().unwrap();
                let dg = self.diff.value(g);
                for (m, _) in dg.terms() {
                    if m.lower_weight() + 1 != p {
                        return Err(Violation {
                            law: "lower_grading",
                            witness: format!(
                                "d({}) has a term {} of lower weight {}, expected {}",
                                g,
                                m,
                                m.lower_weight(),
                                p as i64 - 1
                            ),
                        }
                        .into());
                    }
                }
            }
        }
        Ok(())
    }

    /// All canonical monomials of the given degree, in canonical order.
    pub fn monomial_basis(&self, q: u32, limits: &Limits) -> Result<Vec<Monomial>, Error> {
        let mut out = Vec::new();
        let gens: Vec<&Generator> = self.gens.iter().collect();
        let mut factors: Vec<(Generator, u32)> = Vec::new();
        enumerate(&gens, 0, q, &mut factors, &mut out, limits.max_monomials).map_err(|()| {
            Error::BudgetExceeded {
                degree: q,
                limit: limits.max_monomials,
            }
        })?;
        out.sort();
        Ok(out)
    }

    /// Does d(V) ⊂ ∧^{≥2}V hold (no linear or constant terms)?
    pub fn is_minimal(&self) -> bool {
        self.gens
            .iter()
            .all(|g| self.diff.value(g).word_length_at_least(2) == self.diff.value(g))
    }

    /// Does every d(g) lie in the span of the generators?
    pub fn has_linear_differential(&self) -> bool {
        self.gens.iter().all(|g| self.diff.value(g).is_linear())
    }
}

/// Extend `factors` (canonical prefix over gens[..idx]) to degree `remaining`.
fn enumerate(
    gens: &[&Generator],
    idx: usize,
    remaining: u32,
    factors: &mut Vec<(Generator, u32)>,
    out: &mut Vec<Monomial>,
    budget: usize,
) -> Result<(), ()> {
    if remaining == 0 {
        if out.len() >= budget {
            return Err(());
        }
        out.push(Monomial::from_canonical(factors.clone()));
        return Ok(());
    }
    if idx == gens.len() {
        return Ok(());
    }
    let g = gens[idx];
    let max_exp = if g.is_odd() {
        1
    } else {
        remaining / g.degree()
    };
    for e in 0..=max_exp {
        if g.degree() * e > remaining {
            break;
        }
        if e > 0 {
            factors.push((g.clone(), e));
        }
        let r = enumerate(gens, idx + 1, remaining - g.degree() * e, factors, out, budget);
        if e > 0 {
            factors.pop();
        }
        r?;
    }
    Ok(())
}

impl Cdga for SullivanAlgebra {
    type Elem = Polynomial;

    fn zero_elem(&self) -> Polynomial {
        Polynomial::zero()
    }

    fn unit_elem(&self) -> Polynomial {
        Polynomial::one()
    }

    fn add_elems(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.add(b)
    }

    fn scale_elem(&self, c: &Rational, a: &Polynomial) -> Polynomial {
        a.scale(c)
    }

    fn mul_elems(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial, Error> {
        a.try_mul(b)
    }

    fn d_elem(&self, a: &Polynomial) -> Result<Polynomial, Error> {
        self.diff.apply(a)
    }

    fn degree_basis(&self, q: u32, limits: &Limits) -> Result<Vec<Polynomial>, Error> {
        Ok(self
            .monomial_basis(q, limits)?
            .into_iter()
            .map(|m| Polynomial::from_term(m, Rational::from_integer(1.into())))
            .collect())
    }

    fn coords_in_degree(
        &self,
        a: &Polynomial,
        q: u32,
        limits: &Limits,
    ) -> Result<Vec<Rational>, Error> {
        match a.homogeneous_degree() {
            HomDegree::Zero => {}
            HomDegree::Degree(d) if d == q => {}
            _ => return Err(Error::NotHomogeneous),
        }
        let basis = self.monomial_basis(q, limits)?;
        let mut coords = vec![Rational::zero(); basis.len()];
        for (m, c) in a.terms() {
            for (h, _) in m.factors() {
                if !self.gens.contains(h) {
                    return Err(Error::UnknownGenerator(h.name().to_string()));
                }
            }
            let pos = basis
                .binary_search(m)
                .unwrap_or_else(|_| unreachable!("canonical monomial missing from its degree"));
            coords[pos] = c.clone();
        }
        Ok(coords)
    }

    fn display_elem(&self, a: &Polynomial) -> String {
        a.to_string()
    }

    fn degree_dim(&self, q: u32, limits: &Limits) -> Result<usize, Error> {
        Ok(self.monomial_basis(q, limits)?.len())
    }

    fn completeness(&self) -> Option<u32> {
        self.complete_through
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::rat;

    fn s4_model() -> SullivanAlgebra {
        let mut gens = GenSet::new();
        let v = gens.add("v", 4).unwrap();
        let w = gens.add("w", 7).unwrap();
        let mut d = Derivation::new(1);
        d.set(&w, Polynomial::generator(&v).try_pow(2).unwrap())
            .unwrap();
        let _ = v;
        SullivanAlgebra::new(gens, d).unwrap()
    }

    #[test]
    fn validates_and_reports_violations() {
        let alg = s4_model();
        assert!(alg.validate().is_ok());
        assert!(alg.is_minimal());
        assert!(!alg.has_linear_differential());

        // wrong-degree differential sneaks past `set_unchecked`, validate sees it
        let mut gens = GenSet::new();
        let v = gens.add("v", 4).unwrap();
        let w = gens.add("w", 7).unwrap();
        let mut d = Derivation::new(1);
        d.set_unchecked(
            &w,
            Polynomial::generator(&v).try_mul(&Polynomial::generator(&w)).unwrap(),
        );
        let alg = SullivanAlgebra::new(gens, d).unwrap();
        match alg.validate() {
            Err(Error::Invalid(v)) => assert_eq!(v.law, "differential_degree"),
            other => panic!("expected violation, got {:?}", other),
        }
    }

    #[test]
    fn detects_d_squared_failure() {
        let mut gens = GenSet::new();
        let a = gens.add("a", 2).unwrap();
        let b = gens.add("b", 3).unwrap();
        let c = gens.add("c", 4).unwrap();
        let mut d = Derivation::new(1);
        d.set(&a, Polynomial::generator(&b)).unwrap();
        d.set(&b, Polynomial::generator(&c)).unwrap();
        let alg = SullivanAlgebra::new(gens, d).unwrap();
        match alg.validate() {
            Err(Error::Invalid(v)) => assert_eq!(v.law, "d_squared"),
            other => panic!("expected violation, got {:?}", other),
        }
    }

    #[test]
    fn monomial_basis_is_canonical_and_counts() {
        let alg = s4_model();
        let limits = Limits::default();
        assert_eq!(alg.monomial_basis(0, &limits).unwrap().len(), 1);
        assert_eq!(alg.monomial_basis(4, &limits).unwrap().len(), 1); // v
        assert_eq!(alg.monomial_basis(7, &limits).unwrap().len(), 1); // w
        assert_eq!(alg.monomial_basis(8, &limits).unwrap().len(), 1); // v^2
        assert_eq!(alg.monomial_basis(11, &limits).unwrap().len(), 1); // v*w
        assert_eq!(alg.monomial_basis(1, &limits).unwrap().len(), 0);
        // w^2 = 0 (odd), so degree 14 is empty
        assert_eq!(alg.monomial_basis(14, &limits).unwrap().len(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let alg = s4_model();
        let tight = Limits::with_max_monomials(0);
        assert_eq!(
            alg.monomial_basis(4, &tight),
            Err(Error::BudgetExceeded { degree: 4, limit: 0 })
        );
    }

    #[test]
    fn coords_round_trip() {
        let alg = s4_model();
        let limits = Limits::default();
        let v = alg.gens().by_name("v").unwrap().clone();
        let p = Polynomial::generator(&v).try_pow(2).unwrap().scale(&rat(3));
        let coords = alg.coords_in_degree(&p, 8, &limits).unwrap();
        assert_eq!(coords, vec![rat(3)]);
        let back = alg.elem_from_coords(&coords, 8, &limits).unwrap();
        assert_eq!(back, p);
    }
}
