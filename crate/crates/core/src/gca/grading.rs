//! Auxiliary positive integer weightings and the Euler identity.
//!
//! Assign each generator x_i a weight l(x_i) >= 1. A monomial's weight is the
//! weight-sum of its factors, and for a weight-homogeneous polynomial P the
//! Euler identity holds:
//!     l(P) * P = sum_i l(x_i) * x_i * dP/dx_i.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::gca::derivation::partial_derivative;
use crate::gca::gens::{GenSet, Generator};
use crate::gca::monomial::Monomial;
use crate::gca::poly::{rat, Polynomial};

/// A positive weighting of the generators of one generator set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGrading {
    weights: BTreeMap<Generator, u64>,
}

impl WeightedGrading {
    /// Weight every generator of `gens`; each weight must be >= 1.
    pub fn new(gens: &GenSet, weights: &[(Generator, u64)]) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for (g, w) in weights {
            if !gens.contains(g) {
                return Err(Error::UnknownGenerator(g.name().to_string()));
            }
            if *w == 0 {
                return Err(Error::Precondition(format!(
                    "weight of `{}` must be >= 1",
                    g.name()
                )));
            }
            map.insert(g.clone(), *w);
        }
        for g in gens.iter() {
            if !map.contains_key(g) {
                return Err(Error::Precondition(format!(
                    "no weight assigned to `{}`",
                    g.name()
                )));
            }
        }
        Ok(WeightedGrading { weights: map })
    }

    /// Weight every generator by its cohomological degree.
    pub fn by_degree(gens: &GenSet) -> Self {
        WeightedGrading {
            weights: gens.iter().map(|g| (g.clone(), g.degree() as u64)).collect(),
        }
    }

    pub fn weight_of_generator(&self, g: &Generator) -> Result<u64, Error> {
        self.weights
            .get(g)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(g.name().to_string()))
    }

    pub fn weight_of_monomial(&self, m: &Monomial) -> Result<u64, Error> {
        let mut w = 0u64;
        for (g, e) in m.factors() {
            w += self.weight_of_generator(g)? * *e as u64;
        }
        Ok(w)
    }

    /// The common weight of all monomials of `p`, or an error when mixed.
    /// The zero polynomial reports weight 0.
    pub fn weight_of(&self, p: &Polynomial) -> Result<u64, Error> {
        let mut seen: Option<u64> = None;
        for (m, _) in p.terms() {
            let w = self.weight_of_monomial(m)?;
            match seen {
                None => seen = Some(w),
                Some(prev) if prev == w => {}
                Some(_) => return Err(Error::NotWeightHomogeneous),
            }
        }
        Ok(seen.unwrap_or(0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &u64)> {
        self.weights.iter()
    }
}

/// Both sides of the Euler identity for one weight-homogeneous polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerReport {
    pub weight: u64,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub holds: bool,
}

/// Evaluate l(P) * P and sum_i l(x_i) * x_i * dP/dx_i independently and
/// compare. Errors when P is not weight-homogeneous.
pub fn euler_identity_check(
    grading: &WeightedGrading,
    p: &Polynomial,
) -> Result<EulerReport, Error> {
    let weight = grading.weight_of(p)?;
    let lhs = p.scale(&rat(weight as i64));
    let mut rhs = Polynomial::zero();
    for (g, w) in grading.iter() {
        let dp = partial_derivative(p, g)?;
        if dp.is_zero() {
            continue;
        }
        let term = Polynomial::generator(g).try_mul(&dp)?.scale(&rat(*w as i64));
        rhs = rhs.add(&term);
    }
    let holds = lhs == rhs;
    Ok(EulerReport {
        weight,
        lhs,
        rhs,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::gens::GenSet;

    #[test]
    fn euler_on_a_plain_monomial() {
        let mut s = GenSet::new();
        let x = s.add("x", 2).unwrap();
        let y = s.add("y", 3).unwrap();
        let grading = WeightedGrading::by_degree(&s);
        let p = Polynomial::generator(&x)
            .try_pow(2)
            .unwrap()
            .try_mul(&Polynomial::generator(&y))
            .unwrap();
        let report = euler_identity_check(&grading, &p).unwrap();
        assert_eq!(report.weight, 7);
        assert!(report.holds);
    }

    #[test]
    fn euler_with_odd_factors() {
        // weight-homogeneous combination with anticommuting factors
        let mut s = GenSet::new();
        let a = s.add("a", 3).unwrap();
        let b = s.add("b", 3).unwrap();
        let x = s.add("x", 2).unwrap();
        let grading = WeightedGrading::new(
            &s,
            &[(a.clone(), 2), (b.clone(), 2), (x.clone(), 4)],
        )
        .unwrap();
        // a*b and x have weight 4; a*b*x and x^2 have weight 8
        let p = Polynomial::generator(&a)
            .try_mul(&Polynomial::generator(&b))
            .unwrap()
            .try_mul(&Polynomial::generator(&x))
            .unwrap()
            .add(&Polynomial::generator(&x).try_pow(2).unwrap());
        let report = euler_identity_check(&grading, &p).unwrap();
        assert_eq!(report.weight, 8);
        assert!(report.holds);
    }

    #[test]
    fn mixed_weight_is_rejected() {
        let mut s = GenSet::new();
        let x = s.add("x", 2).unwrap();
        let y = s.add("y", 4).unwrap();
        let grading = WeightedGrading::by_degree(&s);
        let p = Polynomial::generator(&x).add(&Polynomial::generator(&y));
        assert_eq!(
            euler_identity_check(&grading, &p),
            Err(Error::NotWeightHomogeneous)
        );
    }
}
