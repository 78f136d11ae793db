//! Derivations of a free graded-commutative algebra.
//!
//! A derivation of degree t is determined by its values on generators and
//! extends by the graded Leibniz rule
//!     theta(a * b) = theta(a) * b + (-1)^(t * |a|) * a * theta(b).

use std::collections::BTreeMap;

use num::Zero;

use crate::error::Error;
use crate::gca::gens::Generator;
use crate::gca::monomial::Monomial;
use crate::gca::poly::{rat, HomDegree, Polynomial};

/// A degree-t derivation, stored sparsely on generators (missing = 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    degree: i64,
    values: BTreeMap<Generator, Polynomial>,
}

impl Derivation {
    pub fn new(degree: i64) -> Self {
        Derivation {
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Assign theta(g) = value, requiring the value to be homogeneous of
    /// degree |g| + t (the zero polynomial always qualifies).
    pub fn set(&mut self, g: &Generator, value: Polynomial) -> Result<(), Error> {
        let expected = g.degree() as i64 + self.degree;
        match value.homogeneous_degree() {
            HomDegree::Zero => {}
            HomDegree::Degree(d) if d as i64 == expected => {}
            other => {
                return Err(Error::InhomogeneousValue {
                    gen: g.name().to_string(),
                    expected,
                    found: match other {
                        HomDegree::Degree(d) => format!("degree {d}"),
                        _ => "a mixed-degree polynomial".to_string(),
                    },
                });
            }
        }
        self.set_unchecked(g, value);
        Ok(())
    }

    /// Assign without the homogeneity check. Lets callers build deliberately
    /// broken differentials that `validate` must then reject.
    pub fn set_unchecked(&mut self, g: &Generator, value: Polynomial) {
        if value.is_zero() {
            self.values.remove(g);
        } else {
            self.values.insert(g.clone(), value);
        }
    }

    pub fn value(&self, g: &Generator) -> Polynomial {
        self.values.get(g).cloned().unwrap_or_default()
    }

    pub fn assigned(&self) -> impl Iterator<Item = (&Generator, &Polynomial)> {
        self.values.iter()
    }

    /// Apply to a monomial by the Leibniz rule. The sign in front of the term
    /// replacing a factor x is (-1)^(t * deg(prefix before x)); a group g^e
    /// with e >= 2 forces g even, so its e Leibniz terms agree and merge into
    /// a factor of e.
    fn apply_monomial(&self, m: &Monomial) -> Result<Polynomial, Error> {
        let mut out = Polynomial::zero();
        let factors = m.factors();
        for (i, (g, e)) in factors.iter().enumerate() {
            let Some(dg) = self.values.get(g) else {
                continue;
            };
            let prefix_deg: u32 = factors[..i].iter().map(|(h, k)| h.degree() * k).sum();
            let mut coeff = rat(*e as i64);
            if self.degree.rem_euclid(2) == 1 && prefix_deg % 2 == 1 {
                coeff = -coeff;
            }
            let mut left = factors[..i].to_vec();
            if *e > 1 {
                left.push((g.clone(), e - 1));
            }
            let left = Polynomial::from_term(Monomial::from_canonical(left), coeff);
            let right = Polynomial::from_term(
                Monomial::from_canonical(factors[i + 1..].to_vec()),
                rat(1),
            );
            out = out.add(&left.try_mul(dg)?.try_mul(&right)?);
        }
        Ok(out)
    }

    /// Apply to a polynomial.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, Error> {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&self.apply_monomial(m)?.scale(c));
        }
        Ok(out)
    }
}

/// Partial derivative with respect to a generator: the derivation of degree
/// -|g| taking g to 1 and every other generator to 0, applied to p.
pub fn partial_derivative(p: &Polynomial, g: &Generator) -> Result<Polynomial, Error> {
    let mut d = Derivation::new(-(g.degree() as i64));
    d.set(g, Polynomial::one())?;
    d.apply(p)
}
