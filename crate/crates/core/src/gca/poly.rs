//! Polynomials: finite Q-linear combinations of canonical monomials.
//!
//! Stored as an ordered map monomial -> coefficient with no zero entries, so
//! equality, iteration order, and printing are all canonical.

use std::collections::BTreeMap;

use num::{BigRational, One, Signed, Zero};

use crate::error::Error;
use crate::gca::gens::Generator;
use crate::gca::monomial::{Monomial, Normalized};

/// Exact rational scalar (always lowest terms, positive denominator).
pub type Rational = BigRational;

/// Convenience: integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Convenience: the fraction n/d.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Homogeneity of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomDegree {
    /// The zero polynomial (homogeneous of every degree).
    Zero,
    /// All monomials share this degree.
    Degree(u32),
    /// Monomials of several degrees are present.
    Mixed,
}

/// A graded-commutative polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::default();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn generator(g: &Generator) -> Self {
        Polynomial::from_term(Monomial::generator(g), Rational::one())
    }

    pub fn from_term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::default();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    /// Graded-commutative product. Errors when the operands involve
    /// generators from different generator sets.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                match m1.mul(m2)? {
                    Normalized::Zero => {}
                    Normalized::Term(m, sign) => {
                        let mut c = c1 * c2;
                        if sign < 0 {
                            c = -c;
                        }
                        out.add_term(m, c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// n-th power (n >= 0).
    pub fn try_pow(&self, n: u32) -> Result<Polynomial, Error> {
        let mut out = Polynomial::one();
        for _ in 0..n {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    pub fn homogeneous_degree(&self) -> HomDegree {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return HomDegree::Zero;
        };
        let d = first.degree();
        if it.all(|m| m.degree() == d) {
            HomDegree::Degree(d)
        } else {
            HomDegree::Mixed
        }
    }

    /// The component of the given degree.
    pub fn component(&self, degree: u32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.degree() == degree {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Terms that are a single generator to the first power.
    pub fn linear_part(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.length() == 1 {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Terms of word length >= `len`.
    pub fn word_length_at_least(&self, len: u32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.length() >= len {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Is every monomial a single generator (so the polynomial is "linear")?
    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|m| m.length() == 1)
    }
}

impl std::ops::Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl std::ops::Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

/// Panics on mixed generator sets; use `try_mul` where that is a real case.
impl std::ops::Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("mixed ambient algebras")
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_unit() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::gens::GenSet;

    #[test]
    fn product_collects_and_cancels() {
        let mut s = GenSet::new();
        let a = s.add("a", 3).unwrap();
        let b = s.add("b", 3).unwrap();
        let p = Polynomial::generator(&a).add(&Polynomial::generator(&b));
        // (a+b)(a+b) = ab + ba = ab - ab = 0
        assert!(p.try_mul(&p).unwrap().is_zero());
    }

    #[test]
    fn mixed_sets_error() {
        let mut s = GenSet::new();
        let mut t = GenSet::new();
        let a = Polynomial::generator(&s.add("a", 2).unwrap());
        let b = Polynomial::generator(&t.add("b", 2).unwrap());
        assert_eq!(a.try_mul(&b), Err(Error::MixedAlgebras));
    }

    #[test]
    fn display_is_dsl_syntax() {
        let mut s = GenSet::new();
        let v = s.add("v", 4).unwrap();
        let w = s.add("w", 7).unwrap();
        let p = Polynomial::generator(&v)
            .try_pow(2)
            .unwrap()
            .scale(&ratio(-1, 2))
            .add(&Polynomial::generator(&w).scale(&rat(3)));
        assert_eq!(p.to_string(), "3*w - 1/2*v^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn homogeneity_queries() {
        let mut s = GenSet::new();
        let v = s.add("v", 4).unwrap();
        let w = s.add("w", 7).unwrap();
        let v2 = Polynomial::generator(&v).try_pow(2).unwrap();
        assert_eq!(v2.homogeneous_degree(), HomDegree::Degree(8));
        let mixed = v2.add(&Polynomial::generator(&w));
        assert_eq!(mixed.homogeneous_degree(), HomDegree::Mixed);
        assert_eq!(Polynomial::zero().homogeneous_degree(), HomDegree::Zero);
    }

    #[test]
    fn linear_part_extraction() {
        let mut s = GenSet::new();
        let v = s.add("v", 4).unwrap();
        let w = s.add("w", 7).unwrap();
        let p = Polynomial::generator(&v)
            .try_pow(2)
            .unwrap()
            .add(&Polynomial::generator(&w));
        assert_eq!(p.linear_part(), Polynomial::generator(&w));
        assert!(p.linear_part().is_linear());
    }
}
