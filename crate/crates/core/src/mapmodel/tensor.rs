//! Tensor product of a finite-basis algebra with a free Sullivan algebra.
//!
//! Elements are finite sums Σ aᵢ ⊗ Pᵢ, where aᵢ runs over the finite basis
//! and the Pᵢ are polynomials in the free factor. Multiplication carries the
//! Koszul sign (a⊗b)(a′⊗b′) = (−1)^{|b||a′|} aa′ ⊗ bb′, and the differential
//! acts on a term a ⊗ m as (da) ⊗ m + (−1)^{|a|} a ⊗ (Dm).

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::cdga::{Cdga, FiniteCdga, Limits, SullivanAlgebra};
use crate::error::Error;
use crate::gca::{Monomial, Normalized, Polynomial, Rational};

/// An element of the tensor algebra: rational coefficients indexed by pairs
/// (finite-basis index, monomial in the free factor). Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorElem {
    terms: BTreeMap<(usize, Monomial), Rational>,
}

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem {
            terms: BTreeMap::new(),
        }
    }

    /// The single term c·(aᵢ ⊗ m).
    pub fn term(i: usize, m: Monomial, c: Rational) -> Self {
        let mut out = TensorElem::zero();
        out.add_term(i, m, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, Monomial), &Rational)> {
        self.terms.iter()
    }

    /// Add c·(aᵢ ⊗ m) into this element, combining like terms.
    pub fn push(&mut self, i: usize, m: Monomial, c: Rational) {
        self.add_term(i, m, c);
    }

    /// The polynomial Pᵢ in the decomposition Σ aᵢ ⊗ Pᵢ.
    pub fn left_component(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for ((j, m), c) in &self.terms {
            if *j == i {
                out = out.add(&Polynomial::from_term(m.clone(), c.clone()));
            }
        }
        out
    }

    fn add_term(&mut self, i: usize, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (i, m);
        match self.terms.get_mut(&key) {
            Some(entry) => {
                *entry += c;
                if entry.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }
}

/// The tensor algebra A ⊗ Λ of a finite-basis algebra with a free algebra.
#[derive(Debug, Clone)]
pub struct TensorCdga {
    left: Arc<FiniteCdga>,
    right: Arc<SullivanAlgebra>,
}

impl TensorCdga {
    pub fn new(left: Arc<FiniteCdga>, right: Arc<SullivanAlgebra>) -> Self {
        TensorCdga { left, right }
    }

    pub fn left(&self) -> &Arc<FiniteCdga> {
        &self.left
    }

    pub fn right(&self) -> &Arc<SullivanAlgebra> {
        &self.right
    }

    /// Apply d_A ⊗ 1 alone (no sign, no action on the free factor).
    pub fn left_diff(&self, a: &TensorElem) -> TensorElem {
        let mut out = TensorElem::zero();
        for ((i, m), c) in &a.terms {
            for (k, dk) in self.left.diff_of(*i).iter().enumerate() {
                if !dk.is_zero() {
                    out.add_term(k, m.clone(), c * dk);
                }
            }
        }
        out
    }

    fn degree_keys(&self, q: u32, limits: &Limits) -> Result<Vec<(usize, Monomial)>, Error> {
        let mut keys = Vec::new();
        for i in 0..self.left.dim() {
            let di = self.left.degree(i);
            if di > q {
                continue;
            }
            for m in self.right.monomial_basis(q - di, limits)? {
                keys.push((i, m));
            }
        }
        Ok(keys)
    }
}

impl Cdga for TensorCdga {
    type Elem = TensorElem;

    fn zero_elem(&self) -> TensorElem {
        TensorElem::zero()
    }

    fn unit_elem(&self) -> TensorElem {
        TensorElem::term(0, Monomial::one(), Rational::one())
    }

    fn add_elems(&self, a: &TensorElem, b: &TensorElem) -> TensorElem {
        let mut out = a.clone();
        for ((i, m), c) in &b.terms {
            out.add_term(*i, m.clone(), c.clone());
        }
        out
    }

    fn scale_elem(&self, c: &Rational, a: &TensorElem) -> TensorElem {
        if c.is_zero() {
            return TensorElem::zero();
        }
        let mut out = TensorElem::zero();
        for ((i, m), x) in &a.terms {
            out.add_term(*i, m.clone(), x * c);
        }
        out
    }

    fn mul_elems(&self, a: &TensorElem, b: &TensorElem) -> Result<TensorElem, Error> {
        let mut out = TensorElem::zero();
        for ((i, m), c) in &a.terms {
            for ((j, m2), c2) in &b.terms {
                // Koszul sign for moving m past a_j.
                let mut coeff = c * c2;
                if m.degree() % 2 == 1 && self.left.degree(*j) % 2 == 1 {
                    coeff = -coeff;
                }
                let (mm, sign) = match m.mul(m2)? {
                    Normalized::Zero => continue,
                    Normalized::Term(mm, s) => (mm, s),
                };
                if sign < 0 {
                    coeff = -coeff;
                }
                for (k, p) in self.left.product_of(*i, *j).iter().enumerate() {
                    if !p.is_zero() {
                        out.add_term(k, mm.clone(), &coeff * p);
                    }
                }
            }
        }
        Ok(out)
    }

    fn d_elem(&self, a: &TensorElem) -> Result<TensorElem, Error> {
        let mut out = TensorElem::zero();
        for ((i, m), c) in &a.terms {
            for (k, dk) in self.left.diff_of(*i).iter().enumerate() {
                if !dk.is_zero() {
                    out.add_term(k, m.clone(), c * dk);
                }
            }
            let mut c_right = c.clone();
            if self.left.degree(*i) % 2 == 1 {
                c_right = -c_right;
            }
            let dm = self.right.d(&Polynomial::from_term(m.clone(), Rational::one()))?;
            for (m2, c2) in dm.terms() {
                out.add_term(*i, m2.clone(), &c_right * c2);
            }
        }
        Ok(out)
    }

    fn degree_basis(&self, q: u32, limits: &Limits) -> Result<Vec<TensorElem>, Error> {
        Ok(self
            .degree_keys(q, limits)?
            .into_iter()
            .map(|(i, m)| TensorElem::term(i, m, Rational::one()))
            .collect())
    }

    fn coords_in_degree(
        &self,
        a: &TensorElem,
        q: u32,
        limits: &Limits,
    ) -> Result<Vec<Rational>, Error> {
        for ((i, m), _) in &a.terms {
            if *i >= self.left.dim() {
                return Err(Error::UnknownGenerator(format!("basis index {}", i)));
            }
            for (g, _) in m.factors() {
                if !self.right.gens().contains(g) {
                    return Err(Error::UnknownGenerator(g.name().to_string()));
                }
            }
            if self.left.degree(*i) + m.degree() != q {
                return Err(Error::NotHomogeneous);
            }
        }
        let keys = self.degree_keys(q, limits)?;
        let positions: BTreeMap<&(usize, Monomial), usize> =
            keys.iter().zip(0..).collect();
        let mut coords = vec![Rational::zero(); keys.len()];
        for (key, c) in &a.terms {
            let pos = positions
                .get(key)
                .expect("canonical monomial appears in the degree basis");
            coords[*pos] = c.clone();
        }
        Ok(coords)
    }

    fn display_elem(&self, a: &TensorElem) -> String {
        if a.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for ((i, m), c) in &a.terms {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let piece = if *i == 0 && m.is_unit() {
                None
            } else if *i == 0 {
                Some(format!("{}", m))
            } else if m.is_unit() {
                Some(self.left.name(*i).to_string())
            } else {
                Some(format!("{}⊗{}", self.left.name(*i), m))
            };
            match piece {
                None => out.push_str(&format!("{}", mag)),
                Some(p) => {
                    if mag.is_one() {
                        out.push_str(&p);
                    } else {
                        out.push_str(&format!("{}*{}", mag, p));
                    }
                }
            }
        }
        out
    }

    fn completeness(&self) -> Option<u32> {
        self.right.completeness()
    }
}
