//! Finite-dimensional commutative differential graded algebras given by
//! explicit structure tables.

use num::{One, Signed, Zero};

use crate::cdga::algebra::{Cdga, Limits};
use crate::error::{Error, Violation};
use crate::gca::Rational;

/// Coordinate vector over the full basis of a [`FiniteCdga`].
pub type FinVec = Vec<Rational>;

/// A CDGA with a finite chosen basis, a full product table, and a
/// differential table. Tables are stored exactly as built; `validate`
/// checks the algebra laws.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteCdga {
    names: Vec<String>,
    degrees: Vec<u32>,
    product: Vec<Vec<FinVec>>,
    diff: Vec<FinVec>,
}

/// Incremental constructor for [`FiniteCdga`]. The basis element `1` of
/// degree 0 is present from the start at index 0. Unset products default to
/// the unit law for pairs involving index 0 and otherwise to the entry
/// forced by graded commutativity when the mirrored pair was set, or to
/// zero; explicitly set entries are always kept verbatim. `build` checks
/// only table shapes, never the algebra laws.
#[derive(Debug, Clone)]
pub struct FiniteBuilder {
    names: Vec<String>,
    degrees: Vec<u32>,
    product: Vec<((usize, usize), FinVec)>,
    diff: Vec<(usize, FinVec)>,
}

impl FiniteBuilder {
    pub fn new() -> Self {
        FiniteBuilder {
            names: vec!["1".to_string()],
            degrees: vec![0],
            product: Vec::new(),
            diff: Vec::new(),
        }
    }

    /// Add a basis element; returns its index.
    pub fn add_basis(&mut self, name: &str, degree: u32) -> Result<usize, Error> {
        if self.names.iter().any(|n| n == name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        self.names.push(name.to_string());
        self.degrees.push(degree);
        Ok(self.names.len() - 1)
    }

    /// Set the product of basis elements `i` and `j`, in that order.
    pub fn set_product(&mut self, i: usize, j: usize, value: FinVec) {
        self.product.push(((i, j), value));
    }

    /// Set the differential of basis element `i`.
    pub fn set_diff(&mut self, i: usize, value: FinVec) {
        self.diff.push((i, value));
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn build(self) -> Result<FiniteCdga, Error> {
        let n = self.names.len();
        let check = |v: &FinVec| -> Result<(), Error> {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            Ok(())
        };
        let mut product: Vec<Vec<Option<FinVec>>> = vec![vec![None; n]; n];
        for ((i, j), v) in self.product {
            check(&v)?;
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: i.max(j) + 1,
                });
            }
            product[i][j] = Some(v);
        }
        let mut diff: Vec<FinVec> = vec![vec![Rational::zero(); n]; n];
        for (i, v) in self.diff {
            check(&v)?;
            if i >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: i + 1,
                });
            }
            diff[i] = v;
        }
        let unit = |k: usize| -> FinVec {
            let mut e = vec![Rational::zero(); n];
            e[k] = Rational::one();
            e
        };
        let mut full: Vec<Vec<FinVec>> = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                full[i][j] = match &product[i][j] {
                    Some(v) => v.clone(),
                    None => {
                        if i == 0 {
                            unit(j)
                        } else if j == 0 {
                            unit(i)
                        } else if let Some(v) = &product[j][i] {
                            let sign = if self.degrees[i] % 2 == 1 && self.degrees[j] % 2 == 1 {
                                -Rational::one()
                            } else {
                                Rational::one()
                            };
                            v.iter().map(|c| c * &sign).collect()
                        } else {
                            vec![Rational::zero(); n]
                        }
                    }
                };
            }
        }
        Ok(FiniteCdga {
            names: self.names,
            degrees: self.degrees,
            product: full,
            diff,
        })
    }
}

impl Default for FiniteBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl FiniteCdga {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Largest degree carried by a basis element.
    pub fn top_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Indices of basis elements of degree `q`, ascending.
    pub fn degree_indices(&self, q: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == q).collect()
    }

    /// The coordinate vector of the `i`-th basis element.
    pub fn basis_vec(&self, i: usize) -> FinVec {
        let mut e = vec![Rational::zero(); self.dim()];
        e[i] = Rational::one();
        e
    }

    pub fn product_of(&self, i: usize, j: usize) -> &FinVec {
        &self.product[i][j]
    }

    pub fn diff_of(&self, i: usize) -> &FinVec {
        &self.diff[i]
    }

    fn describe(&self, v: &FinVec) -> String {
        self.display_elem(v)
    }

    /// Check the algebra laws; returns the first violation found, scanning
    /// in a fixed order: connectedness, unit law, degree additivity, graded
    /// commutativity, associativity, differential degree, d² = 0, Leibniz.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.dim();
        for i in 1..n {
            if self.degrees[i] == 0 {
                return Err(Violation {
                    law: "connected",
                    witness: format!("basis element {} has degree 0 besides the unit", self.names[i]),
                }
                .into());
            }
        }
        for j in 0..n {
            if self.product[0][j] != self.basis_vec(j) {
                return Err(Violation {
                    law: "unit",
                    witness: format!("1*{} = {}", self.names[j], self.describe(&self.product[0][j])),
                }
                .into());
            }
            if self.product[j][0] != self.basis_vec(j) {
                return Err(Violation {
                    law: "unit",
                    witness: format!("{}*1 = {}", self.names[j], self.describe(&self.product[j][0])),
                }
                .into());
            }
        }
        for i in 0..n {
            for j in 0..n {
                let want = self.degrees[i] + self.degrees[j];
                for (k, c) in self.product[i][j].iter().enumerate() {
                    if !c.is_zero() && self.degrees[k] != want {
                        return Err(Violation {
                            law: "degree_additivity",
                            witness: format!(
                                "{}*{} = {} has a degree-{} component, expected degree {}",
                                self.names[i],
                                self.names[j],
                                self.describe(&self.product[i][j]),
                                self.degrees[k],
                                want
                            ),
                        }
                        .into());
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let sign = if self.degrees[i] % 2 == 1 && self.degrees[j] % 2 == 1 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                let flipped: FinVec = self.product[i][j].iter().map(|c| c * &sign).collect();
                if self.product[j][i] != flipped {
                    return Err(Violation {
                        law: "graded_commutativity",
                        witness: format!(
                            "{}*{} = {} but {}*{} = {}",
                            self.names[i],
                            self.names[j],
                            self.describe(&self.product[i][j]),
                            self.names[j],
                            self.names[i],
                            self.describe(&self.product[j][i])
                        ),
                    }
                    .into());
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_vec(&self.product[i][j], &self.basis_vec(k));
                    let right = self.mul_vec(&self.basis_vec(i), &self.product[j][k]);
                    if left != right {
                        return Err(Violation {
                            law: "associativity",
                            witness: format!(
                                "({}*{})*{} = {} but {}*({}*{}) = {}",
                                self.names[i],
                                self.names[j],
                                self.names[k],
                                self.describe(&left),
                                self.names[i],
                                self.names[j],
                                self.names[k],
                                self.describe(&right)
                            ),
                        }
                        .into());
                    }
                }
            }
        }
        for i in 0..n {
            let want = self.degrees[i] + 1;
            for (k, c) in self.diff[i].iter().enumerate() {
                if !c.is_zero() && self.degrees[k] != want {
                    return Err(Violation {
                        law: "differential_degree",
                        witness: format!(
                            "d({}) = {} has a degree-{} component, expected degree {}",
                            self.names[i],
                            self.describe(&self.diff[i]),
                            self.degrees[k],
                            want
                        ),
                    }
                    .into());
                }
            }
        }
        for i in 0..n {
            let dd = self.d_vec(&self.diff[i]);
            if dd.iter().any(|c| !c.is_zero()) {
                return Err(Violation {
                    law: "d_squared",
                    witness: format!("d(d({})) = {}", self.names[i], self.describe(&dd)),
                }
                .into());
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.d_vec(&self.product[i][j]);
                let mut rhs = self.mul_vec(&self.diff[i], &self.basis_vec(j));
                let sign = if self.degrees[i] % 2 == 1 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                let second = self.mul_vec(&self.basis_vec(i), &self.diff[j]);
                for (r, s) in rhs.iter_mut().zip(second.iter()) {
                    *r += s * &sign;
                }
                if lhs != rhs {
                    return Err(Violation {
                        law: "leibniz",
                        witness: format!(
                            "d({}*{}) = {} but the Leibniz expansion gives {}",
                            self.names[i],
                            self.names[j],
                            self.describe(&lhs),
                            self.describe(&rhs)
                        ),
                    }
                    .into());
                }
            }
        }
        Ok(())
    }

    fn mul_vec(&self, a: &FinVec, b: &FinVec) -> FinVec {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = ca * cb;
                for (k, p) in self.product[i][j].iter().enumerate() {
                    if !p.is_zero() {
                        out[k] += p * &c;
                    }
                }
            }
        }
        out
    }

    fn d_vec(&self, a: &FinVec) -> FinVec {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, p) in self.diff[i].iter().enumerate() {
                if !p.is_zero() {
                    out[k] += p * c;
                }
            }
        }
        out
    }
}

impl Cdga for FiniteCdga {
    type Elem = FinVec;

    fn zero_elem(&self) -> FinVec {
        vec![Rational::zero(); self.dim()]
    }

    fn unit_elem(&self) -> FinVec {
        self.basis_vec(0)
    }

    fn add_elems(&self, a: &FinVec, b: &FinVec) -> FinVec {
        a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
    }

    fn scale_elem(&self, c: &Rational, a: &FinVec) -> FinVec {
        a.iter().map(|x| x * c).collect()
    }

    fn mul_elems(&self, a: &FinVec, b: &FinVec) -> Result<FinVec, Error> {
        if a.len() != self.dim() || b.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.len().max(b.len()),
            });
        }
        Ok(self.mul_vec(a, b))
    }

    fn d_elem(&self, a: &FinVec) -> Result<FinVec, Error> {
        if a.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.len(),
            });
        }
        Ok(self.d_vec(a))
    }

    fn degree_basis(&self, q: u32, _limits: &Limits) -> Result<Vec<FinVec>, Error> {
        Ok(self.degree_indices(q).into_iter().map(|i| self.basis_vec(i)).collect())
    }

    fn coords_in_degree(&self, a: &FinVec, q: u32, _limits: &Limits) -> Result<Vec<Rational>, Error> {
        if a.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.len(),
            });
        }
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() && self.degrees[i] != q {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(self.degree_indices(q).into_iter().map(|i| a[i].clone()).collect())
    }

    fn display_elem(&self, a: &FinVec) -> String {
        let mut out = String::new();
        let mut first = true;
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            if i == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&self.names[i]);
            } else {
                out.push_str(&format!("{}*{}", mag, self.names[i]));
            }
        }
        if first {
            out.push('0');
        }
        out
    }

    fn degree_dim(&self, q: u32, _limits: &Limits) -> Result<usize, Error> {
        Ok(self.degree_indices(q).len())
    }
}
