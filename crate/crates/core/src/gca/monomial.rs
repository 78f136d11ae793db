//! Monomials in a graded-commutative polynomial algebra.
//!
//! A monomial is a product of generator powers in canonical order (ascending
//! ordinal). Normalization reorders an arbitrary factor list into canonical
//! order and accounts for the Koszul sign: swapping two odd-degree factors
//! flips the sign, and an odd generator squared is zero.

use crate::error::Error;
use crate::gca::gens::{GenSet, Generator};

/// Sign carried by a normalization: +1 or -1.
pub type Sign = i32;

/// Result of normalizing a factor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    /// The product is zero (an odd generator appeared twice).
    Zero,
    /// Canonical monomial together with the Koszul sign of the reordering.
    Term(Monomial, Sign),
}

/// A product of generator powers, factors sorted by ordinal, exponents >= 1.
/// The empty product is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    // degree first so the derived order groups monomials by degree
    degree: u32,
    factors: Vec<(Generator, u32)>,
}

impl Monomial {
    /// The unit monomial (degree 0).
    pub fn one() -> Self {
        Monomial {
            degree: 0,
            factors: Vec::new(),
        }
    }

    pub fn generator(g: &Generator) -> Self {
        Monomial {
            degree: g.degree(),
            factors: vec![(g.clone(), 1)],
        }
    }

    /// Build directly from factors already in canonical form (sorted by
    /// ordinal, unique generators, exponents >= 1).
    pub(crate) fn from_canonical(factors: Vec<(Generator, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|(g, e)| *e >= 1 && !(g.is_odd() && *e > 1)));
        let degree = factors.iter().map(|(g, e)| g.degree() * e).sum();
        Monomial { degree, factors }
    }

    /// Normalize an arbitrary factor list (exponents may repeat generators and
    /// appear in any order). Returns the canonical monomial and Koszul sign,
    /// or `Zero` when an odd generator occurs with total exponent >= 2.
    pub fn normalize(factors: &[(Generator, u32)]) -> Normalized {
        // flatten to single occurrences, keeping input order
        let mut flat: Vec<&Generator> = Vec::new();
        for (g, e) in factors {
            if g.is_odd() && *e >= 2 {
                return Normalized::Zero;
            }
            for _ in 0..*e {
                flat.push(g);
            }
        }
        // Koszul sign: (-1)^(number of inversions between odd factors)
        let mut odd_inversions = 0u64;
        for i in 0..flat.len() {
            if !flat[i].is_odd() {
                continue;
            }
            for j in (i + 1)..flat.len() {
                if flat[j].is_odd() {
                    match flat[j].cmp(flat[i]) {
                        std::cmp::Ordering::Less => odd_inversions += 1,
                        std::cmp::Ordering::Equal => return Normalized::Zero,
                        std::cmp::Ordering::Greater => {}
                    }
                }
            }
        }
        let mut sorted: Vec<&Generator> = flat;
        sorted.sort(); // stable; even/odd interleavings carry no sign
        let mut out: Vec<(Generator, u32)> = Vec::new();
        for g in sorted {
            match out.last_mut() {
                Some((last, e)) if last == g => *e += 1,
                _ => out.push((g.clone(), 1)),
            }
        }
        let degree = out.iter().map(|(g, e)| g.degree() * e).sum();
        let sign = if odd_inversions % 2 == 0 { 1 } else { -1 };
        Normalized::Term(
            Monomial {
                degree,
                factors: out,
            },
            sign,
        )
    }

    /// Normalize, first checking every factor belongs to `gens`.
    pub fn normalize_in(gens: &GenSet, factors: &[(Generator, u32)]) -> Result<Normalized, Error> {
        for (g, _) in factors {
            if !gens.contains(g) {
                return Err(Error::UnknownGenerator(g.name().to_string()));
            }
        }
        Ok(Self::normalize(factors))
    }

    /// Product of two canonical monomials (canonical monomial + sign, or zero).
    pub fn mul(&self, other: &Monomial) -> Result<Normalized, Error> {
        if let (Some(a), Some(b)) = (self.set_id(), other.set_id()) {
            if a != b {
                return Err(Error::MixedAlgebras);
            }
        }
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Ok(Self::normalize(&factors))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of generator factors counted with multiplicity (word length).
    pub fn length(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent_of(&self, g: &Generator) -> u32 {
        self.factors
            .iter()
            .find(|(h, _)| h == g)
            .map_or(0, |(_, e)| *e)
    }

    /// Sum of lower gradings over the factors (0 when no factor carries one).
    pub fn lower_weight(&self) -> u32 {
        self.factors
            .iter()
            .map(|(g, e)| g.lower().unwrap_or(0) * e)
            .sum()
    }

    pub(crate) fn set_id(&self) -> Option<u64> {
        self.factors.first().map(|(g, _)| g.set_id())
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let mut first = true;
        for (g, e) in &self.factors {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", g.name())?;
            } else {
                write!(f, "{}^{}", g.name(), e)?;
            }
        }
        Ok(())
    }
}
