//! Generators and generator sets.
//!
//! A `Generator` is a named symbol with a positive degree; a `GenSet` owns an
//! ordered family of them. Declaration order fixes the canonical monomial
//! order, so everything downstream is deterministic. Generators from
//! different sets never mix: each set carries a unique id and the arithmetic
//! refuses cross-set products.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use crate::error::Error;

static NEXT_SET_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
struct GenData {
    set_id: u64,
    ordinal: u32,
    name: String,
    degree: u32,
    lower: Option<u32>,
}

/// A graded generator. Cheap to clone; identity is (owning set, ordinal).
#[derive(Debug, Clone)]
pub struct Generator {
    data: Arc<GenData>,
}

impl Generator {
    pub fn name(&self) -> &str {
        &self.data.name
    }

    /// Cohomological degree (always >= 1).
    pub fn degree(&self) -> u32 {
        self.data.degree
    }

    /// Lower (word-length style) grading, when the algebra is bigraded.
    pub fn lower(&self) -> Option<u32> {
        self.data.lower
    }

    /// Position in declaration order within the owning set.
    pub fn ordinal(&self) -> u32 {
        self.data.ordinal
    }

    pub(crate) fn set_id(&self) -> u64 {
        self.data.set_id
    }

    /// Odd-degree generators anticommute and square to zero.
    pub fn is_odd(&self) -> bool {
        self.data.degree % 2 == 1
    }
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        self.data.set_id == other.data.set_id && self.data.ordinal == other.data.ordinal
    }
}
impl Eq for Generator {}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.data.set_id, self.data.ordinal).cmp(&(other.data.set_id, other.data.ordinal))
    }
}

impl std::hash::Hash for Generator {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.data.set_id, self.data.ordinal).hash(state);
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered family of generators with unique names.
#[derive(Debug, Clone, Default)]
pub struct GenSet {
    id: u64,
    gens: Vec<Generator>,
}

impl GenSet {
    pub fn new() -> Self {
        GenSet {
            id: NEXT_SET_ID.fetch_add(1, AtomicOrdering::Relaxed),
            gens: Vec::new(),
        }
    }

    /// Declare a generator of the given degree (>= 1).
    pub fn add(&mut self, name: &str, degree: u32) -> Result<Generator, Error> {
        self.add_impl(name, degree, None)
    }

    /// Declare a generator carrying a lower grading as well.
    pub fn add_with_lower(
        &mut self,
        name: &str,
        degree: u32,
        lower: u32,
    ) -> Result<Generator, Error> {
        self.add_impl(name, degree, Some(lower))
    }

    fn add_impl(&mut self, name: &str, degree: u32, lower: Option<u32>) -> Result<Generator, Error> {
        if degree == 0 {
            return Err(Error::InvalidDegree(name.to_string()));
        }
        if self.gens.iter().any(|g| g.name() == name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let g = Generator {
            data: Arc::new(GenData {
                set_id: self.id,
                ordinal: self.gens.len() as u32,
                name: name.to_string(),
                degree,
                lower,
            }),
        };
        self.gens.push(g.clone());
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn by_name(&self, name: &str) -> Option<&Generator> {
        self.gens.iter().find(|g| g.name() == name)
    }

    pub fn by_ordinal(&self, ordinal: u32) -> Option<&Generator> {
        self.gens.get(ordinal as usize)
    }

    pub fn contains(&self, g: &Generator) -> bool {
        g.set_id() == self.id
    }

    pub fn of_degree(&self, degree: u32) -> Vec<Generator> {
        self.gens
            .iter()
            .filter(|g| g.degree() == degree)
            .cloned()
            .collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.gens.iter().map(|g| g.degree()).min()
    }
}
