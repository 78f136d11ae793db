//! Cohomology ranks cross-checked against an independent brute-force
//! computation.
//!
//! The oracle shares nothing with the library's code path: monomials are raw
//! exponent vectors, Koszul signs are counted by transpositions, the
//! differential is expanded factor by factor, and ranks come from a naive
//! fraction-free Gaussian elimination. Agreement on every model and degree is
//! strong evidence that canonical ordering, sign handling, and the echelon
//! solver are consistent with each other.

use std::sync::Arc;

use num::rational::BigRational;
use num::{BigInt, Zero};

use sullivan::cdga::{cohomology, Limits, SullivanAlgebra};
use sullivan::gca::{Derivation, GenSet, HomDegree, Polynomial};

type Q = BigRational;
type Expt = Vec<u32>;

fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// A free graded-commutative algebra described from scratch: generator
/// degrees plus each generator's differential as (coefficient, exponents).
struct Oracle {
    degrees: Vec<u32>,
    diffs: Vec<Vec<(Q, Expt)>>,
}

impl Oracle {
    /// Exponent vectors of total degree `q`, odd generators at most once.
    fn monomials(&self, q: u32) -> Vec<Expt> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.degrees.len()];
        self.fill(0, q, &mut current, &mut out);
        out
    }

    fn fill(&self, i: usize, remaining: u32, current: &mut Expt, out: &mut Vec<Expt>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        if i == self.degrees.len() {
            return;
        }
        let d = self.degrees[i];
        let cap = if d % 2 == 1 { 1 } else { remaining / d };
        for k in (0..=cap.min(remaining / d)).rev() {
            current[i] = k;
            self.fill(i + 1, remaining - k * d, current, out);
        }
        current[i] = 0;
    }

    /// Product of two exponent vectors with its Koszul sign: each odd factor
    /// of `b` moves left past every odd factor of `a` with a larger index.
    fn mul(&self, a: &Expt, b: &Expt) -> Option<(i64, Expt)> {
        let mut swaps = 0u32;
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 || self.degrees[j] % 2 == 0 {
                continue;
            }
            if a[j] == 1 {
                return None; // odd square
            }
            for (i, &ai) in a.iter().enumerate().skip(j + 1) {
                if ai == 1 && self.degrees[i] % 2 == 1 {
                    swaps += 1;
                }
            }
        }
        let sum: Expt = a.iter().zip(b).map(|(x, y)| x + y).collect();
        Some((if swaps % 2 == 0 { 1 } else { -1 }, sum))
    }

    /// Leibniz expansion of the differential over the flat factor word.
    fn d(&self, m: &Expt) -> Vec<(Q, Expt)> {
        let mut word = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                word.push(i);
            }
        }
        let mut acc: Vec<(Q, Expt)> = Vec::new();
        for k in 0..word.len() {
            let prefix_deg: u32 = word[..k].iter().map(|&i| self.degrees[i]).sum();
            let sign = if prefix_deg % 2 == 1 { -1 } else { 1 };
            let mut prefix = vec![0u32; self.degrees.len()];
            for &i in &word[..k] {
                prefix[i] += 1;
            }
            let mut suffix = vec![0u32; self.degrees.len()];
            for &i in &word[k + 1..] {
                suffix[i] += 1;
            }
            for (c, t) in &self.diffs[word[k]] {
                let Some((s1, left)) = self.mul(&prefix, t) else {
                    continue;
                };
                let Some((s2, full)) = self.mul(&left, &suffix) else {
                    continue;
                };
                acc.push((c * q(sign * s1 * s2), full));
            }
        }
        let mut collected: Vec<(Q, Expt)> = Vec::new();
        for (c, e) in acc {
            match collected.iter_mut().find(|(_, f)| *f == e) {
                Some((total, _)) => *total += c,
                None => collected.push((c, e)),
            }
        }
        collected.retain(|(c, _)| !c.is_zero());
        collected
    }

    /// Rank of d restricted to degree `q`, by naive row elimination.
    fn diff_rank(&self, q: u32) -> usize {
        let source = self.monomials(q);
        let target = self.monomials(q + 1);
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for m in &source {
            let image = self.d(m);
            let mut row = vec![Q::zero(); target.len()];
            for (c, e) in image {
                let pos = target.iter().position(|t| *t == e).expect("degree bump");
                row[pos] += c;
            }
            rows.push(row);
        }
        let mut pivots: Vec<Vec<Q>> = Vec::new();
        for mut row in rows {
            for p in &pivots {
                let lead = p.iter().position(|c| !c.is_zero()).unwrap();
                if !row[lead].is_zero() {
                    let f = row[lead].clone() / p[lead].clone();
                    for (r, pc) in row.iter_mut().zip(p) {
                        *r -= &f * pc;
                    }
                }
            }
            if row.iter().any(|c| !c.is_zero()) {
                pivots.push(row);
            }
        }
        pivots.len()
    }

    fn h_rank(&self, q: u32) -> usize {
        let dim = self.monomials(q).len();
        let below = if q == 0 { 0 } else { self.diff_rank(q - 1) };
        dim - self.diff_rank(q) - below
    }
}

/// A matching pair: the library model and the oracle description.
struct Pair {
    label: &'static str,
    model: Arc<SullivanAlgebra>,
    oracle: Oracle,
}

fn model(degrees: &[(&str, u32)], diffs: &[(&str, &str, i64)]) -> Arc<SullivanAlgebra> {
    // diffs: (generator, product-of-generators word, integer coefficient)
    let mut gens = GenSet::new();
    for (name, deg) in degrees {
        gens.add(name, *deg).unwrap();
    }
    let mut d = Derivation::new(1);
    for (name, word, c) in diffs {
        let g = gens.by_name(name).unwrap().clone();
        let mut p = Polynomial::one();
        for f in word.split('*') {
            let fg = gens.by_name(f).unwrap();
            p = p.try_mul(&Polynomial::generator(fg)).unwrap();
        }
        d.set(&g, p.scale(&sullivan::gca::rat(*c))).unwrap();
    }
    Arc::new(SullivanAlgebra::new(gens, d).unwrap())
}

fn pairs() -> Vec<Pair> {
    vec![
        Pair {
            label: "even sphere, dimension four",
            model: model(&[("v", 4), ("w", 7)], &[("w", "v*v", 1)]),
            oracle: Oracle {
                degrees: vec![4, 7],
                diffs: vec![vec![], vec![(q(1), vec![2, 0])]],
            },
        },
        Pair {
            label: "complex projective plane",
            model: model(&[("x", 2), ("y", 5)], &[("y", "x*x*x", 1)]),
            oracle: Oracle {
                degrees: vec![2, 5],
                diffs: vec![vec![], vec![(q(1), vec![3, 0])]],
            },
        },
        Pair {
            label: "nonformal nilmanifold-style model",
            model: model(&[("v", 3), ("w", 3), ("z", 5)], &[("z", "v*w", 1)]),
            oracle: Oracle {
                degrees: vec![3, 3, 5],
                diffs: vec![vec![], vec![], vec![(q(1), vec![1, 1, 0])]],
            },
        },
        Pair {
            label: "product of odd spheres",
            model: model(&[("v3", 3), ("v5", 5)], &[]),
            oracle: Oracle {
                degrees: vec![3, 5],
                diffs: vec![vec![], vec![]],
            },
        },
        Pair {
            label: "contractible pair",
            model: model(&[("x", 2), ("y", 3)], &[("x", "y", 1)]),
            oracle: Oracle {
                degrees: vec![2, 3],
                diffs: vec![vec![(q(1), vec![0, 1])], vec![]],
            },
        },
        Pair {
            label: "two odd spheres times an even sphere",
            model: model(
                &[("a", 3), ("b", 3), ("v", 4), ("w", 7)],
                &[("w", "v*v", 1)],
            ),
            oracle: Oracle {
                degrees: vec![3, 3, 4, 7],
                diffs: vec![vec![], vec![], vec![], vec![(q(1), vec![0, 0, 2, 0])]],
            },
        },
    ]
}

#[test]
fn ranks_agree_with_the_brute_force_computation() {
    let cutoff = 12;
    for pair in pairs() {
        let h = cohomology(&*pair.model, cutoff, &Limits::default()).unwrap();
        for deg in 0..=cutoff {
            assert_eq!(
                h.ranks.rank(deg) as usize,
                pair.oracle.h_rank(deg),
                "{} disagrees in degree {}",
                pair.label,
                deg
            );
        }
    }
}

#[test]
fn oracle_differential_squares_to_zero() {
    // the oracle itself is sanity-checked: d² vanishes on every monomial
    for pair in pairs() {
        for deg in 1..=10 {
            for m in pair.oracle.monomials(deg) {
                let mut acc: Vec<(Q, Expt)> = Vec::new();
                for (c, e) in pair.oracle.d(&m) {
                    for (c2, e2) in pair.oracle.d(&e) {
                        match acc.iter_mut().find(|(_, f)| *f == e2) {
                            Some((total, _)) => *total += &c * &c2,
                            None => acc.push((&c * &c2, e2)),
                        }
                    }
                }
                assert!(
                    acc.iter().all(|(c, _)| c.is_zero()),
                    "{}: d²({:?}) is nonzero",
                    pair.label,
                    m
                );
            }
        }
    }
}

#[test]
fn representatives_are_homogeneous_cocycles() {
    for pair in pairs() {
        let h = cohomology(&*pair.model, 10, &Limits::default()).unwrap();
        for (deg, reps) in h.reps.iter().enumerate() {
            for rep in reps {
                assert!(pair.model.d(rep).unwrap().is_zero());
                assert_eq!(rep.homogeneous_degree(), HomDegree::Degree(deg as u32));
            }
        }
    }
}
