//! Exact linear algebra over the rationals.
//!
//! Everything downstream (cohomology ranks, representative cocycles, primitives,
//! complements) is phrased in terms of reduced row echelon form, so every choice
//! made here is canonical: same input, same output, no pivoting heuristics that
//! depend on magnitudes.

use num::{BigRational, Zero};

/// Dense matrix over Q, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<BigRational>>,
}

/// Result of reduced row echelon form: the reduced matrix plus its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivot_cols: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![vec![BigRational::zero(); cols]; rows],
        }
    }

    /// Build from explicit rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        QMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Build from columns (each of length `rows`).
    pub fn from_cols(rows: usize, cols: Vec<Vec<BigRational>>) -> Self {
        let mut m = QMatrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for i in 0..rows {
                m.data[i][j] = col[i].clone();
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i]
    }

    pub fn col(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.data[i][j].clone()).collect()
    }

    /// Matrix * vector.
    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        debug_assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = BigRational::zero();
                for (a, x) in row.iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form. Pivots are the first nonzero entry scanning
    /// columns left to right; pivot rows are scaled to leading 1 and cleared
    /// above and below.
    pub fn rref(&self) -> Rref {
        let mut m = self.data.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..self.cols {
                        let t = &m[r][j] * &f;
                        m[i][j] -= t;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        Rref {
            matrix: QMatrix::from_rows(m),
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivot_cols.len()
    }

    /// Echelon basis of the null space { x : A x = 0 }, one vector per free
    /// column, with the free coordinate set to 1.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let Rref { matrix, pivot_cols } = self.rref();
        let mut basis = Vec::new();
        let is_pivot = |c: usize| pivot_cols.binary_search(&c).is_ok();
        for free in (0..self.cols).filter(|&c| !is_pivot(c)) {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::from_integer(1.into());
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -matrix.at(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of A x = b with all free coordinates set to 0, or None if
    /// the system is inconsistent.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        debug_assert_eq!(b.len(), self.rows);
        let mut aug = self.data.clone();
        for (row, v) in aug.iter_mut().zip(b) {
            row.push(v.clone());
        }
        let rref = QMatrix::from_rows(aug).rref();
        if rref.pivot_cols.last().is_some_and(|&c| c == self.cols) {
            return None; // pivot in the constant column
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &pc) in rref.pivot_cols.iter().enumerate() {
            x[pc] = rref.matrix.at(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    /// Canonical (echelon) basis of the column space, as vectors of length
    /// `rows`: the nonzero rows of rref(transpose).
    pub fn column_space_basis(&self) -> Vec<Vec<BigRational>> {
        let rref = self.transpose().rref();
        (0..rref.pivot_cols.len())
            .map(|i| rref.matrix.row(i).to_vec())
            .collect()
    }
}

/// Incremental row reducer: feed vectors one at a time; reports whether each
/// vector was independent of everything fed so far and keeps a running
/// echelon basis. Used to pick complements deterministically.
pub struct SpanBuilder {
    dim: usize,
    rows: Vec<Vec<BigRational>>, // kept fully reduced, sorted by pivot column
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(dim: usize) -> Self {
        SpanBuilder {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current span; returns the residue if nonzero
    /// (normalized to leading coefficient 1) after inserting it.
    pub fn insert(&mut self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        debug_assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (wj, rj) in w.iter_mut().zip(row) {
                    let t = rj * &f;
                    *wj -= t;
                }
            }
        }
        let p = w.iter().position(|x| !x.is_zero())?;
        let inv = w[p].recip();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // clear this pivot from the stored rows to stay fully reduced
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (rj, wj) in row.iter_mut().zip(&w) {
                    let t = wj * &f;
                    *rj -= t;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w.clone());
        Some(w)
    }

    /// Does `v` lie in the current span?
    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (wj, rj) in w.iter_mut().zip(row) {
                    let t = rj * &f;
                    *wj -= t;
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }
}

/// Echelon-chosen complement: vectors extending span(`inside`) to
/// span(`inside` + `ambient`), reduced against everything accepted so far.
/// When `inside` is contained in the span of `ambient` (the only way this is
/// used), the returned vectors lie in span(`ambient`).
pub fn complement(
    dim: usize,
    inside: &[Vec<BigRational>],
    ambient: &[Vec<BigRational>],
) -> Vec<Vec<BigRational>> {
    let mut span = SpanBuilder::new(dim);
    for v in inside {
        span.insert(v);
    }
    let mut out = Vec::new();
    for v in ambient {
        if let Some(res) = span.insert(v) {
            out.push(res);
        }
    }
    out
}
