//! Exact linear algebra over the rationals: dense elimination, incremental
//! row spans, and the sparse matrices used for operator actions on
//! weight-graded modules.

use crate::rat::Rat;
use num_traits::{One, Zero};

/// Dense matrix as rows. Only used for small systems (Gram matrices,
/// Cartan kernels); no pivoting heuristics beyond first-nonzero.
pub type DenseMat = Vec<Vec<Rat>>;

/// Rank of a dense rational matrix. Consumes a copy of the input.
pub fn rank(mut m: DenseMat) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Kernel basis (as rows) of a dense rational matrix with `cols` columns.
pub fn kernel(m: &DenseMat, cols: usize) -> Vec<Vec<Rat>> {
    // Reduce to RREF, then read off the free columns.
    let mut a: DenseMat = m.clone();
    let rows = a.len();
    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let sub = &f * &a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
    }
    let pivots: Vec<usize> = pivot_col_of_row;
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `Σ_j basis[j] * γ_j = target` when `basis` columns are
/// independent and the system is consistent. Returns `None` when
/// inconsistent. `basis` entries and `target` are column vectors.
pub fn solve_in_span(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let k = basis.len();
    if k == 0 {
        return if target.iter().all(|x| x.is_zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    let n = target.len();
    // Augmented system [basis | target], columns are the unknowns.
    let mut a: DenseMat = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut r = 0;
    let mut pivot_rows = vec![usize::MAX; k];
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            return None; // basis not independent; caller bug
        };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=k {
                    let sub = &f * &a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivot_rows[c] = r;
        r += 1;
    }
    // Consistency: remaining rows must have zero in the target column.
    for i in r..n {
        if !a[i][k].is_zero() {
            return None;
        }
    }
    Some((0..k).map(|c| a[pivot_rows[c]][k].clone()).collect())
}

/// Incrementally built row space with reduced pivots; `insert` reports
/// whether the vector enlarged the span.
#[derive(Debug, Clone, Default)]
pub struct SpanBasis {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn vectors(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Reduces `v` against the basis; inserts the remainder if nonzero.
    /// Returns true when the span grew.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    let sub = &f * y;
                    *x -= sub;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].clone();
        for x in v.iter_mut() {
            *x = &*x / &inv;
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    let sub = &f * y;
                    *x -= sub;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

/// Sparse rational matrix in triplet-per-column form: `cols[j]` lists
/// `(row, coeff)` pairs with nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMat {
    pub nrows: usize,
    pub cols: Vec<Vec<(usize, Rat)>>,
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat {
            nrows: n,
            cols: (0..n).map(|j| vec![(j, Rat::one())]).collect(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn push(&mut self, row: usize, col: usize, coeff: Rat) {
        if !coeff.is_zero() {
            self.cols[col].push((row, coeff));
        }
    }

    /// Merges duplicate entries and drops zeros.
    pub fn normalize(&mut self) {
        for col in self.cols.iter_mut() {
            col.sort_by_key(|(r, _)| *r);
            let mut merged: Vec<(usize, Rat)> = Vec::with_capacity(col.len());
            for (r, c) in col.drain(..) {
                match merged.last_mut() {
                    Some((lr, lc)) if *lr == r => *lc += c,
                    _ => merged.push((r, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            *col = merged;
        }
    }

    /// Applies the matrix to a dense column vector.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(v.len(), self.ncols());
        let mut out = vec![Rat::zero(); self.nrows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, c) in &self.cols[j] {
                out[*r] += c * x;
            }
        }
        out
    }

    /// `self * other` as sparse matrices.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        debug_assert_eq!(self.ncols(), other.nrows);
        let mut out = SparseMat::zero(self.nrows, other.ncols());
        for (j, col) in other.cols.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<usize, Rat> = Default::default();
            for (k, c) in col {
                for (r, a) in &self.cols[*k] {
                    let e = acc.entry(*r).or_insert_with(Rat::zero);
                    *e += a * c;
                }
            }
            out.cols[j] = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        out
    }

    pub fn add_scaled(&self, other: &SparseMat, factor: &Rat) -> SparseMat {
        debug_assert_eq!(self.nrows, other.nrows);
        debug_assert_eq!(self.ncols(), other.ncols());
        let mut out = self.clone();
        for (j, col) in other.cols.iter().enumerate() {
            for (r, c) in col {
                out.cols[j].push((*r, factor * c));
            }
        }
        out.normalize();
        out
    }

    pub fn sub(&self, other: &SparseMat) -> SparseMat {
        self.add_scaled(other, &-Rat::one())
    }

    pub fn transpose(&self) -> SparseMat {
        let mut out = SparseMat::zero(self.ncols(), self.nrows);
        for (j, col) in self.cols.iter().enumerate() {
            for (r, c) in col {
                out.cols[*r].push((j, c.clone()));
            }
        }
        out.normalize();
        out
    }

    pub fn entry(&self, row: usize, col: usize) -> Rat {
        self.cols[col]
            .iter()
            .filter(|(r, _)| *r == row)
            .map(|(_, c)| c.clone())
            .fold(Rat::zero(), |a, b| a + b)
    }

    pub fn to_dense_rows(&self) -> DenseMat {
        let mut m = vec![vec![Rat::zero(); self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (r, c) in col {
                m[*r][j] += c.clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rank(self.to_dense_rows())
    }
}
