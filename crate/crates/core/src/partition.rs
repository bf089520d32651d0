//! Integer partitions and the box combinatorics (corners, contents,
//! border strips, hooks) shared by the Fock-space model and the
//! wall-crossing combinatorics.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A partition: weakly decreasing positive parts. The empty partition is
/// `Partition(vec![])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u64>);

impl Partition {
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!(
                "parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part at 1-based row `r`, zero beyond the last row.
    pub fn part(&self, r: usize) -> u64 {
        if r == 0 || r > self.0.len() {
            0
        } else {
            self.0[r - 1]
        }
    }

    pub fn transpose(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0] as usize;
        let t: Vec<u64> = (1..=cols)
            .map(|c| self.0.iter().filter(|&&p| p >= c as u64).count() as u64)
            .collect();
        Partition(t)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.len()).all(|r| self.part(r) >= other.part(r))
    }

    /// Cells `(row, col)` (1-based) of the diagram.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (r, &p) in self.0.iter().enumerate() {
            for c in 1..=p as usize {
                out.push((r + 1, c));
            }
        }
        out
    }

    /// Addable corners `(row, col)` in increasing row order.
    pub fn addable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(1, self.part(1) as usize + 1)];
        for r in 2..=self.len() {
            if self.part(r) < self.part(r - 1) {
                out.push((r, self.part(r) as usize + 1));
            }
        }
        if !self.is_empty() {
            out.push((self.len() + 1, 1));
        }
        out
    }

    /// Removable corners `(row, col)` in increasing row order.
    pub fn removable_cells(&self) -> Vec<(usize, usize)> {
        (1..=self.len())
            .filter(|&r| self.part(r) > self.part(r + 1))
            .map(|r| (r, self.part(r) as usize))
            .collect()
    }

    pub fn add_cell(&self, row: usize) -> Partition {
        let mut parts = self.0.clone();
        if row == self.len() + 1 {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Partition(parts)
    }

    pub fn remove_cell(&self, row: usize) -> Partition {
        let mut parts = self.0.clone();
        parts[row - 1] -= 1;
        parts.retain(|&p| p > 0);
        Partition(parts)
    }

    /// Content `col − row` of a 1-based cell.
    pub fn content(cell: (usize, usize)) -> i64 {
        cell.1 as i64 - cell.0 as i64
    }

    /// Residue class counts: `counts[i]` is the number of cells with
    /// `(content + charge) mod level == i`.
    pub fn residue_counts(&self, level: usize, charge: i64) -> Vec<i64> {
        let mut counts = vec![0i64; level];
        for cell in self.cells() {
            let r = (Self::content(cell) + charge).rem_euclid(level as i64) as usize;
            counts[r] += 1;
        }
        counts
    }

    /// Hook length of cell `(r, c)`.
    pub fn hook_length(&self, r: usize, c: usize) -> u64 {
        let arm = self.part(r) - c as u64;
        let leg = self.transpose().part(c) - r as u64;
        arm + leg + 1
    }

    /// No hook of length divisible by `l`.
    pub fn is_core(&self, l: u64) -> bool {
        self.cells()
            .into_iter()
            .all(|(r, c)| !self.hook_length(r, c).is_multiple_of(l))
    }

    /// `e`-regular: no part repeated `e` or more times.
    pub fn is_regular(&self, e: u64) -> bool {
        if e == 0 {
            return false;
        }
        let mut run = 1u64;
        for w in self.0.windows(2) {
            if w[0] == w[1] {
                run += 1;
                if run >= e {
                    return false;
                }
            } else {
                run = 1;
            }
        }
        self.0.is_empty() || run < e
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, lexicographically decreasing.
pub fn partitions_of(n: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur: Vec<u64> = Vec::new();
    fn rec(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let top = max.min(n);
        for p in (1..=top).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// If `outer/inner` is a border strip (connected skew shape with no 2×2
/// square), returns its height (number of rows spanned minus one).
pub fn border_strip_height(outer: &Partition, inner: &Partition) -> Option<usize> {
    if !outer.contains(inner) || outer.size() == inner.size() {
        return None;
    }
    let rows = outer.len();
    // Skew cells per row.
    let mut present_rows = Vec::new();
    for r in 1..=rows {
        let lo = inner.part(r) as usize; // columns lo+1 ..= hi
        let hi = outer.part(r) as usize;
        if hi > lo {
            present_rows.push((r, lo + 1, hi));
        }
    }
    // No 2×2: cell (r,c) and (r+1,c) and (r,c+1) and (r+1,c+1) never all in.
    // Connectivity + strip shape: consecutive occupied rows must overlap in
    // exactly one column boundary: the strip in row r+1 must end exactly one
    // column left of where row r starts, i.e. hi_{r+1} == lo_r ... for a
    // border strip read NE→SW, row r occupies columns [a_r, b_r] with
    // b_{r+1} = a_r − 1 forbidden; correct condition: a_r = b_{r+1} means
    // they share a column (vertical adjacency), and a_r > b_{r+1} breaks
    // connectivity, a_r < b_{r+1} creates a 2×2.
    for win in present_rows.windows(2) {
        let (r1, a1, _b1) = win[0];
        let (r2, _a2, b2) = win[1];
        if r2 != r1 + 1 {
            return None; // gap: disconnected
        }
        if b2 != a1 {
            return None; // either disconnected or contains a 2×2 square
        }
    }
    Some(present_rows.len().saturating_sub(1))
}
