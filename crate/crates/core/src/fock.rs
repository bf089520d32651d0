//! Level-1 colored Fock space for the cyclic quiver: Chevalley operators by
//! colored box addition/removal, Heisenberg operators by border strips with
//! Murnaghan-Nakayama signs, Kashiwara crystal operators on charged
//! multipartitions, and the Heisenberg filtration dimensions.

use crate::error::{Error, Result};
use crate::linalg::{SpanBasis, SparseMat};
use crate::partition::{border_strip_height, partitions_of, Partition};
use crate::rat::{rint, Rat};
use num_traits::Zero;
use serde::Serialize;
use std::collections::HashMap;

/// Level-1 Fock space on the partitions of size ≤ `cap`, colored by
/// residues mod `level` with a global `charge`.
pub struct FockSpace {
    level: usize,
    charge: i64,
    cap: u64,
    basis: Vec<Partition>,
    index: HashMap<Partition, usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChevalleyKind {
    E,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrystalKind {
    /// Kashiwara annihilation operator `ẽ_i`.
    E,
    /// Kashiwara creation operator `f̃_i`.
    F,
}

impl FockSpace {
    pub fn new(level: usize, charge: i64, cap: u64) -> Result<Self> {
        if level == 0 {
            return Err(Error::domain("level must be ≥ 1"));
        }
        let mut basis = Vec::new();
        for n in 0..=cap {
            let mut of_n = partitions_of(n);
            of_n.sort();
            basis.extend(of_n);
        }
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Ok(FockSpace {
            level,
            charge,
            cap,
            basis,
            index,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Residue of a cell under this space's charge convention.
    pub fn residue(&self, cell: (usize, usize)) -> usize {
        (Partition::content(cell) + self.charge).rem_euclid(self.level as i64) as usize
    }

    /// Box-count vector of a basis partition: the `v` of its weight
    /// `ω_{charge} − Σ v_i α_i`.
    pub fn box_vector(&self, p: &Partition) -> Vec<i64> {
        p.residue_counts(self.level, self.charge)
    }

    /// `⟨wt(λ), α_i^∨⟩` for a basis partition λ.
    pub fn weight_pairing(&self, p: &Partition, i: usize) -> i64 {
        let n = self.box_vector(p);
        let l = self.level;
        let hw = if (self.charge.rem_euclid(l as i64)) as usize == i {
            1
        } else {
            0
        };
        let cartan = if l == 1 {
            0
        } else if l == 2 {
            2 * n[i] - 2 * n[1 - i]
        } else {
            2 * n[i] - n[(i + 1) % l] - n[(i + l - 1) % l]
        };
        hw - cartan
    }

    /// Chevalley operator: `f_i` sums over addable boxes of residue `i`,
    /// `e_i` over removable ones. Requires `level ≥ 2`.
    pub fn chevalley_matrix(&self, i: usize, kind: ChevalleyKind) -> Result<SparseMat> {
        if self.level < 2 {
            return Err(Error::unsupported(
                "no Chevalley generators on the level-1 Heisenberg Fock space",
            ));
        }
        if i >= self.level {
            return Err(Error::domain(format!("color {i} out of range")));
        }
        let mut m = SparseMat::zero(self.dim(), self.dim());
        for (col, lam) in self.basis.iter().enumerate() {
            match kind {
                ChevalleyKind::F => {
                    if lam.size() == self.cap {
                        continue;
                    }
                    for cell in lam.addable_cells() {
                        if self.residue(cell) == i {
                            let mu = lam.add_cell(cell.0);
                            let row = self.index[&mu];
                            m.push(row, col, rint(1));
                        }
                    }
                }
                ChevalleyKind::E => {
                    for cell in lam.removable_cells() {
                        if self.residue(cell) == i {
                            let mu = lam.remove_cell(cell.0);
                            let row = self.index[&mu];
                            m.push(row, col, rint(1));
                        }
                    }
                }
            }
        }
        m.normalize();
        Ok(m)
    }

    /// Heisenberg operator `b_k`. Negative `k` adds border strips of size
    /// `|k|` with sign `(−1)^{height}`; positive `k` is the graded
    /// transpose (strip removal with the same signs).
    pub fn heisenberg_matrix(&self, k: i64) -> Result<SparseMat> {
        if k == 0 {
            return Err(Error::domain("Heisenberg index must be nonzero"));
        }
        if k.unsigned_abs() > self.cap {
            return Err(Error::domain(format!(
                "Heisenberg index {k} exceeds the cap {}",
                self.cap
            )));
        }
        let size = k.unsigned_abs();
        let mut m = SparseMat::zero(self.dim(), self.dim());
        for (col, lam) in self.basis.iter().enumerate() {
            if lam.size() + size > self.cap {
                continue;
            }
            for mu in partitions_of(lam.size() + size) {
                if let Some(h) = border_strip_height(&mu, lam) {
                    let sign = if h % 2 == 0 { rint(1) } else { rint(-1) };
                    let row = self.index[&mu];
                    // creation entry: μ ← λ
                    m.push(row, col, sign);
                }
            }
        }
        m.normalize();
        if k < 0 {
            Ok(m)
        } else {
            Ok(m.transpose())
        }
    }
}

/// Kashiwara crystal operator on a charged multipartition for the affine
/// color modulus `modulus`. Boxes of residue `i` are read component-major
/// by increasing index and, inside each component, by decreasing content;
/// the reduced signature rule then picks the leftmost `+` for `f̃` and the
/// rightmost `−` for `ẽ`. Returns `None` at a signature-zero vertex.
pub fn crystal_op(
    modulus: usize,
    mu: &[Partition],
    multicharge: &[i64],
    i: usize,
    kind: CrystalKind,
) -> Result<Option<Vec<Partition>>> {
    if modulus < 2 {
        return Err(Error::domain("crystal modulus must be ≥ 2"));
    }
    if mu.len() != multicharge.len() {
        return Err(Error::Dimension {
            expected: mu.len(),
            got: multicharge.len(),
        });
    }
    if i >= modulus {
        return Err(Error::domain(format!("color {i} out of range")));
    }
    // Signed word of addable (+) and removable (−) i-boxes.
    #[derive(Clone, Copy)]
    struct Entry {
        component: usize,
        row: usize,
        addable: bool,
    }
    let mut word: Vec<Entry> = Vec::new();
    for (m, (part, &charge)) in mu.iter().zip(multicharge).enumerate() {
        let mut boxes: Vec<(i64, Entry)> = Vec::new();
        for cell in part.addable_cells() {
            let res = (Partition::content(cell) + charge).rem_euclid(modulus as i64) as usize;
            if res == i {
                boxes.push((
                    Partition::content(cell),
                    Entry {
                        component: m,
                        row: cell.0,
                        addable: true,
                    },
                ));
            }
        }
        for cell in part.removable_cells() {
            let res = (Partition::content(cell) + charge).rem_euclid(modulus as i64) as usize;
            if res == i {
                boxes.push((
                    Partition::content(cell),
                    Entry {
                        component: m,
                        row: cell.0,
                        addable: false,
                    },
                ));
            }
        }
        boxes.sort_by_key(|(content, _)| -content);
        word.extend(boxes.into_iter().map(|(_, e)| e));
    }
    // Cancel adjacent "+ −" pairs until none remain.
    let mut reduced: Vec<Entry> = Vec::new();
    for e in word {
        if !e.addable {
            if let Some(last) = reduced.last() {
                if last.addable {
                    reduced.pop();
                    continue;
                }
            }
        }
        reduced.push(e);
    }
    let chosen = match kind {
        CrystalKind::F => reduced.iter().find(|e| e.addable),
        CrystalKind::E => reduced.iter().rev().find(|e| !e.addable),
    };
    let Some(entry) = chosen else {
        return Ok(None);
    };
    let mut out = mu.to_vec();
    out[entry.component] = match kind {
        CrystalKind::F => out[entry.component].add_cell(entry.row),
        CrystalKind::E => out[entry.component].remove_cell(entry.row),
    };
    Ok(Some(out))
}

/// Dimensions of the nested Heisenberg filtration spans at one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub degree: u64,
    pub m: u64,
    pub r: usize,
    pub dims: Vec<u64>,
}

/// Nested spans `F_j` at degree `n` in `F^{⊗r}` (diagonal Heisenberg):
/// `F_j` is spanned by images of `b_{−m j_1} … b_{−m j_k}` over degrees
/// below, with `(rm − 1)(j_1 + … + j_k) ≥ j`. The `ℓ = 1` Fock space
/// carries only this Heisenberg surface.
pub fn heis_filtration_dims(
    fock: &FockSpace,
    m: u64,
    r: usize,
    n: u64,
) -> Result<FiltrationReport> {
    if fock.level() != 1 {
        return Err(Error::unsupported(
            "filtration dimensions are defined on the level-1 Fock space",
        ));
    }
    if m < 2 {
        return Err(Error::domain("m must be ≥ 2"));
    }
    if r < 1 {
        return Err(Error::domain("r must be ≥ 1"));
    }
    if n > fock.cap() {
        return Err(Error::resource(format!(
            "degree {n} exceeds the cap {}",
            fock.cap()
        )));
    }

    // Basis of r-tuples of partitions by total degree.
    let tuples_by_degree: Vec<Vec<Vec<Partition>>> = (0..=n)
        .map(|d| multipartitions_of(d, r))
        .collect();
    let index_at: Vec<HashMap<Vec<Partition>, usize>> = tuples_by_degree
        .iter()
        .map(|tuples| {
            tuples
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, t)| (t, i))
                .collect()
        })
        .collect();

    // Diagonal creation operator b^Δ_{−k} from degree d to degree d+k.
    let apply_creation = |k: u64, d: u64, vec: &[Rat]| -> Vec<Rat> {
        let target = (d + k) as usize;
        let mut out = vec![Rat::zero(); tuples_by_degree[target].len()];
        for (src_idx, tuple) in tuples_by_degree[d as usize].iter().enumerate() {
            if vec[src_idx].is_zero() {
                continue;
            }
            for comp in 0..r {
                for mu in partitions_of(tuple[comp].size() + k) {
                    if let Some(h) = border_strip_height(&mu, &tuple[comp]) {
                        let mut new_tuple = tuple.clone();
                        new_tuple[comp] = mu;
                        let row = index_at[target][&new_tuple];
                        let sign = if h % 2 == 0 { rint(1) } else { rint(-1) };
                        out[row] += sign * &vec[src_idx];
                    }
                }
            }
        }
        out
    };

    let top_dim = tuples_by_degree[n as usize].len();
    let q = n / m;
    // span_s = span of images of all monomials with Σ j = s at degree n.
    let mut spans: Vec<SpanBasis> = (0..=q).map(|_| SpanBasis::new()).collect();
    // Enumerate multisets j_1 ≥ … ≥ j_k ≥ 1 with m·Σj ≤ n.
    let mut stack: Vec<Vec<u64>> = vec![vec![]];
    while let Some(js) = stack.pop() {
        let total: u64 = js.iter().sum();
        if !js.is_empty() {
            // Apply Π b_{−m j_t} to every basis tuple at degree n − mΣj.
            let src_deg = n - m * total;
            let src_dim = tuples_by_degree[src_deg as usize].len();
            for b in 0..src_dim {
                let mut vec = vec![Rat::zero(); src_dim];
                vec[b] = rint(1);
                let mut deg = src_deg;
                for &j in js.iter().rev() {
                    vec = apply_creation(m * j, deg, &vec);
                    deg += m * j;
                }
                spans[total as usize].insert(vec);
            }
        }
        let max_next = if js.is_empty() { q } else { *js.last().unwrap() };
        for next in 1..=max_next {
            if m * (total + next) <= n {
                let mut ext = js.clone();
                ext.push(next);
                stack.push(ext);
            }
        }
    }

    // Cumulative spans from large Σj down; F_j needs Σj ≥ ceil(j/(rm−1)).
    let mut cumulative: Vec<SpanBasis> = vec![SpanBasis::new(); (q + 1) as usize];
    for s in (1..=q as usize).rev() {
        let mut acc = if s == q as usize {
            SpanBasis::new()
        } else {
            cumulative[s + 1].clone()
        };
        for v in spans[s].vectors() {
            acc.insert(v.to_vec());
        }
        cumulative[s] = acc;
    }

    let rm1 = (r as u64) * m - 1;
    let mut dims = Vec::new();
    for j in 0..=(rm1 * q + 1) {
        let dim = if j == 0 {
            top_dim as u64
        } else {
            let s_min = j.div_ceil(rm1);
            if s_min > q {
                0
            } else {
                cumulative[s_min as usize].dim() as u64
            }
        };
        dims.push(dim);
    }
    Ok(FiltrationReport {
        degree: n,
        m,
        r,
        dims,
    })
}

fn multipartitions_of(n: u64, r: usize) -> Vec<Vec<Partition>> {
    if r == 1 {
        let mut ps = partitions_of(n);
        ps.sort();
        return ps.into_iter().map(|p| vec![p]).collect();
    }
    let mut out = Vec::new();
    for first in 0..=n {
        let mut heads = partitions_of(first);
        heads.sort();
        for head in heads {
            for tail in multipartitions_of(n - first, r - 1) {
                let mut t = vec![head.clone()];
                t.extend(tail);
                out.push(t);
            }
        }
    }
    out
}

/// The support bound `w·v − (v,v)/2 − s(w̄ m − 1)` with `w̄ = Σ_k w_k`.
pub fn o_support_bound(
    q: &crate::quiver::Quiver,
    v: &[i64],
    w: &[i64],
    m: i64,
    s: i64,
) -> Result<i64> {
    let norm = crate::quiver::tits_form(q, v, v)?;
    if w.len() != q.vertex_count() {
        return Err(Error::Dimension {
            expected: q.vertex_count(),
            got: w.len(),
        });
    }
    let wv: i64 = w.iter().zip(v).map(|(a, b)| a * b).sum();
    let wbar: i64 = w.iter().sum();
    Ok(wv - norm / 2 - s * (wbar * m - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn fock(level: usize, cap: u64) -> FockSpace {
        FockSpace::new(level, 0, cap).unwrap()
    }

    #[test]
    fn chevalley_f0_on_vacuum() {
        let f = fock(2, 4);
        let m = f.chevalley_matrix(0, ChevalleyKind::F).unwrap();
        let vac = f.index_of(&Partition::empty()).unwrap();
        let one = f.index_of(&p(&[1])).unwrap();
        assert_eq!(m.entry(one, vac), rint(1));
        assert_eq!(m.cols[vac].len(), 1);
    }

    #[test]
    fn chevalley_f1_on_single_box() {
        let f = fock(2, 4);
        let m = f.chevalley_matrix(1, ChevalleyKind::F).unwrap();
        let one = f.index_of(&p(&[1])).unwrap();
        let two = f.index_of(&p(&[2])).unwrap();
        let col = f.index_of(&p(&[1, 1])).unwrap();
        assert_eq!(m.entry(two, one), rint(1));
        assert_eq!(m.entry(col, one), rint(1));
        assert_eq!(m.cols[one].len(), 2);
    }

    #[test]
    fn chevalley_level_one_rejected() {
        let f = fock(1, 4);
        assert!(f.chevalley_matrix(0, ChevalleyKind::F).is_err());
    }

    #[test]
    fn chevalley_commutator_is_weight() {
        // [e_i, f_i] acts diagonally by the α_i-weight pairing on degrees
        // where f_i does not overflow the cap.
        for level in [2usize, 3] {
            let f = FockSpace::new(level, 0, 6).unwrap();
            for i in 0..level {
                let e = f.chevalley_matrix(i, ChevalleyKind::E).unwrap();
                let fi = f.chevalley_matrix(i, ChevalleyKind::F).unwrap();
                let commutator = e.mul(&fi).sub(&fi.mul(&e));
                for (col, lam) in f.basis().iter().enumerate() {
                    if lam.size() + 1 > f.cap() {
                        continue;
                    }
                    let expected = f.weight_pairing(lam, i);
                    for row in 0..f.dim() {
                        let got = commutator.entry(row, col);
                        let want = if row == col { rint(expected) } else { rint(0) };
                        assert_eq!(got, want, "[e,f] at λ={lam} level={level}");
                    }
                }
            }
        }
    }

    #[test]
    fn heisenberg_examples() {
        let f = fock(1, 6);
        let b_minus1 = f.heisenberg_matrix(-1).unwrap();
        let vac = f.index_of(&Partition::empty()).unwrap();
        assert_eq!(b_minus1.entry(f.index_of(&p(&[1])).unwrap(), vac), rint(1));
        let b_minus2 = f.heisenberg_matrix(-2).unwrap();
        assert_eq!(b_minus2.entry(f.index_of(&p(&[2])).unwrap(), vac), rint(1));
        assert_eq!(
            b_minus2.entry(f.index_of(&p(&[1, 1])).unwrap(), vac),
            rint(-1)
        );
    }

    #[test]
    fn heisenberg_relations() {
        let f = fock(1, 7);
        for j in 1..=3i64 {
            for k in 1..=3i64 {
                let bj = f.heisenberg_matrix(j).unwrap();
                let bmk = f.heisenberg_matrix(-k).unwrap();
                let com = bj.mul(&bmk).sub(&bmk.mul(&bj));
                // Valid on degrees ≤ cap − j − k.
                for (col, lam) in f.basis().iter().enumerate() {
                    if lam.size() + j.unsigned_abs() + k.unsigned_abs() > f.cap() {
                        continue;
                    }
                    for row in 0..f.dim() {
                        let want = if row == col && j == k { rint(j) } else { rint(0) };
                        assert_eq!(com.entry(row, col), want, "[b_{j}, b_{{-{k}}}]");
                    }
                }
                // creation operators commute
                let bmj = f.heisenberg_matrix(-j).unwrap();
                let com2 = bmj.mul(&bmk).sub(&bmk.mul(&bmj));
                for (col, lam) in f.basis().iter().enumerate() {
                    if lam.size() + j.unsigned_abs() + k.unsigned_abs() > f.cap() {
                        continue;
                    }
                    for row in 0..f.dim() {
                        assert_eq!(com2.entry(row, col), rint(0));
                    }
                }
            }
        }
    }

    #[test]
    fn operators_shift_weights_correctly() {
        let f = fock(2, 5);
        for i in 0..2 {
            let m = f.chevalley_matrix(i, ChevalleyKind::F).unwrap();
            for (col, lam) in f.basis().iter().enumerate() {
                for (row, _) in &m.cols[col] {
                    let mu = &f.basis()[*row];
                    let mut expected = f.box_vector(lam);
                    expected[i] += 1;
                    assert_eq!(f.box_vector(mu), expected);
                }
            }
        }
    }

    #[test]
    fn extremal_weight_spaces_are_cores() {
        // Weight multiplicity 1 exactly on 2-core partitions.
        let f = fock(2, 6);
        let mut by_box: HashMap<Vec<i64>, Vec<&Partition>> = HashMap::new();
        for lam in f.basis() {
            by_box.entry(f.box_vector(lam)).or_default().push(lam);
        }
        for (_, group) in by_box {
            if group.len() == 1 {
                assert!(group[0].is_core(2), "singleton weight not a core: {}", group[0]);
            } else {
                for lam in group {
                    assert!(!lam.is_core(2));
                }
            }
        }
    }

    #[test]
    fn crystal_examples() {
        // ℓ=2, charge (0): f̃_0(∅) = (1)
        let out = crystal_op(2, &[Partition::empty()], &[0], 0, CrystalKind::F)
            .unwrap()
            .unwrap();
        assert_eq!(out, vec![p(&[1])]);
        // ẽ_i(∅) = null
        for i in 0..2 {
            assert!(crystal_op(2, &[Partition::empty()], &[0], i, CrystalKind::E)
                .unwrap()
                .is_none());
        }
        // f̃_1((1)) lands in {(2),(1,1)} and ẽ_1 inverts it.
        let out = crystal_op(2, &[p(&[1])], &[0], 1, CrystalKind::F)
            .unwrap()
            .unwrap();
        assert!(out == vec![p(&[2])] || out == vec![p(&[1, 1])]);
        let back = crystal_op(2, &out, &[0], 1, CrystalKind::E).unwrap().unwrap();
        assert_eq!(back, vec![p(&[1])]);
    }

    #[test]
    fn crystal_inverse_law_exhaustive() {
        // ẽ_i ∘ f̃_i = id wherever f̃_i is defined, level 1 and 2.
        for modulus in [2usize, 3] {
            for n in 0..=6u64 {
                for lam in partitions_of(n) {
                    for i in 0..modulus {
                        if let Some(out) =
                            crystal_op(modulus, &[lam.clone()], &[0], i, CrystalKind::F).unwrap()
                        {
                            let back =
                                crystal_op(modulus, &out, &[0], i, CrystalKind::E)
                                    .unwrap()
                                    .unwrap();
                            assert_eq!(back, vec![lam.clone()]);
                        }
                    }
                }
            }
            // level-2 multipartitions of small size
            for a in 0..=3u64 {
                for b in 0..=(3 - a) {
                    for la in partitions_of(a) {
                        for lb in partitions_of(b) {
                            let mu = vec![la.clone(), lb.clone()];
                            for i in 0..modulus {
                                if let Some(out) = crystal_op(
                                    modulus,
                                    &mu,
                                    &[0, 1],
                                    i,
                                    CrystalKind::F,
                                )
                                .unwrap()
                                {
                                    let back = crystal_op(
                                        modulus,
                                        &out,
                                        &[0, 1],
                                        i,
                                        CrystalKind::E,
                                    )
                                    .unwrap()
                                    .unwrap();
                                    assert_eq!(back, mu);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn filtration_m2_degree2() {
        let f = fock(1, 6);
        let report = heis_filtration_dims(&f, 2, 1, 2).unwrap();
        assert_eq!(report.dims, vec![2, 1, 0]);
    }

    #[test]
    fn filtration_m_larger_than_degree() {
        let f = fock(1, 6);
        let report = heis_filtration_dims(&f, 4, 1, 3).unwrap();
        assert_eq!(report.dims[0], 3); // p(3)
        assert!(report.dims[1..].iter().all(|&d| d == 0));
    }

    #[test]
    fn filtration_weakly_decreasing_and_full_at_zero() {
        let f = fock(1, 8);
        for m in 2..=3u64 {
            for n in 0..=6u64 {
                for r in 1..=2usize {
                    let report = heis_filtration_dims(&f, m, r, n).unwrap();
                    assert!(report.dims.windows(2).all(|w| w[0] >= w[1]));
                    assert_eq!(*report.dims.last().unwrap(), 0);
                    // dims[0] counts the r-multipartitions of n
                    let full: u64 = if r == 1 {
                        partitions_of(n).len() as u64
                    } else {
                        (0..=n)
                            .map(|a| {
                                (partitions_of(a).len() * partitions_of(n - a).len()) as u64
                            })
                            .sum()
                    };
                    assert_eq!(report.dims[0], full);
                }
            }
        }
    }

    #[test]
    fn support_bound_examples() {
        let jordan = Quiver::new(1, vec![(0, 0)]).unwrap();
        for n in 0..5 {
            for (m, s) in [(2, 0), (2, 1), (3, 2)] {
                assert_eq!(
                    o_support_bound(&jordan, &[n], &[1], m, s).unwrap(),
                    n - s * (m - 1)
                );
            }
        }
        let cyclic2 = Quiver::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            o_support_bound(&cyclic2, &[2, 2], &[1, 0], 2, 1).unwrap(),
            1
        );
    }
}
