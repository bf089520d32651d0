//! The Mullineux involution on e-regular partitions (via the rim-hook
//! symbol recursion) and the combinatorial wall-crossing bijection
//! `ν = mν' + ν'' ↦ (mν'^t + M(ν''))^t`, with the Mullineux factor acting
//! on the corestricted part through conjugation.

use crate::error::{Error, Result};
use crate::partition::Partition;

/// `ν` is m-corestricted when every row difference `ν_j − ν_{j+1}` is `< m`
/// (equivalently the transpose is m-regular).
pub fn is_corestricted(nu: &Partition, m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let parts = nu.parts();
    for j in 0..parts.len() {
        let next = if j + 1 < parts.len() { parts[j + 1] } else { 0 };
        if parts[j] - next >= m {
            return false;
        }
    }
    true
}

/// The unique rowwise decomposition `ν = m·ν' + ν''` with both parts
/// partitions and `ν''` m-corestricted, by Euclidean division of the
/// successive row differences.
pub fn m_adic_row_decompose(nu: &Partition, m: u64) -> Result<(Partition, Partition)> {
    if m < 2 {
        return Err(Error::domain("modulus must be ≥ 2"));
    }
    let parts = nu.parts();
    let rows = parts.len();
    let mut quot = vec![0u64; rows];
    let mut rem = vec![0u64; rows];
    // Partial-sum the divided differences from the bottom row up.
    let mut q_acc = 0u64;
    let mut r_acc = 0u64;
    for j in (0..rows).rev() {
        let next = if j + 1 < rows { parts[j + 1] } else { 0 };
        let d = parts[j] - next;
        q_acc += d / m;
        r_acc += d % m;
        quot[j] = q_acc;
        rem[j] = r_acc;
    }
    let nu1 = Partition::new(quot)?;
    let nu2 = Partition::new(rem)?;
    debug_assert!(is_corestricted(&nu2, m));
    Ok((nu1, nu2))
}

/// Rim cells of `λ` in the NE → SW walk order.
fn rim_walk(lam: &Partition) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 1..=lam.len() {
        let hi = lam.part(r) as usize;
        let lo = (lam.part(r + 1) as usize).max(1);
        for c in (lo..=hi).rev() {
            out.push((r, c));
        }
    }
    out
}

/// The e-rim: segments of `e` rim cells; after each complete segment the
/// walk restarts at the rightmost rim cell of the next row down.
fn e_rim(lam: &Partition, e: u64) -> Vec<(usize, usize)> {
    let rim = rim_walk(lam);
    let mut out = Vec::new();
    let mut idx = 0;
    while idx < rim.len() {
        let mut taken = 0;
        let mut row_end = rim[idx].0;
        while idx < rim.len() && taken < e {
            row_end = rim[idx].0;
            out.push(rim[idx]);
            taken += 1;
            idx += 1;
        }
        while idx < rim.len() && rim[idx].0 <= row_end {
            idx += 1;
        }
    }
    out
}

/// Removes the e-rim; the removed cells form a suffix of each touched row.
fn remove_e_rim(lam: &Partition, e: u64) -> Result<(Partition, u64, u64)> {
    let rim = e_rim(lam, e);
    let mut removed_per_row = vec![0u64; lam.len()];
    for (r, _) in &rim {
        removed_per_row[r - 1] += 1;
    }
    let new_parts: Vec<u64> = lam
        .parts()
        .iter()
        .zip(&removed_per_row)
        .map(|(p, rm)| p - rm)
        .collect();
    let stripped = Partition::new(new_parts)
        .map_err(|_| Error::domain("e-rim removal left a non-partition shape"))?;
    Ok((stripped, rim.len() as u64, lam.len() as u64))
}

/// The Mullineux symbol: `(a_i; r_i)` are the e-rim sizes and row counts
/// along the peeling recursion.
pub fn mullineux_symbol(nu: &Partition, e: u64) -> Result<Vec<(u64, u64)>> {
    let mut out = Vec::new();
    let mut cur = nu.clone();
    while !cur.is_empty() {
        let (next, a, r) = remove_e_rim(&cur, e)?;
        out.push((a, r));
        cur = next;
    }
    Ok(out)
}

/// Inverse of one peeling step: the unique partition with `rows` rows
/// containing `inner` whose e-rim removal gives exactly `inner`.
fn add_e_rim(inner: &Partition, e: u64, size: u64, rows: u64) -> Result<Partition> {
    let total = inner.size() + size;
    let mut found: Option<Partition> = None;
    // Enumerate candidates with exactly `rows` rows containing `inner`.
    let mut stack: Vec<Vec<u64>> = vec![vec![]];
    while let Some(partial) = stack.pop() {
        let used: u64 = partial.iter().sum();
        let depth = partial.len();
        if depth == rows as usize {
            if used != total {
                continue;
            }
            let cand = Partition::new(partial.clone())?;
            if !cand.contains(inner) || inner.len() > cand.len() {
                continue;
            }
            if let Ok((stripped, a, r)) = remove_e_rim(&cand, e) {
                if stripped == *inner && a == size && r == rows {
                    if let Some(prev) = &found {
                        if *prev != cand {
                            return Err(Error::domain(
                                "ambiguous rim reconstruction; symbol invalid",
                            ));
                        }
                    } else {
                        found = Some(cand);
                    }
                }
            }
            continue;
        }
        let remaining_rows = rows as usize - depth;
        let prev_max = partial.last().copied().unwrap_or(total);
        let min_here = inner.part(depth + 1).max(1);
        for next in min_here..=prev_max {
            let used_after = used + next;
            // Remaining rows each need ≥ 1 cell and can hold ≤ next each.
            let rest = remaining_rows as u64 - 1;
            if used_after + rest > total {
                continue;
            }
            if used_after + rest * next < total {
                continue;
            }
            let mut ext = partial.clone();
            ext.push(next);
            stack.push(ext);
        }
    }
    found.ok_or_else(|| Error::domain("no partition realizes the rim symbol entry"))
}

/// The Mullineux involution on e-regular partitions via the symbol
/// recursion: peel e-rims recording `(a_i, r_i)`, rebuild with row counts
/// `s_i = a_i − r_i + ε_i` where `ε_i = 1` unless `e | a_i`.
pub fn mullineux(nu: &Partition, e: u64) -> Result<Partition> {
    if e < 2 {
        return Err(Error::domain("modulus must be ≥ 2"));
    }
    if !nu.is_regular(e) {
        return Err(Error::domain(format!("{nu} is not {e}-regular")));
    }
    let symbol = mullineux_symbol(nu, e)?;
    let mut cur = Partition::empty();
    for &(a, r) in symbol.iter().rev() {
        let eps = u64::from(a % e != 0);
        let s = a - r + eps;
        cur = add_e_rim(&cur, e, a, s)?;
    }
    Ok(cur)
}

/// Mullineux transported to m-corestricted partitions by conjugation.
pub fn mullineux_corestricted(nu: &Partition, m: u64) -> Result<Partition> {
    Ok(mullineux(&nu.transpose(), m)?.transpose())
}

/// Rowwise sum of two partitions.
fn row_sum(a: &Partition, b: &Partition) -> Partition {
    let rows = a.len().max(b.len());
    let parts: Vec<u64> = (1..=rows).map(|r| a.part(r) + b.part(r)).collect();
    Partition::new(parts).expect("sum of weakly decreasing sequences is weakly decreasing")
}

fn scale(a: &Partition, m: u64) -> Partition {
    Partition::new(a.parts().iter().map(|p| p * m).collect())
        .expect("scaling preserves monotonicity")
}

/// The combinatorial wall-crossing bijection at denominator `m`:
/// `ν = mν' + ν'' ↦ (m·ν'^t + M(ν''))^t`, where the Mullineux factor acts
/// on the corestricted part through its (m-regular) transpose.
pub fn wallcross_map(nu: &Partition, m: u64) -> Result<Partition> {
    let (nu1, nu2) = m_adic_row_decompose(nu, m)?;
    let m_part = mullineux_corestricted(&nu2, m)?;
    Ok(row_sum(&scale(&nu1.transpose(), m), &m_part).transpose())
}
