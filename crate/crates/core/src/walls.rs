//! Wall and chamber arrangements in stability and quantization-parameter
//! space: classical walls, quantum walls, slice quivers with their
//! quantized restriction maps, singular-hyperplane generators pulled back
//! from slice oracles, translation-equivalence hyperplanes, and the
//! perverse-filtration constants of the affine wall-crossing.

use crate::error::{Error, Result};
use crate::quiver::{p_value, roots_bounded, tits_form, DimVec, Quiver, Root, RootKind};
use crate::rat::{dot_rv, is_integral, rat, rint, Rat};
use crate::weights::rho_vector;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WallSpace {
    Theta,
    Lambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WallProvenance {
    Classical,
    Quantum,
    SingularConjecture,
    Translation,
}

/// An affine rational hyperplane `{x | normal·x = offset}`, normalized so
/// the normal is a primitive integer vector whose first nonzero entry is
/// positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub normal: DimVec,
    #[serde(serialize_with = "crate::walls::serialize_rat")]
    pub offset: Rat,
    pub space: WallSpace,
    pub provenance: WallProvenance,
}

pub(crate) fn serialize_rat<S: serde::Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rat::rat_to_string(x))
}

impl Hyperplane {
    /// Builds a normalized hyperplane from any nonzero rational normal.
    pub fn new(
        normal: &[i64],
        offset: Rat,
        space: WallSpace,
        provenance: WallProvenance,
    ) -> Result<Self> {
        if normal.iter().all(|&x| x == 0) {
            return Err(Error::domain("hyperplane normal must be nonzero"));
        }
        let mut g: i64 = 0;
        for &x in normal {
            g = g.gcd(&x);
        }
        let first = normal.iter().find(|&&x| x != 0).unwrap();
        let sign = if *first < 0 { -1 } else { 1 };
        let scale = g * sign;
        let nrm: DimVec = normal.iter().map(|&x| x / scale).collect();
        let off = offset / rint(scale);
        Ok(Hyperplane {
            normal: nrm,
            offset: off,
            space,
            provenance,
        })
    }

    fn sort_key(&self) -> (DimVec, Rat) {
        (self.normal.clone(), self.offset.clone())
    }
}

fn dedup_sorted(mut walls: Vec<Hyperplane>) -> Vec<Hyperplane> {
    walls.sort_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).unwrap());
    walls.dedup_by(|a, b| a.normal == b.normal && a.offset == b.offset);
    walls
}

/// Classical walls in θ-space: one hyperplane `θ·v' = 0` per root
/// `v' ≤ v`, deduplicated by normalization.
pub fn classical_walls(q: &Quiver, v: &[i64], w: &[i64]) -> Result<Vec<Hyperplane>> {
    if w.len() != q.vertex_count() {
        return Err(Error::Dimension {
            expected: q.vertex_count(),
            got: w.len(),
        });
    }
    let mut out = Vec::new();
    for root in roots_bounded(q, v)? {
        out.push(Hyperplane::new(
            &root.vector,
            Rat::zero(),
            WallSpace::Theta,
            WallProvenance::Classical,
        )?);
    }
    Ok(dedup_sorted(out))
}

/// Quantum walls for λ: all roots `α ≤ v` (real and imaginary) with
/// `λ·α ∈ Z`.
pub fn quantum_walls(q: &Quiver, v: &[i64], lambda: &[Rat]) -> Result<Vec<Root>> {
    if lambda.len() != q.vertex_count() {
        return Err(Error::Dimension {
            expected: q.vertex_count(),
            got: lambda.len(),
        });
    }
    Ok(roots_bounded(q, v)?
        .into_iter()
        .filter(|r| is_integral(&dot_rv(lambda, &r.vector)))
        .collect())
}

/// Slice quiver data at a decomposition `v = v^0 + Σ n_i v^i`.
#[derive(Debug, Clone, Serialize)]
pub struct SliceData {
    pub hat_quiver: Quiver,
    pub hat_v: DimVec,
    pub hat_w: DimVec,
    /// Linear part of the restriction map: row `i` is `v^i`.
    pub restriction_rows: Vec<DimVec>,
    /// Affine offset: `r̂(λ) = restriction_rows·λ + offset`.
    #[serde(serialize_with = "serialize_rat_vec")]
    pub offset: Vec<Rat>,
}

fn serialize_rat_vec<S: serde::Serializer>(
    xs: &[Rat],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&crate::rat::rat_to_string(x))?;
    }
    seq.end()
}

impl SliceData {
    /// Evaluates the quantized restriction map `r̂(λ)`.
    pub fn restrict(&self, lambda: &[Rat]) -> Vec<Rat> {
        self.restriction_rows
            .iter()
            .zip(&self.offset)
            .map(|(row, off)| dot_rv(lambda, row) + off)
            .collect()
    }
}

/// Builds the slice quiver `(Q̂, v̂, ŵ)` of a decomposition together with
/// the quantized restriction map `r̂(λ) = r(λ − ϱ(v)) + ϱ̂(v̂)`.
/// Arrows of `Q̂`: `−(v^i, v^j)` between distinct vertices, `p(v^i)` loops.
pub fn slice_data(
    q: &Quiver,
    v: &[i64],
    w: &[i64],
    v0: &[i64],
    summands: &[(DimVec, i64)],
) -> Result<SliceData> {
    let n = q.vertex_count();
    for x in [v, w, v0] {
        if x.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: x.len(),
            });
        }
    }
    if v0.iter().any(|&x| x < 0) {
        return Err(Error::domain("v^0 must be nonnegative"));
    }
    // Check the decomposition sums to v.
    let mut total = v0.to_vec();
    for (part, mult) in summands {
        if part.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: part.len(),
            });
        }
        if *mult < 1 {
            return Err(Error::domain("summand multiplicities must be ≥ 1"));
        }
        for (t, p) in total.iter_mut().zip(part) {
            *t += mult * p;
        }
    }
    if total != v {
        return Err(Error::domain(format!(
            "decomposition sums to {total:?}, not v = {v:?}"
        )));
    }
    for (part, _) in summands {
        if crate::quiver::is_positive_root(q, part)?.is_none() {
            return Err(Error::domain(format!("summand {part:?} is not a root")));
        }
    }
    for i in 0..summands.len() {
        for j in (i + 1)..summands.len() {
            if summands[i].0 == summands[j].0 {
                return Err(Error::domain("summands must be pairwise distinct"));
            }
        }
    }

    let k = summands.len();
    let mut arrows = Vec::new();
    let mut hat_w = Vec::with_capacity(k);
    for i in 0..k {
        let vi = &summands[i].0;
        let loops = p_value(q, vi)?;
        debug_assert!(loops >= 0, "summand is a root so p ≥ 0");
        for _ in 0..loops {
            arrows.push((i, i));
        }
        for j in (i + 1)..k {
            let cnt = -tits_form(q, vi, &summands[j].0)?;
            if cnt < 0 {
                return Err(Error::domain(format!(
                    "negative arrow count between slice vertices {i} and {j}"
                )));
            }
            for _ in 0..cnt {
                arrows.push((i, j));
            }
        }
        let wi = w.iter().zip(vi).map(|(a, b)| a * b).sum::<i64>() - tits_form(q, v0, vi)?;
        if wi < 0 {
            return Err(Error::domain(format!(
                "negative slice framing at vertex {i}"
            )));
        }
        hat_w.push(wi);
    }
    let hat_quiver = Quiver::new(k, arrows)?;
    let hat_v: DimVec = summands.iter().map(|(_, m)| *m).collect();

    // r̂(λ) = r(λ − ϱ(v)) + ϱ̂(v̂): affine with linear rows v^i and offset
    // ϱ̂(v̂) − r(ϱ(v)).
    let rho = rho_vector(q, v, w)?;
    let hat_rho = rho_vector(&hat_quiver, &hat_v, &hat_w)?;
    let restriction_rows: Vec<DimVec> = summands.iter().map(|(p, _)| p.clone()).collect();
    let offset: Vec<Rat> = (0..k)
        .map(|i| &hat_rho[i] - dot_rv(&rho, &restriction_rows[i]))
        .collect();
    Ok(SliceData {
        hat_quiver,
        hat_v,
        hat_w,
        restriction_rows,
        offset,
    })
}

/// An entry of the singular-locus report: either a pulled-back hyperplane
/// or a slice shape whose singular set has no shipped oracle.
#[derive(Debug, Clone, Serialize)]
pub struct SingularReport {
    pub hyperplanes: Vec<Hyperplane>,
    pub unknown_oracles: Vec<UnknownOracle>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnknownOracle {
    pub alpha: DimVec,
    pub loops: i64,
    pub hat_v: i64,
    pub hat_w: i64,
}

/// Conjectural singular hyperplanes in λ-space: for every root `α ≤ v`
/// take the maximal `k ≥ 1` with `kα ≤ v` and
/// `w·(v−kα) − ½(v−kα, v−kα) ≥ 0`, form the one-vertex slice with
/// `1 − ½(α,α)` loops, `v̂ = k`, `ŵ = w·α − (v,α) + k(α,α)`, and pull its
/// singular set back through `⟨α, λ−ϱ(v)⟩ = s − ϱ̂(v̂)`. Shipped oracles:
/// 0 loops (integers `1−ŵ … −1`) and 1 loop (rationals `r/m` in `(−ŵ, 0)`
/// with `m ≤ v̂`); other shapes are reported, never dropped.
pub fn singular_hyperplanes(q: &Quiver, v: &[i64], w: &[i64]) -> Result<SingularReport> {
    let class = crate::quiver::classify_quiver(q)?;
    if class.class == crate::quiver::QuiverType::Indefinite {
        return Err(Error::unsupported(
            "singular hyperplanes implemented for finite and affine quivers",
        ));
    }
    if w.len() != q.vertex_count() {
        return Err(Error::Dimension {
            expected: q.vertex_count(),
            got: w.len(),
        });
    }
    let rho = rho_vector(q, v, w)?;
    let mut hyperplanes = Vec::new();
    let mut unknown = Vec::new();
    for root in roots_bounded(q, v)? {
        let alpha = &root.vector;
        let norm = tits_form(q, alpha, alpha)?;
        // maximal k with kα ≤ v and w·(v−kα) − ½(v−kα, v−kα) ≥ 0
        let k_box = (0..q.vertex_count())
            .filter(|&t| alpha[t] != 0)
            .map(|t| v[t] / alpha[t])
            .min()
            .unwrap_or(0);
        let mut k_max = None;
        for k in (1..=k_box).rev() {
            let rest: DimVec = v.iter().zip(alpha).map(|(a, b)| a - k * b).collect();
            let value = w.iter().zip(&rest).map(|(a, b)| a * b).sum::<i64>()
                - tits_form(q, &rest, &rest)? / 2;
            if value >= 0 {
                k_max = Some(k);
                break;
            }
        }
        let Some(k) = k_max else {
            continue;
        };
        let loops = 1 - norm / 2;
        let hat_w = w.iter().zip(alpha).map(|(a, b)| a * b).sum::<i64>()
            - tits_form(q, v, alpha)?
            + k * norm;
        let hat_rho = rat(hat_w, 2); // ϱ̂ of a one-vertex slice is ŵ/2
        let alpha_rho = dot_rv(&rho, alpha);
        // singular s-values of the hat problem
        let s_values: Vec<Rat> = match loops {
            0 => ((1 - hat_w)..=-1).map(rint).collect(),
            1 => {
                let mut vals = Vec::new();
                for m in 1..=k {
                    for r_num in (1 - hat_w * m)..=-1 {
                        vals.push(rat(r_num, m));
                    }
                }
                vals
            }
            _ => {
                unknown.push(UnknownOracle {
                    alpha: alpha.clone(),
                    loops,
                    hat_v: k,
                    hat_w,
                });
                continue;
            }
        };
        for s in s_values {
            // ⟨α, λ⟩ = s − ϱ̂(v̂) + ⟨α, ϱ(v)⟩
            let offset = s - &hat_rho + &alpha_rho;
            hyperplanes.push(Hyperplane::new(
                alpha,
                offset,
                WallSpace::Lambda,
                WallProvenance::SingularConjecture,
            )?);
        }
    }
    Ok(SingularReport {
        hyperplanes: dedup_sorted(hyperplanes),
        unknown_oracles: unknown,
    })
}

/// Translation-equivalence bad hyperplanes for the shift by `χ`. Real
/// case: `⟨α, λ−ϱ(v)⟩ = m` with `m ∈ Z + w'/2`, one of `m, m+⟨χ,α⟩`
/// at least `w'/2` and the other at most `−w'/2`. Affine case (cyclic,
/// `v = nδ`, `w = ε_0`, `α = δ`): `⟨δ, λ⟩ = m + p/q` with `q ∈ {2..n}`,
/// `p ∈ {1−q..−1}`, one of `m, m+⟨χ,δ⟩` non-positive and the other
/// positive.
pub fn translation_bad_hyperplanes(
    q: &Quiver,
    v: &[i64],
    w: &[i64],
    alpha: &Root,
    chi: &[i64],
) -> Result<Vec<Hyperplane>> {
    let n = q.vertex_count();
    if v.len() != n || w.len() != n || chi.len() != n || alpha.vector.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: v.len().min(w.len()).min(chi.len()),
        });
    }
    // ker α must be a classical wall: α a root with α ≤ v.
    if !alpha.vector.iter().zip(v).all(|(a, b)| a <= b) {
        return Err(Error::domain("α must satisfy α ≤ v"));
    }
    if crate::quiver::is_positive_root(q, &alpha.vector)?.is_none() {
        return Err(Error::domain("ker α is not a classical wall (α not a root)"));
    }
    match alpha.kind {
        RootKind::Real => {
            let pairing_chi: i64 = chi.iter().zip(&alpha.vector).map(|(a, b)| a * b).sum();
            if pairing_chi == 0 {
                return Ok(vec![]);
            }
            let w_alpha: i64 = w.iter().zip(&alpha.vector).map(|(a, b)| a * b).sum();
            let v_alpha = tits_form(q, v, &alpha.vector)?;
            let wv: i64 = w.iter().zip(v).map(|(a, b)| a * b).sum();
            let vv = tits_form(q, v, v)?;
            // max integer k with kα ≤ v and
            // k ≤ sqrt((w·α−(v,α))²/4 − (v,v)/2 + w·v) + ((v,α)−w·α)/2,
            // decided exactly: with t = k + (w·α−(v,α))/2 the bound reads
            // t ≤ 0 or t² ≤ D where D = (w·α−(v,α))²/4 − (v,v)/2 + w·v.
            let k_box = (0..n)
                .filter(|&t| alpha.vector[t] != 0)
                .map(|t| v[t] / alpha.vector[t])
                .min()
                .unwrap_or(0);
            let d_quarters = rat((w_alpha - v_alpha) * (w_alpha - v_alpha), 4)
                + rint(wv)
                - rat(vv, 2);
            let mut k_max = None;
            for k in (1..=k_box).rev() {
                let t = rint(k) + rat(w_alpha - v_alpha, 2);
                if !t.is_positive() || &t * &t <= d_quarters {
                    k_max = Some(k);
                    break;
                }
            }
            let Some(k) = k_max else {
                return Ok(vec![]);
            };
            let w_prime = w_alpha - v_alpha + 2 * k;
            let rho = rho_vector(q, v, w)?;
            let alpha_rho = dot_rv(&rho, &alpha.vector);
            // m ∈ Z + w'/2 with one of m, m+⟨χ,α⟩ ≥ w'/2, other ≤ −w'/2.
            let half_w = rat(w_prime, 2);
            let mut ms: BTreeSet<Rat> = BTreeSet::new();
            // case A: m ≥ w'/2 and m + q ≤ −w'/2
            collect_half_integer_range(
                &mut ms,
                w_prime,
                half_w.clone(),
                -&half_w - rint(pairing_chi),
            );
            // case B: m ≤ −w'/2 and m + q ≥ w'/2
            collect_half_integer_range(
                &mut ms,
                w_prime,
                &half_w - rint(pairing_chi),
                -half_w.clone(),
            );
            let mut out = Vec::new();
            for m in ms {
                let offset = m + &alpha_rho;
                out.push(Hyperplane::new(
                    &alpha.vector,
                    offset,
                    WallSpace::Lambda,
                    WallProvenance::Translation,
                )?);
            }
            Ok(dedup_sorted(out))
        }
        RootKind::Imaginary => {
            // Affine clause: Q cyclic, v = nδ, w = ε_0, α = δ.
            let class = crate::quiver::classify_quiver(q)?;
            let Some(delta) = class.delta else {
                return Err(Error::unsupported(
                    "imaginary translation walls require an affine quiver",
                ));
            };
            if alpha.vector != delta {
                return Err(Error::unsupported(
                    "imaginary translation walls are stated for α = δ",
                ));
            }
            let n_mult = {
                let k = (0..n).find(|&t| delta[t] != 0).unwrap();
                v[k] / delta[k]
            };
            if v.iter().zip(&delta).any(|(a, b)| *a != n_mult * b)
                || w.iter().sum::<i64>() != 1
            {
                return Err(Error::unsupported(
                    "affine translation walls require v = nδ and w = ε_0",
                ));
            }
            let pairing_chi: i64 = chi.iter().zip(&delta).map(|(a, b)| a * b).sum();
            let mut out = Vec::new();
            for den in 2..=n_mult {
                for p in (1 - den)..=-1 {
                    // m integer with one of m, m+⟨χ,δ⟩ ≤ 0 and the other > 0.
                    let m_range: Vec<i64> = if pairing_chi > 0 {
                        ((1 - pairing_chi)..=0).collect()
                    } else if pairing_chi < 0 {
                        (1..=-pairing_chi).collect()
                    } else {
                        vec![]
                    };
                    for m in m_range {
                        let offset = rint(m) + rat(p, den);
                        out.push(Hyperplane::new(
                            &delta,
                            offset,
                            WallSpace::Lambda,
                            WallProvenance::Translation,
                        )?);
                    }
                }
            }
            Ok(dedup_sorted(out))
        }
    }
}

/// Inserts every `m ∈ Z + parity(w')/2` with `lo ≤ m ≤ hi`.
fn collect_half_integer_range(out: &mut BTreeSet<Rat>, w_prime: i64, lo: Rat, hi: Rat) {
    if lo > hi {
        return;
    }
    // m = t + w'/2 for integer t: t ranges over ceil(lo − w'/2) ..= floor(hi − w'/2).
    let shift = rat(w_prime, 2);
    let lo_t = &lo - &shift;
    let hi_t = &hi - &shift;
    let lo_i = lo_t.ceil().to_integer().to_i64().unwrap();
    let hi_i = hi_t.floor().to_integer().to_i64().unwrap();
    for t in lo_i..=hi_i {
        out.insert(rint(t) + &shift);
    }
}

/// Perverse-filtration constants of the affine wall-crossing at parameter
/// denominator `m`: `q = ⌊n/m⌋`, `d_i = (q+1−i)(m−1)`, and the filtration
/// index table `i ↦ q+1−⌊i/(m−1)⌋` for `0 ≤ i ≤ d_0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerverseProfile {
    pub n: i64,
    pub m: i64,
    pub q: i64,
    pub d: Vec<i64>,
    pub filtration_index: Vec<i64>,
}

pub fn perverse_profile(n: i64, m: i64) -> Result<PerverseProfile> {
    if m < 2 {
        return Err(Error::domain("m must be ≥ 2"));
    }
    if n < 1 {
        return Err(Error::domain("n must be ≥ 1"));
    }
    let q = n / m;
    let d: Vec<i64> = (0..=q + 1).map(|i| (q + 1 - i) * (m - 1)).collect();
    let filtration_index: Vec<i64> = (0..=d[0]).map(|i| q + 1 - i / (m - 1)).collect();
    Ok(PerverseProfile {
        n,
        m,
        q,
        d,
        filtration_index,
    })
}

/// Chambers of a central hyperplane arrangement in rank ≤ 4, as sign
/// vectors over the wall list, via exact Fourier-Motzkin feasibility.
pub fn chambers(walls: &[Hyperplane], rank: usize) -> Result<Vec<Vec<i8>>> {
    if rank > 4 {
        return Err(Error::unsupported("chamber enumeration is limited to rank ≤ 4"));
    }
    if walls.len() > 16 {
        return Err(Error::resource(
            "chamber enumeration capped at 16 walls",
        ));
    }
    for wall in walls {
        if !wall.offset.is_zero() {
            return Err(Error::domain("chamber enumeration expects central walls"));
        }
        if wall.normal.len() != rank {
            return Err(Error::Dimension {
                expected: rank,
                got: wall.normal.len(),
            });
        }
    }
    let mut out = Vec::new();
    let count = walls.len();
    for mask in 0..(1u32 << count) {
        let signs: Vec<i8> = (0..count)
            .map(|i| if mask & (1 << i) != 0 { 1 } else { -1 })
            .collect();
        let system: Vec<Vec<Rat>> = walls
            .iter()
            .zip(&signs)
            .map(|(wall, &s)| {
                wall.normal
                    .iter()
                    .map(|&x| rint(s as i64 * x))
                    .collect()
            })
            .collect();
        if strict_feasible(system, rank) {
            out.push(signs);
        }
    }
    Ok(out)
}

/// Feasibility of `{x | row·x > 0 для all rows}` by Fourier-Motzkin.
fn strict_feasible(mut rows: Vec<Vec<Rat>>, dims: usize) -> bool {
    for col in 0..dims {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for row in rows.drain(..) {
            if row[col].is_positive() {
                pos.push(row);
            } else if row[col].is_negative() {
                neg.push(row);
            } else {
                rest.push(row);
            }
        }
        // Combine: for p with p[col] > 0 and n with n[col] < 0:
        // p scaled by −n[col] plus n scaled by p[col] eliminates col.
        for p in &pos {
            for ng in &neg {
                let a = -ng[col].clone();
                let b = p[col].clone();
                let combined: Vec<Rat> = (0..dims)
                    .map(|j| &a * &p[j] + &b * &ng[j])
                    .collect();
                rest.push(combined);
            }
        }
        rows = rest;
        // Note: pos-only or neg-only rows in `col` are always satisfiable
        // by pushing x_col to ±∞, so they drop out entirely.
    }
    // All variables eliminated: every surviving row reads 0 > 0.
    rows.is_empty()
}
