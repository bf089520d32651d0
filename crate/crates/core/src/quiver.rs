//! Quivers, the symmetrized Tits form, root enumeration, type
//! classification, and the flatness / genericity tests for moment maps.

use crate::error::{Error, Result};
use crate::linalg;
use crate::rat::{dot_rv, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A finite quiver. Loops and parallel arrows are allowed; vertices are
/// `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

/// Dimension vectors and roots are plain integer vectors indexed by vertex.
pub type DimVec = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Real,
    Imaginary,
}

/// A positive root of `g(Q)`, tagged real or imaginary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub vector: DimVec,
    pub kind: RootKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuiverType {
    Finite,
    Affine,
    Indefinite,
}

/// Result of `classify_quiver`: the type, and for affine quivers the
/// indecomposable imaginary root `δ` (primitive positive radical vector).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverClass {
    pub class: QuiverType,
    pub delta: Option<DimVec>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::domain("quiver must have at least one vertex"));
        }
        for &(t, h) in &arrows {
            if t >= vertex_count || h >= vertex_count {
                return Err(Error::domain(format!(
                    "arrow ({t},{h}) out of range for {vertex_count} vertices"
                )));
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Number of loops at vertex `k`.
    pub fn loops_at(&self, k: usize) -> usize {
        self.arrows.iter().filter(|&&(t, h)| t == k && h == k).count()
    }

    pub fn has_loop(&self, k: usize) -> bool {
        self.loops_at(k) > 0
    }

    /// Number of arrows between distinct vertices `k`, `l` (both directions).
    pub fn edges_between(&self, k: usize, l: usize) -> usize {
        debug_assert_ne!(k, l);
        self.arrows
            .iter()
            .filter(|&&(t, h)| (t == k && h == l) || (t == l && h == k))
            .count()
    }

    /// The quiver with every arrow reversed.
    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self.arrows.iter().map(|&(t, h)| (h, t)).collect(),
        }
    }

    /// Entry `(k,l)` of the symmetric Cartan matrix `(e_k, e_l)`.
    pub fn cartan_entry(&self, k: usize, l: usize) -> i64 {
        if k == l {
            2 - 2 * self.loops_at(k) as i64
        } else {
            -(self.edges_between(k, l) as i64)
        }
    }

    /// `C v` for the symmetric Cartan matrix.
    pub fn cartan_apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.vertex_count;
        let mut out = vec![0; n];
        for k in 0..n {
            out[k] = 2 * v[k];
        }
        for &(t, h) in &self.arrows {
            out[t] -= v[h];
            out[h] -= v[t];
        }
        out
    }

    /// Connectivity of the underlying graph (loops do not contribute).
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count;
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(k) = stack.pop() {
            for &(t, h) in &self.arrows {
                for (a, b) in [(t, h), (h, t)] {
                    if a == k && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.vertex_count {
            return Err(Error::Dimension {
                expected: self.vertex_count,
                got: v.len(),
            });
        }
        Ok(())
    }
}

/// The symmetrized Tits form
/// `(x, y) = 2 Σ_k x_k y_k − Σ_a (x_{t(a)} y_{h(a)} + x_{h(a)} y_{t(a)})`.
pub fn tits_form(q: &Quiver, x: &[i64], y: &[i64]) -> Result<i64> {
    q.check_len(x)?;
    q.check_len(y)?;
    let mut acc: i64 = 0;
    for k in 0..q.vertex_count {
        acc += 2 * x[k] * y[k];
    }
    for &(t, h) in &q.arrows {
        acc -= x[t] * y[h] + x[h] * y[t];
    }
    Ok(acc)
}

/// `p(v) = 1 − (v,v)/2`; `v` is a root exactly when `p(v) ≥ 0`.
pub fn p_value(q: &Quiver, v: &[i64]) -> Result<i64> {
    let t = tits_form(q, v, v)?;
    debug_assert_eq!(t % 2, 0);
    Ok(1 - t / 2)
}

/// Classifies a connected quiver as finite / affine / indefinite by the
/// signature of its Tits form; affine quivers come with `δ`.
pub fn classify_quiver(q: &Quiver) -> Result<QuiverClass> {
    if !q.is_connected() {
        return Err(Error::unsupported("disconnected quiver"));
    }
    let n = q.vertex_count;
    let cartan: linalg::DenseMat = (0..n)
        .map(|k| {
            (0..n)
                .map(|l| Rat::from_integer(q.cartan_entry(k, l).into()))
                .collect()
        })
        .collect();
    let ker = linalg::kernel(&cartan, n);
    match ker.len() {
        0 => {
            if positive_definite(&cartan) {
                Ok(QuiverClass {
                    class: QuiverType::Finite,
                    delta: None,
                })
            } else {
                Ok(QuiverClass {
                    class: QuiverType::Indefinite,
                    delta: None,
                })
            }
        }
        1 => {
            // Affine iff the form is positive semidefinite with this radical,
            // iff deleting one vertex in the support of the radical leaves a
            // positive definite form, and the radical generator has constant
            // sign.
            let z = &ker[0];
            let delta = primitive_integer_vector(z);
            let Some(delta) = delta else {
                return Ok(QuiverClass {
                    class: QuiverType::Indefinite,
                    delta: None,
                });
            };
            let j = delta.iter().position(|&x| x != 0).expect("nonzero kernel");
            let minor: linalg::DenseMat = (0..n)
                .filter(|&k| k != j)
                .map(|k| {
                    (0..n)
                        .filter(|&l| l != j)
                        .map(|l| Rat::from_integer(q.cartan_entry(k, l).into()))
                        .collect()
                })
                .collect();
            if positive_definite(&minor) {
                Ok(QuiverClass {
                    class: QuiverType::Affine,
                    delta: Some(delta),
                })
            } else {
                Ok(QuiverClass {
                    class: QuiverType::Indefinite,
                    delta: None,
                })
            }
        }
        _ => Ok(QuiverClass {
            class: QuiverType::Indefinite,
            delta: None,
        }),
    }
}

/// Sylvester test on a symmetric rational matrix.
fn positive_definite(m: &linalg::DenseMat) -> bool {
    let n = m.len();
    for k in 1..=n {
        let lead: linalg::DenseMat = (0..k).map(|i| m[i][..k].to_vec()).collect();
        if determinant(lead) <= Rat::zero() {
            return false;
        }
    }
    true
}

fn determinant(mut m: linalg::DenseMat) -> Rat {
    let n = m.len();
    let mut det = Rat::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(c, p);
            det = -det;
        }
        det *= m[c][c].clone();
        let inv = m[c][c].clone();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &inv;
            for j in c..n {
                let sub = &f * &m[c][j];
                m[i][j] -= sub;
            }
        }
    }
    det
}

/// Scales a rational vector to a primitive integer vector, requiring all
/// entries to share one strict sign; returns the positive version.
fn primitive_integer_vector(z: &[Rat]) -> Option<DimVec> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, ToPrimitive};
    if z.iter().any(|x| x.is_zero()) {
        return None;
    }
    let pos = z.iter().all(|x| x.is_positive());
    let neg = z.iter().all(|x| x.is_negative());
    if !pos && !neg {
        return None;
    }
    let mut lcm = BigInt::one();
    for x in z {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = z
        .iter()
        .map(|x| (x * Rat::from_integer(lcm.clone())).numer().clone())
        .collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = gcd.gcd(i);
    }
    let sign = if neg { -BigInt::one() } else { BigInt::one() };
    ints.iter()
        .map(|i| (i / &gcd * &sign).to_i64())
        .collect::<Option<Vec<i64>>>()
}

/// Support of `v` restricted to the underlying graph is connected.
fn support_connected(q: &Quiver, v: &[i64]) -> bool {
    let supp: Vec<usize> = (0..q.vertex_count).filter(|&k| v[k] != 0).collect();
    if supp.is_empty() {
        return false;
    }
    let mut seen = vec![false; q.vertex_count];
    let mut stack = vec![supp[0]];
    seen[supp[0]] = true;
    while let Some(k) = stack.pop() {
        for &(t, h) in &q.arrows {
            for (a, b) in [(t, h), (h, t)] {
                if a == k && v[b] != 0 && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    supp.into_iter().all(|k| seen[k])
}

/// Positive-root test by reflection descent: reflect at loop-free vertices
/// with positive pairing until reaching a simple root (real) or the
/// fundamental region (imaginary, needs connected support).
pub fn is_positive_root(q: &Quiver, v: &[i64]) -> Result<Option<RootKind>> {
    q.check_len(v)?;
    if v.iter().any(|&x| x < 0) || v.iter().all(|&x| x == 0) {
        return Ok(None);
    }
    let mut cur = v.to_vec();
    loop {
        // Simple root at a loop-free vertex.
        if cur.iter().sum::<i64>() == 1 {
            let k = cur.iter().position(|&x| x == 1).unwrap();
            return Ok(if q.has_loop(k) {
                // e_k at a loop vertex lies in the fundamental region.
                Some(RootKind::Imaginary)
            } else {
                Some(RootKind::Real)
            });
        }
        let pair = q.cartan_apply(&cur);
        let mut reflected = false;
        for k in 0..q.vertex_count {
            if q.has_loop(k) || pair[k] <= 0 {
                continue;
            }
            let next_k = cur[k] - pair[k];
            if next_k < 0 {
                // A positive root stays positive under s_k unless it is e_k,
                // which the simple-root check above already handled.
                return Ok(None);
            }
            cur[k] = next_k;
            reflected = true;
            break;
        }
        if !reflected {
            // Fundamental region: all loop-free pairings ≤ 0.
            return Ok(if support_connected(q, &cur) {
                Some(RootKind::Imaginary)
            } else {
                None
            });
        }
    }
}

/// All positive roots `0 < α ≤ bound` (componentwise), tagged real or
/// imaginary, in lexicographic order.
pub fn roots_bounded(q: &Quiver, bound: &[i64]) -> Result<Vec<Root>> {
    q.check_len(bound)?;
    let mut out = Vec::new();
    let mut cur: DimVec = vec![0; q.vertex_count];
    loop {
        if cur.iter().any(|&x| x > 0) {
            if let Some(kind) = is_positive_root(q, &cur)? {
                out.push(Root {
                    vector: cur.clone(),
                    kind,
                });
            }
        }
        // Odometer over the box [0, bound].
        let mut k = q.vertex_count;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if cur[k] < bound[k] {
                cur[k] += 1;
                for x in cur.iter_mut().skip(k + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// A decomposition `v = v^0 + Σ v^i` violating or witnessing the
/// Crawley-Boevey flatness inequality. `defect` is the left hand side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatnessWitness {
    pub v0: DimVec,
    pub root_parts: Vec<DimVec>,
    pub defect: i64,
}

/// Default cap on `Σ v` for the exhaustive decomposition search.
pub const CB_FLAT_DEFAULT_CAP: i64 = 12;

/// Crawley-Boevey criterion: the moment map for `(Q, v, w)` is flat iff
/// `p(v) + w·v − (w·v^0 + Σ_{i=0}^k p(v^i)) ≥ 0` over all decompositions
/// `v = v^0 + v^1 + … + v^k` with `v^1, …, v^k` roots. Returns a violating
/// decomposition when not flat.
pub fn cb_flat(q: &Quiver, v: &[i64], w: &[i64]) -> Result<(bool, Option<FlatnessWitness>)> {
    cb_flat_capped(q, v, w, CB_FLAT_DEFAULT_CAP)
}

pub fn cb_flat_capped(
    q: &Quiver,
    v: &[i64],
    w: &[i64],
    cap: i64,
) -> Result<(bool, Option<FlatnessWitness>)> {
    q.check_len(v)?;
    q.check_len(w)?;
    if v.iter().any(|&x| x < 0) || w.iter().any(|&x| x < 0) {
        return Err(Error::domain("v and w must be nonnegative"));
    }
    let total: i64 = v.iter().sum();
    if total > cap {
        return Err(Error::resource(format!(
            "Σv = {total} exceeds the decomposition cap {cap}"
        )));
    }
    let roots = roots_bounded(q, v)?;
    let base = p_value(q, v)? + dot(w, v);
    // Multisets of roots with sum ≤ v; the remainder is v^0.
    let mut chosen: Vec<DimVec> = Vec::new();
    let mut rest = v.to_vec();
    let witness = search_decomp(q, w, &roots, 0, &mut chosen, &mut rest, base)?;
    Ok((witness.is_none(), witness))
}

fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn search_decomp(
    q: &Quiver,
    w: &[i64],
    roots: &[Root],
    from: usize,
    chosen: &mut Vec<DimVec>,
    rest: &mut DimVec,
    base: i64,
) -> Result<Option<FlatnessWitness>> {
    if !chosen.is_empty() {
        let mut rhs = dot(w, rest) + p_value(q, rest)?;
        for part in chosen.iter() {
            rhs += p_value(q, part)?;
        }
        let defect = base - rhs;
        if defect < 0 {
            return Ok(Some(FlatnessWitness {
                v0: rest.clone(),
                root_parts: chosen.clone(),
                defect,
            }));
        }
    }
    for (idx, root) in roots.iter().enumerate().skip(from) {
        if root.vector.iter().zip(rest.iter()).all(|(a, b)| a <= b) {
            for (r, a) in rest.iter_mut().zip(&root.vector) {
                *r -= a;
            }
            chosen.push(root.vector.clone());
            let found = search_decomp(q, w, roots, idx, chosen, rest, base)?;
            chosen.pop();
            for (r, a) in rest.iter_mut().zip(&root.vector) {
                *r += a;
            }
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

/// Nakajima genericity: `(λ, θ)` is generic for `(Q, v)` when no root
/// `v' ≤ v` satisfies `v'·θ = v'·λ = 0`. All roots `≤ v` are tested,
/// including imaginary multiples `kδ`. Returns a witness root otherwise.
pub fn is_generic(
    q: &Quiver,
    v: &[i64],
    lambda: &[Rat],
    theta: &[Rat],
) -> Result<(bool, Option<Root>)> {
    q.check_len(v)?;
    if lambda.len() != q.vertex_count || theta.len() != q.vertex_count {
        return Err(Error::Dimension {
            expected: q.vertex_count,
            got: lambda.len().max(theta.len()),
        });
    }
    for root in roots_bounded(q, v)? {
        if dot_rv(lambda, &root.vector).is_zero() && dot_rv(theta, &root.vector).is_zero() {
            return Ok((false, Some(root)));
        }
    }
    Ok((true, None))
}
