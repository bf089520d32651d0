//! Weight bookkeeping for the framed dictionary `ν = ω − Σ v_i α^i`:
//! Weyl dot-actions on dimension vectors and quantization parameters,
//! extremal-weight tests, the parameter shift `ϱ(v)`, and Freudenthal
//! weight multiplicities.

use crate::error::{Error, Result};
use crate::quiver::{classify_quiver, roots_bounded, tits_form, DimVec, Quiver, QuiverType, RootKind};
use crate::rat::{rat, rint, Rat};
use std::collections::HashMap;

fn check_len(q: &Quiver, v: &[i64]) -> Result<()> {
    if v.len() != q.vertex_count() {
        return Err(Error::Dimension {
            expected: q.vertex_count(),
            got: v.len(),
        });
    }
    Ok(())
}

fn check_vertex(q: &Quiver, k: usize) -> Result<()> {
    if k >= q.vertex_count() {
        return Err(Error::domain(format!("vertex {k} out of range")));
    }
    if q.has_loop(k) {
        return Err(Error::unsupported(format!(
            "reflection undefined at loop vertex {k}"
        )));
    }
    Ok(())
}

/// Pairing `⟨ν, α_k^∨⟩ = w_k − (C v)_k` of the weight encoded by `(w, v)`
/// with the simple coroot at `k`.
pub fn coroot_pairing(q: &Quiver, v: &[i64], w: &[i64], k: usize) -> i64 {
    w[k] - q.cartan_apply(v)[k]
}

/// Dot reflection on dimension vectors:
/// `(s_k • v)_k = w_k + Σ_{t(a)=k} v_{h(a)} + Σ_{h(a)=k} v_{t(a)} − v_k`,
/// other entries unchanged.
pub fn reflect_dim(k: usize, v: &[i64], w: &[i64], q: &Quiver) -> Result<DimVec> {
    check_len(q, v)?;
    check_len(q, w)?;
    check_vertex(q, k)?;
    let mut out = v.to_vec();
    out[k] = v[k] + coroot_pairing(q, v, w, k);
    Ok(out)
}

/// Outcome of descending a weight to the dominant chamber by
/// least-index dot reflections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Descent {
    /// Dominant representative reached; `word` lists the reflections applied
    /// (in application order).
    Dominant { v: DimVec, word: Vec<usize> },
    /// Some coordinate went negative: the weight does not occur in `L_ω`.
    NotWeight,
}

const DESCENT_CAP: usize = 100_000;

/// Least-index dot-reflection descent of `v` towards the dominant chamber.
pub fn dominant_descent(q: &Quiver, v: &[i64], w: &[i64]) -> Result<Descent> {
    check_len(q, v)?;
    check_len(q, w)?;
    let mut cur = v.to_vec();
    let mut word = Vec::new();
    for _ in 0..DESCENT_CAP {
        if cur.iter().any(|&x| x < 0) {
            return Ok(Descent::NotWeight);
        }
        let pair = q.cartan_apply(&cur);
        let neg = (0..q.vertex_count())
            .find(|&k| !q.has_loop(k) && w[k] - pair[k] < 0);
        match neg {
            None => return Ok(Descent::Dominant { v: cur, word }),
            Some(k) => {
                cur[k] += w[k] - pair[k];
                word.push(k);
            }
        }
    }
    Err(Error::resource("dominant descent did not terminate"))
}

/// Whether `ν = ω − Σ v_i α^i` lies in the Weyl orbit of `ω` (equivalently,
/// the quiver variety is a point). Finite and affine quivers only.
pub fn is_extremal(v: &[i64], w: &[i64], q: &Quiver) -> Result<bool> {
    let class = classify_quiver(q)?;
    if class.class == QuiverType::Indefinite {
        return Err(Error::unsupported(
            "extremality test requires a finite or affine quiver",
        ));
    }
    match dominant_descent(q, v, w)? {
        Descent::Dominant { v, .. } => Ok(v.iter().all(|&x| x == 0)),
        Descent::NotWeight => Ok(false),
    }
}

/// The parameter shift character
/// `ϱ(v)_k = −½ (Σ_{h(a)=k} v_{t(a)} − Σ_{t(a)=k} v_{h(a)} − w_k)`.
/// Orientation-dependent; reversal changes it by an integer vector.
pub fn rho_vector(q: &Quiver, v: &[i64], w: &[i64]) -> Result<Vec<Rat>> {
    check_len(q, v)?;
    check_len(q, w)?;
    let n = q.vertex_count();
    let mut twice = vec![0i64; n];
    for &(t, h) in q.arrows() {
        twice[h] -= v[t];
        twice[t] += v[h];
    }
    for k in 0..n {
        twice[k] += w[k];
    }
    Ok(twice.into_iter().map(|x| rat(x, 2)).collect())
}

/// Linear Weyl reflection on parameter vectors, dual to the reflection on
/// dimension vectors: `(s_i λ)_k = λ_k − C_{ik} λ_i`.
pub fn reflect_linear_param(q: &Quiver, i: usize, lambda: &[Rat]) -> Vec<Rat> {
    let mut out = lambda.to_vec();
    for k in 0..q.vertex_count() {
        let c = q.cartan_entry(i, k);
        if c != 0 {
            out[k] = &out[k] - rint(c) * &lambda[i];
        }
    }
    out
}

/// Dot reflection on quantization parameters:
/// `s_i • λ = s_i λ + ϱ(s_i • v) − s_i ϱ(v)`.
pub fn reflect_param(
    i: usize,
    lambda: &[Rat],
    v: &[i64],
    w: &[i64],
    q: &Quiver,
) -> Result<Vec<Rat>> {
    check_len(q, v)?;
    check_len(q, w)?;
    check_vertex(q, i)?;
    if lambda.len() != q.vertex_count() {
        return Err(Error::Dimension {
            expected: q.vertex_count(),
            got: lambda.len(),
        });
    }
    let s_lambda = reflect_linear_param(q, i, lambda);
    let rho = rho_vector(q, v, w)?;
    let s_rho = reflect_linear_param(q, i, &rho);
    let rho_refl = rho_vector(q, &reflect_dim(i, v, w, q)?, w)?;
    Ok((0..q.vertex_count())
        .map(|k| &s_lambda[k] + &rho_refl[k] - &s_rho[k])
        .collect())
}

/// Freudenthal's recursion for `dim L_ω[ν]` over a symmetric Kac-Moody
/// algebra of finite or affine type (loop-free quiver). Real roots have
/// multiplicity 1; in affine type each `kδ` has multiplicity `|Q_0| − 1`.
pub fn freudenthal_mult(q: &Quiver, w: &[i64], v: &[i64]) -> Result<u64> {
    let mut table = FreudenthalTable::new(q, w)?;
    table.mult(v)
}

/// Memoized Freudenthal evaluator; build once per `(Q, w)` and query many
/// dimension vectors.
pub struct FreudenthalTable<'a> {
    q: &'a Quiver,
    w: Vec<i64>,
    imaginary_mult: u64,
    memo: HashMap<DimVec, u64>,
}

impl<'a> FreudenthalTable<'a> {
    pub fn new(q: &'a Quiver, w: &[i64]) -> Result<Self> {
        check_len(q, w)?;
        if (0..q.vertex_count()).any(|k| q.has_loop(k)) {
            return Err(Error::unsupported(
                "weight multiplicities require a loop-free quiver",
            ));
        }
        let class = classify_quiver(q)?;
        let imaginary_mult = match class.class {
            QuiverType::Finite => 0,
            QuiverType::Affine => q.vertex_count() as u64 - 1,
            QuiverType::Indefinite => {
                return Err(Error::unsupported(
                    "weight multiplicities implemented for finite and affine type only",
                ))
            }
        };
        Ok(FreudenthalTable {
            q,
            w: w.to_vec(),
            imaginary_mult,
            memo: HashMap::new(),
        })
    }

    pub fn mult(&mut self, v: &[i64]) -> Result<u64> {
        check_len(self.q, v)?;
        if v.iter().any(|&x| x < 0) {
            return Ok(0);
        }
        self.mult_inner(v)
    }

    fn mult_inner(&mut self, v: &[i64]) -> Result<u64> {
        if let Some(&m) = self.memo.get(v) {
            return Ok(m);
        }
        let m = self.compute(v)?;
        self.memo.insert(v.to_vec(), m);
        Ok(m)
    }

    fn compute(&mut self, v: &[i64]) -> Result<u64> {
        if v.iter().all(|&x| x == 0) {
            return Ok(1);
        }
        // Reflect a non-dominant weight into the dominant chamber first;
        // multiplicities are invariant under the linear Weyl action on ν,
        // which is the dot action on v.
        let pair = self.q.cartan_apply(v);
        for k in 0..self.q.vertex_count() {
            let c = self.w[k] - pair[k];
            if c < 0 {
                let mut refl = v.to_vec();
                refl[k] += c;
                if refl[k] < 0 {
                    return Ok(0);
                }
                return self.mult_inner(&refl);
            }
        }
        // Dominant, nonzero drop from ω: Freudenthal's formula. With
        // β = Σ v_i α_i, the left factor is 2 Σ v_i (w_i + 1) − (β, β),
        // strictly positive for dominant ν ≠ ω.
        let norm = tits_form(self.q, v, v)?;
        let lhs = 2 * v
            .iter()
            .zip(&self.w)
            .map(|(a, b)| a * (b + 1))
            .sum::<i64>()
            - norm;
        if lhs <= 0 {
            // Only reachable when ν is not a weight of L_ω.
            return Ok(0);
        }
        let roots = roots_bounded(self.q, v)?;
        let mut rhs: i64 = 0;
        for root in &roots {
            let mult_root = match root.kind {
                RootKind::Real => 1,
                RootKind::Imaginary => self.imaginary_mult as i64,
            };
            if mult_root == 0 {
                continue;
            }
            let mut j = 1;
            loop {
                let shifted: DimVec = v
                    .iter()
                    .zip(&root.vector)
                    .map(|(a, b)| a - j * b)
                    .collect();
                if shifted.iter().any(|&x| x < 0) {
                    break;
                }
                let m = self.mult_inner(&shifted)? as i64;
                if m != 0 {
                    // (ν + jα, α) with ν + jα encoded by the box vector
                    // `shifted`: w·α − (shifted, α).
                    let pairing = self
                        .w
                        .iter()
                        .zip(&root.vector)
                        .map(|(a, b)| a * b)
                        .sum::<i64>()
                        - tits_form(self.q, &shifted, &root.vector)?;
                    rhs += mult_root * m * pairing;
                }
                j += 1;
            }
        }
        debug_assert!(rhs >= 0);
        debug_assert_eq!((2 * rhs) % lhs, 0);
        Ok((2 * rhs / lhs) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;

    fn a2() -> Quiver {
        Quiver::new(2, vec![(0, 1)]).unwrap()
    }
    fn vertex() -> Quiver {
        Quiver::new(1, vec![]).unwrap()
    }
    fn cyclic(l: usize) -> Quiver {
        Quiver::new(l, (0..l).map(|i| (i, (i + 1) % l)).collect()).unwrap()
    }

    #[test]
    fn reflect_dim_examples() {
        assert_eq!(reflect_dim(0, &[1], &[3], &vertex()).unwrap(), vec![2]);
        assert_eq!(
            reflect_dim(0, &[1, 0], &[1, 0], &a2()).unwrap(),
            vec![0, 0]
        );
        // involution
        for v in [[0, 0], [1, 2], [3, 1]] {
            for w in [[1, 0], [2, 2]] {
                for k in 0..2 {
                    let once = reflect_dim(k, &v, &w, &a2()).unwrap();
                    let twice = reflect_dim(k, &once, &w, &a2()).unwrap();
                    assert_eq!(twice, v.to_vec());
                }
            }
        }
        let jordan = Quiver::new(1, vec![(0, 0)]).unwrap();
        assert!(matches!(
            reflect_dim(0, &[1], &[1], &jordan),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn extremal_examples() {
        assert!(is_extremal(&[0, 0], &[1, 1], &a2()).unwrap());
        assert!(!is_extremal(&[1], &[2], &vertex()).unwrap());
        assert!(is_extremal(&[2], &[2], &vertex()).unwrap());
        assert!(is_extremal(&[1], &[1], &vertex()).unwrap());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_vector(&vertex(), &[5], &[3]).unwrap(), vec![rat(3, 2)]);
        let rho = rho_vector(&a2(), &[2, 5], &[0, 0]).unwrap();
        assert_eq!(rho, vec![rat(5, 2), rat(-2, 2)]);
        // reversal shifts by an integer vector
        let q = a2();
        let rev = q.reversed();
        for v in [[1, 1], [2, 3]] {
            let a = rho_vector(&q, &v, &[1, 2]).unwrap();
            let b = rho_vector(&rev, &v, &[1, 2]).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!(crate::rat::is_integral(&(x - y)));
            }
        }
    }

    #[test]
    fn reflect_param_sl2() {
        // single vertex, w = 2: s•λ = w − λ
        let lam = vec![rint(3)];
        let out = reflect_param(0, &lam, &[1], &[2], &vertex()).unwrap();
        assert_eq!(out, vec![rint(-1)]);
        let back = reflect_param(0, &out, &reflect_dim(0, &[1], &[2], &vertex()).unwrap(), &[2], &vertex()).unwrap();
        assert_eq!(back, lam);
    }

    #[test]
    fn reflect_param_involution_and_integrality() {
        // Deterministic pseudo-random rationals.
        let mut state: u64 = 0x9E3779B97F4A7C15;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let q = a2();
        for _ in 0..50 {
            let lam: Vec<Rat> = (0..2)
                .map(|_| rat((next() % 19) as i64 - 9, (next() % 4 + 1) as i64))
                .collect();
            let v = vec![(next() % 3) as i64, (next() % 3) as i64];
            let w = vec![(next() % 3) as i64, (next() % 3) as i64];
            for i in 0..2 {
                let out = reflect_param(i, &lam, &v, &w, &q).unwrap();
                let v_refl = reflect_dim(i, &v, &w, &q).unwrap();
                let back = reflect_param(i, &out, &v_refl, &w, &q).unwrap();
                assert_eq!(back, lam, "involution failed");
                // Remark: s_i•λ − λ integral iff s_iλ − λ integral.
                let dot_diff: Vec<Rat> = out.iter().zip(&lam).map(|(a, b)| a - b).collect();
                let lin = reflect_linear_param(&q, i, &lam);
                let lin_diff: Vec<Rat> = lin.iter().zip(&lam).map(|(a, b)| a - b).collect();
                assert_eq!(
                    crate::rat::all_integral(&dot_diff),
                    crate::rat::all_integral(&lin_diff)
                );
            }
        }
    }

    #[test]
    fn reflect_param_identity_sigma_relation() {
        // σ•λ − ϱ(σ•v) = σ(λ − ϱ(v)) exactly.
        let q = a2();
        let lam = vec![rat(1, 3), rat(-5, 2)];
        let v = vec![1, 2];
        let w = vec![2, 1];
        for i in 0..2 {
            let lhs_param = reflect_param(i, &lam, &v, &w, &q).unwrap();
            let v_refl = reflect_dim(i, &v, &w, &q).unwrap();
            let rho_refl = rho_vector(&q, &v_refl, &w).unwrap();
            let lhs: Vec<Rat> = lhs_param
                .iter()
                .zip(&rho_refl)
                .map(|(a, b)| a - b)
                .collect();
            let rho = rho_vector(&q, &v, &w).unwrap();
            let diff: Vec<Rat> = lam.iter().zip(&rho).map(|(a, b)| a - b).collect();
            let rhs = reflect_linear_param(&q, i, &diff);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn freudenthal_sl2() {
        for v in 0..=3 {
            assert_eq!(freudenthal_mult(&vertex(), &[3], &[v]).unwrap(), 1);
        }
        assert_eq!(freudenthal_mult(&vertex(), &[3], &[4]).unwrap(), 0);
    }

    #[test]
    fn freudenthal_a2_adjoint() {
        assert_eq!(freudenthal_mult(&a2(), &[1, 1], &[1, 1]).unwrap(), 2);
        assert_eq!(freudenthal_mult(&a2(), &[1, 1], &[1, 0]).unwrap(), 1);
        assert_eq!(freudenthal_mult(&a2(), &[1, 1], &[2, 1]).unwrap(), 1);
        assert_eq!(freudenthal_mult(&a2(), &[1, 1], &[3, 0]).unwrap(), 0);
    }

    #[test]
    fn freudenthal_affine_basic() {
        // Basic representation of the cyclic ℓ=2 affine algebra.
        assert_eq!(freudenthal_mult(&cyclic(2), &[1, 0], &[1, 1]).unwrap(), 1);
        assert_eq!(freudenthal_mult(&cyclic(2), &[1, 0], &[2, 2]).unwrap(), 2);
        assert_eq!(freudenthal_mult(&cyclic(2), &[1, 0], &[1, 0]).unwrap(), 1);
        assert_eq!(freudenthal_mult(&cyclic(2), &[1, 0], &[0, 1]).unwrap(), 0);
    }

    #[test]
    fn freudenthal_dot_weyl_invariance() {
        let q = a2();
        let w = [2, 1];
        for v0 in 0..4i64 {
            for v1 in 0..4i64 {
                let v = vec![v0, v1];
                let m = freudenthal_mult(&q, &w, &v).unwrap();
                for k in 0..2 {
                    let refl = reflect_dim(k, &v, &w, &q).unwrap();
                    if refl.iter().all(|&x| x >= 0) {
                        assert_eq!(m, freudenthal_mult(&q, &w, &refl).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn freudenthal_extremal_weights_have_mult_one() {
        let q = a2();
        let w = [1, 1];
        for v0 in 0..4i64 {
            for v1 in 0..4i64 {
                let v = vec![v0, v1];
                if is_extremal(&v, &w, &q).unwrap() {
                    assert_eq!(freudenthal_mult(&q, &w, &v).unwrap(), 1);
                }
            }
        }
    }
}
