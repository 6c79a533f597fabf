use crate::error::{Error, Result};
use crate::exact::{q, qf, NilpotentPoly, Ring, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Arc;

/// HG[B](t) = H{f₀ + f₁H + f₂H² + f₃H³} with z = e^t kept through z^{d_max}.
#[derive(Debug, Clone)]
pub struct QuinticHg {
    pub d_max: usize,
    /// Variables: z (nilpotent, order d_max+1), Q, t, T.
    pub ring: Arc<Ring>,
    pub f: [NilpotentPoly; 4],
    /// c_j(z): coefficient of H^{j+1} in Σ_d ∏(5H+m)/∏(H+m)^5 z^d.
    pub c: [NilpotentPoly; 4],
}

/// ∏_{m=0}^{5d}(5H+m)/∏_{m=1}^{d}(H+m)^5 in ℚ[H]/(H^5), ascending in H.
pub fn quintic_term(d: usize) -> Result<Vec<Q>> {
    let r = Ring::new(&[("H", Some(5))]);
    let h = NilpotentPoly::var(&r, "H", 1);
    let lin = |a: i64, m: i64| h.scale(&q(a)).add(&NilpotentPoly::constant(&r, q(m)));
    let mut num = NilpotentPoly::one(&r);
    for m in 0..=5 * d as i64 {
        num = num.mul(&lin(5, m));
    }
    let mut den = NilpotentPoly::one(&r);
    for m in 1..=d as i64 {
        den = den.mul(&lin(1, m).pow(5));
    }
    let v = num.mul(&den.inv()?);
    Ok((0..5).map(|i| v.coeff(&[i])).collect())
}

pub fn quintic_hg(d_max: usize) -> Result<QuinticHg> {
    if d_max == 0 {
        return Err(Error::Invalid("need d_max ≥ 1".into()));
    }
    let o = d_max as i32 + 1;
    let ring = Ring::new(&[("z", Some(o)), ("Q", Some(o)), ("t", None), ("T", None)]);
    let mut c: [NilpotentPoly; 4] = std::array::from_fn(|_| NilpotentPoly::zero(&ring));
    for d in 0..=d_max {
        let term = quintic_term(d)?;
        if !term[0].is_zero() {
            return Err(Error::Inconsistency(format!("degree {d} term is not divisible by H")));
        }
        for (j, cj) in c.iter_mut().enumerate() {
            *cj = cj.add(&NilpotentPoly::monomial(&ring, vec![d as i32, 0, 0, 0], term[j + 1].clone()));
        }
    }
    // e^{Ht} contributes t^a/a! to the H^a shift
    let f = std::array::from_fn(|j| {
        let mut acc = NilpotentPoly::zero(&ring);
        let mut fact = Q::one();
        for a in 0..=j {
            if a > 0 {
                fact *= q(a as i64);
            }
            let ta = NilpotentPoly::monomial(&ring, vec![0, 0, a as i32, 0], Q::one() / &fact);
            acc = acc.add(&ta.mul(&c[j - a]));
        }
        acc
    });
    Ok(QuinticHg { d_max, ring, f, c })
}

/// Output of the Candelas algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candelas {
    /// Coefficients of T³, T², T¹ in 𝓕 (rational constants if the structure holds).
    pub cubic: Q,
    pub quadratic: Q,
    pub linear: Q,
    /// K_d for d = 1..=d_max.
    pub k: Vec<Q>,
    /// z(Q(z)) = z and Q(z(Q)) = Q through z^{d_max}.
    pub mirror_roundtrip: bool,
    /// The mirror map e^T = z·exp(f₁/f₀ − t) as coefficients of z^1..z^{d_max}.
    pub mirror_map: Vec<Q>,
}

fn constant_in_q(p: &NilpotentPoly) -> Result<Q> {
    for (e, _) in p.terms() {
        if e.iter().any(|&x| x != 0) {
            return Err(Error::Verification(format!("expected a constant, got {p}")));
        }
    }
    Ok(p.coeff(&[0, 0, 0, 0]))
}

/// T = f₁/f₀, 𝓕 = (5/2)(f₁f₂/f₀² − f₃/f₀), rewritten in T and Q = e^T.
pub fn candelas(d_max: usize) -> Result<Candelas> {
    let hg = quintic_hg(d_max)?;
    let ring = &hg.ring;
    let [f0, f1, f2, f3] = &hg.f;
    let inv0 = f0.inv()?;
    let five_half = qf(5, 2);
    let big_f = f1.mul(f2).mul(&inv0).mul(&inv0).sub(&f3.mul(&inv0)).scale(&five_half);
    // T − t = c₁/c₀ depends on z only
    let r1 = hg.c[1].mul(&hg.c[0].inv()?);
    let z = NilpotentPoly::var(ring, "z", 1);
    let qv = NilpotentPoly::var(ring, "Q", 1);
    let q_of_z = z.mul(&r1.exp()?);
    // reversion: each pass fixes one more order
    let mut z_of_q = qv.clone();
    for _ in 0..=d_max {
        let err = q_of_z.substitute("z", &z_of_q).sub(&qv);
        z_of_q = z_of_q.sub(&err);
    }
    let mirror_roundtrip = q_of_z.substitute("z", &z_of_q) == qv && z_of_q.substitute("Q", &q_of_z) == z;
    let t_of_big_t = NilpotentPoly::var(ring, "T", 1).sub(&r1);
    let g = big_f.substitute("t", &t_of_big_t).substitute("z", &z_of_q);
    if !g.is_free_of("z") || !g.is_free_of("t") {
        return Err(Error::Inconsistency("𝓕 still depends on z or t".into()));
    }
    let by_t = g.split_by(&["T"]);
    let get = |p: i32| by_t.get(&vec![p]).cloned().unwrap_or_else(|| NilpotentPoly::zero(ring));
    if by_t.keys().any(|k| k[0] > 3) {
        return Err(Error::Verification("𝓕 has T-degree above 3".into()));
    }
    let cubic = constant_in_q(&get(3))?;
    let quadratic = constant_in_q(&get(2))?;
    let linear = constant_in_q(&get(1))?;
    let a = get(0);
    let k = (1..=d_max as i32).map(|d| a.coeff(&[0, d, 0, 0])).collect();
    let mirror_map = (1..=d_max as i32).map(|d| q_of_z.coeff(&[d, 0, 0, 0])).collect();
    Ok(Candelas { cubic, quadratic, linear, k, mirror_roundtrip, mirror_map })
}

/// K_d = Σ_{k|d} n_{d/k} k^{−3}.
pub fn multiple_cover(n: &[BigInt]) -> Vec<Q> {
    (1..=n.len())
        .map(|d| {
            (1..=d)
                .filter(|k| d % k == 0)
                .map(|k| Q::from_integer(n[d / k - 1].clone()) / q((k * k * k) as i64))
                .fold(Q::zero(), |a, b| a + b)
        })
        .collect()
}

/// Inverse of [`multiple_cover`]; every n_d must come out integral.
pub fn multiple_cover_invert(k: &[Q]) -> Result<Vec<BigInt>> {
    let mut n: Vec<BigInt> = Vec::with_capacity(k.len());
    for d in 1..=k.len() {
        let mut s = k[d - 1].clone();
        for c in 2..=d {
            if d % c == 0 {
                s -= Q::from_integer(n[d / c - 1].clone()) / q((c * c * c) as i64);
            }
        }
        if !s.is_integer() {
            return Err(Error::Verification(format!("n_{d} = {s} is not an integer")));
        }
        n.push(s.to_integer());
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_terms() {
        let hg = quintic_hg(2).unwrap();
        assert_eq!(hg.f[0].coeff(&[0, 0, 0, 0]), q(5));
        assert_eq!(hg.f[0].coeff(&[1, 0, 0, 0]), q(600));
        // f₁ − t f₀ has no z⁰ part
        let d = hg.f[1].sub(&hg.f[0].mul(&NilpotentPoly::var(&hg.ring, "t", 1)));
        assert!(d.terms().all(|(e, _)| e[0] > 0));
    }

    #[test]
    fn single_k1() {
        assert_eq!(multiple_cover_invert(&[q(7), q(7) / q(8)]).unwrap(), vec![BigInt::from(7), BigInt::from(0)]);
        assert!(multiple_cover_invert(&vec![q(0); 4]).unwrap().iter().all(|x| x.is_zero()));
    }
}
