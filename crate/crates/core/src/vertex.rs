//! Local P² from the topological-vertex gluing sum, Gromov–Witten extraction
//! and Gopakumar–Vafa invariants.

use crate::chern_simons::w_pair;
use crate::error::{Error, Result};
use crate::exact::{q, qfun_to_lambda, sin_expand, ExactScalar, LambdaSeries, QFunction, Q, TauLaurent};
use crate::partition::{enumerate_partitions, Partition};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Coefficient of Q^d in the disconnected partition function, for d ≤ d_max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalP2Partition {
    pub degree: usize,
    pub value: QFunction,
    /// Number of (ν₁, ν₂, ν₃) triples summed.
    pub terms: usize,
}

/// Σ_{Σ|ν_i| = d} W_{ν₁ν₂}W_{ν₂ν₃}W_{ν₃ν₁} (−1)^d q^{Σκ/2}, q = u².
pub fn local_p2_z(d_max: usize) -> Result<Vec<LocalP2Partition>> {
    let mut out = Vec::with_capacity(d_max + 1);
    for d in 0..=d_max {
        let mut acc = QFunction::zero();
        let mut terms = 0;
        for a in 0..=d {
            for b in 0..=d - a {
                let c = d - a - b;
                for n1 in enumerate_partitions(a) {
                    for n2 in enumerate_partitions(b) {
                        for n3 in enumerate_partitions(c) {
                            acc = acc.add(&triple_term(&n1, &n2, &n3)?)?;
                            terms += 1;
                        }
                    }
                }
            }
        }
        out.push(LocalP2Partition { degree: d, value: acc, terms });
    }
    Ok(out)
}

fn triple_term(n1: &Partition, n2: &Partition, n3: &Partition) -> Result<QFunction> {
    let k = n1.kappa() + n2.kappa() + n3.kappa();
    // q^{k/2} = u^k; κ is even so this never needs a half power, but check anyway
    if k % 2 != 0 {
        return Err(Error::HalfIntegralExponent(format!("Σκ = {k} for ({n1}; {n2}; {n3})")));
    }
    let d = n1.size() + n2.size() + n3.size();
    let sign = if d % 2 == 0 { Q::one() } else { -Q::one() };
    Ok(w_pair(n1, n2)?.mul(&w_pair(n2, n3)?).mul(&w_pair(n3, n1)?).mul(&QFunction::u_pow(k)).scale(&sign))
}

/// log Σ_d Z_d Q^d, coefficientwise: F_n = Z_n − (1/n) Σ_{k<n} k F_k Z_{n−k}.
pub fn connected_q(z: &[QFunction]) -> Result<Vec<QFunction>> {
    if z.first().is_none_or(|z0| *z0 != QFunction::one()) {
        return Err(Error::Precondition("degree-0 term must be 1".into()));
    }
    let mut f = vec![QFunction::zero()];
    for n in 1..z.len() {
        let mut acc = QFunction::zero();
        for k in 1..n {
            acc = acc.add(&f[k].mul(&z[n - k]).scale(&q(k as i64)))?;
        }
        f.push(z[n].sub(&acc.scale(&(Q::one() / q(n as i64))))?);
    }
    Ok(f)
}

/// N_{g,d}: coefficient of λ^{2g−2} Q^d in log Z with q = e^{√−1λ}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GwTable {
    pub d_max: usize,
    pub g_max: usize,
    pub n: BTreeMap<(usize, usize), Q>,
}

impl GwTable {
    pub fn get(&self, g: usize, d: usize) -> Q {
        self.n.get(&(g, d)).cloned().unwrap_or_else(Q::zero)
    }
}

/// The λ-expansions of F_d for d = 1..=d_max, through λ^l (exclusive).
pub fn free_energy_series(d_max: usize, l: i32) -> Result<Vec<LambdaSeries>> {
    let z: Vec<QFunction> = local_p2_z(d_max)?.into_iter().map(|p| p.value).collect();
    let f = connected_q(&z)?;
    let mut out = Vec::with_capacity(d_max);
    for (d, fd) in f.iter().enumerate().skip(1) {
        let s = qfun_to_lambda(fd, l)?;
        if s.floor() < -2 {
            return Err(Error::Inconsistency(format!("F_{d} has a pole of order {} in λ", -s.floor())));
        }
        out.push(s);
    }
    Ok(out)
}

pub fn extract_gw(d_max: usize, g_max: usize, l: i32) -> Result<GwTable> {
    if l < 2 * g_max as i32 + 2 {
        return Err(Error::Truncation(format!("λ-order {l} too small for genus {g_max}")));
    }
    let series = free_energy_series(d_max, l)?;
    let mut n = BTreeMap::new();
    for (i, s) in series.iter().enumerate() {
        let d = i + 1;
        for g in 0..=g_max {
            let c = s.coeff(2 * g as i32 - 2).coeff(0);
            if !c.is_real() {
                return Err(Error::Inconsistency(format!("N_{{{g},{d}}} = {c:?} is not real")));
            }
            n.insert((g, d), c.re);
        }
    }
    Ok(GwTable { d_max, g_max, n })
}

/// Whether every odd power λ^{2g−1} of every F_d vanishes.
pub fn odd_powers_vanish(d_max: usize, l: i32) -> Result<bool> {
    let series = free_energy_series(d_max, l)?;
    Ok(series.iter().all(|s| s.terms().all(|(e, c)| e % 2 == 0 || c.is_zero())))
}

/// Gopakumar–Vafa invariants n_d^g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GvTable {
    pub d_max: usize,
    pub g_max: usize,
    pub n: BTreeMap<(usize, usize), BigInt>,
}

impl GvTable {
    pub fn get(&self, g: usize, d: usize) -> BigInt {
        self.n.get(&(g, d)).cloned().unwrap_or_default()
    }
}

/// (2 sin(kλ/2))^{2g−2} through λ^l (exclusive).
fn sine_kernel(k: usize, g: usize, l: i32) -> Result<LambdaSeries> {
    // the power loses 2g−2 orders at the bottom, so expand a little further
    let s = sin_expand(k as i64, l + 4);
    let p = if g == 0 { s.pow(2).inv()? } else { s.pow(2 * g as u32 - 2) };
    Ok(p.truncate(l))
}

/// Σ_{k|d} Σ_g n_{d/k}^g (1/k)(2 sin(kλ/2))^{2g−2}, the degree-d free energy.
fn multicover(gv: &BTreeMap<(usize, usize), Q>, d: usize, g_max: usize, l: i32) -> Result<LambdaSeries> {
    let mut acc = LambdaSeries::zero(l);
    for k in (1..=d).filter(|k| d % k == 0) {
        for g in 0..=g_max {
            let Some(n) = gv.get(&(g, d / k)) else { continue };
            if n.is_zero() {
                continue;
            }
            let t = sine_kernel(k, g, l)?.scale(&ExactScalar::real(n / q(k as i64)));
            acc = acc.add(&t);
        }
    }
    Ok(acc)
}

/// N from n (the forward multi-cover map).
pub fn gv_forward(gv: &GvTable) -> Result<GwTable> {
    let l = 2 * gv.g_max as i32;
    let rat: BTreeMap<(usize, usize), Q> = gv.n.iter().map(|(k, v)| (*k, Q::from_integer(v.clone()))).collect();
    let mut n = BTreeMap::new();
    for d in 1..=gv.d_max {
        let s = multicover(&rat, d, gv.g_max, l)?;
        for g in 0..=gv.g_max {
            n.insert((g, d), s.coeff(2 * g as i32 - 2).coeff(0).re);
        }
    }
    Ok(GwTable { d_max: gv.d_max, g_max: gv.g_max, n })
}

/// Solves for n_d^g, triangular in d and then in g; fails on a non-integer.
pub fn gv_invert(gw: &GwTable) -> Result<GvTable> {
    let l = 2 * gw.g_max as i32;
    let mut solved: BTreeMap<(usize, usize), Q> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for d in 1..=gw.d_max {
        // what lower degrees already contribute through k ≥ 2
        let known = multicover(&solved, d, gw.g_max, l)?;
        let mut target: Vec<Q> = (0..=gw.g_max).map(|g| gw.get(g, d) - known.coeff(2 * g as i32 - 2).coeff(0).re).collect();
        for g in 0..=gw.g_max {
            let n = target[g].clone();
            // (2 sin(λ/2))^{2g−2} = λ^{2g−2}(1 + …): peel off its higher terms
            if !n.is_zero() {
                let ker = sine_kernel(1, g, l)?;
                for (h, t) in target.iter_mut().enumerate().skip(g + 1) {
                    *t -= &n * ker.coeff(2 * h as i32 - 2).coeff(0).re;
                }
            }
            if !n.is_integer() {
                return Err(Error::Verification(format!("n_{d}^{g} = {n} is not an integer")));
            }
            out.insert((g, d), n.to_integer());
            solved.insert((g, d), n);
        }
    }
    Ok(GvTable { d_max: gw.d_max, g_max: gw.g_max, n: out })
}

/// exp(Σ_g λ^{2g−2}F_g) rebuilt from `gw` against the vertex sum, through
/// the λ-orders that survive the products.
pub fn exp_log_roundtrip(gw: &GwTable) -> Result<bool> {
    let l = 2 * gw.g_max as i32;
    let z: Vec<QFunction> = local_p2_z(gw.d_max)?.into_iter().map(|p| p.value).collect();
    let f: Vec<LambdaSeries> = (0..=gw.d_max)
        .map(|d| {
            if d == 0 {
                return LambdaSeries::zero(l);
            }
            let c: Vec<TauLaurent> =
                (0..l + 2).map(|k| TauLaurent::constant(ExactScalar::real(if k % 2 == 0 { gw.get(k as usize / 2, d) } else { Q::zero() }))).collect();
            LambdaSeries::new(-2, l, c)
        })
        .collect();
    // Z_n = (1/n) Σ_k k F_k Z_{n−k}
    let mut zz = vec![LambdaSeries::one(l)];
    for n in 1..=gw.d_max {
        let mut acc = LambdaSeries::zero(l);
        for k in 1..=n {
            acc = acc.add(&f[k].mul(&zz[n - k]).scale(&ExactScalar::real(q(k as i64))));
        }
        zz.push(acc.scale(&ExactScalar::real(Q::one() / q(n as i64))));
    }
    for n in 1..=gw.d_max {
        let want = qfun_to_lambda(&z[n], l)?;
        if !zz[n].agrees_with(&want) || zz[n].trunc() < l - 2 * n as i32 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        let z = local_p2_z(2).unwrap();
        assert_eq!(z[0].value, QFunction::one());
        assert_eq!(z[1].terms, 3);
        assert_eq!(z[2].terms, 9);
    }

    #[test]
    fn zero_table_inverts_to_zero() {
        let gw = GwTable { d_max: 3, g_max: 2, n: BTreeMap::new() };
        let gv = gv_invert(&gw).unwrap();
        assert!(gv.n.values().all(|v| v.is_zero()));
    }
}
