//! ψ-class intersection numbers by the DVV recursion, and Virasoro constraints.

use crate::error::{Error, Result};
use crate::exact::{q, qf, Q};
use crate::partition::{factorial, qn};
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

fn double_factorial(n: i64) -> Q {
    let mut p: u128 = 1;
    let mut k = n;
    while k > 1 {
        p *= k as u128;
        k -= 2;
    }
    qn(p)
}

/// (2k+1)!!, the normalization of σ̃_k = (2k+1)!! ψ^k.
pub fn sigma_norm(k: usize) -> Q {
    double_factorial(2 * k as i64 + 1)
}

fn cache() -> &'static RwLock<HashMap<(usize, Vec<usize>), Q>> {
    static C: OnceLock<RwLock<HashMap<(usize, Vec<usize>), Q>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn dimension_ok(g: usize, ks: &[usize]) -> bool {
    ks.iter().sum::<usize>() + 3 == 3 * g + ks.len()
}

/// ⟨∏ σ̃_{k_i}⟩_g. Zero off the dimension locus and on unstable (g, n).
///
/// Recurses on the largest index; seeds are ⟨σ̃_0³⟩_0 = 1 and ⟨σ̃_1⟩_1 = 3/24
/// (the latter fixed by the constant 1/16 in L_0, since the recursion has an
/// empty right-hand side there).
pub fn dvv_sigma(g: usize, ks: &[usize]) -> Q {
    let n = ks.len();
    if n == 0 || 2 * g + n < 3 || !dimension_ok(g, ks) {
        return Q::zero();
    }
    let mut key: Vec<usize> = ks.to_vec();
    key.sort_unstable_by(|a, b| b.cmp(a));
    if let Some(v) = cache().read().unwrap().get(&(g, key.clone())) {
        return v.clone();
    }
    let v = if g == 0 && key == [0, 0, 0] {
        q(1)
    } else if g == 1 && key == [1] {
        qf(3, 24)
    } else {
        dvv_step(g, &key)
    };
    cache().write().unwrap().insert((g, key), v.clone());
    v
}

fn dvv_step(g: usize, key: &[usize]) -> Q {
    let nn = key[0];
    let s = &key[1..];
    let mut acc = Q::zero();
    // Σ_{k∈S} (2k+1) ⟨σ̃_{n+k−1} ∏_{l≠k}⟩_g
    for (i, &k) in s.iter().enumerate() {
        if nn + k == 0 {
            continue;
        }
        let mut rest: Vec<usize> = s.to_vec();
        rest.remove(i);
        rest.push(nn + k - 1);
        acc += q(2 * k as i64 + 1) * dvv_sigma(g, &rest);
    }
    if nn >= 2 {
        let half = qf(1, 2);
        for a in 0..=nn - 2 {
            let b = nn - 2 - a;
            if g >= 1 {
                let mut v: Vec<usize> = s.to_vec();
                v.push(a);
                v.push(b);
                acc += &half * dvv_sigma(g - 1, &v);
            }
            // S = X ⊔ Y over index subsets, g_1 + g_2 = g
            let m = s.len();
            for mask in 0u32..(1 << m) {
                let mut x = vec![a];
                let mut y = vec![b];
                for (j, &k) in s.iter().enumerate() {
                    if mask & (1 << j) != 0 {
                        x.push(k);
                    } else {
                        y.push(k);
                    }
                }
                for g1 in 0..=g {
                    let l = dvv_sigma(g1, &x);
                    if l.is_zero() {
                        continue;
                    }
                    acc += &half * l * dvv_sigma(g - g1, &y);
                }
            }
        }
    }
    acc
}

/// ⟨∏ τ_{k_i}⟩_g = ⟨∏ σ̃_{k_i}⟩_g / ∏ (2k_i+1)!!.
pub fn dvv(g: usize, ks: &[usize]) -> Result<Q> {
    if ks.is_empty() {
        return Err(Error::Invalid("correlator needs at least one insertion".into()));
    }
    let mut v = dvv_sigma(g, ks);
    for &k in ks {
        v /= sigma_norm(k);
    }
    Ok(v)
}

/// Genus forced by the dimension constraint, if any.
pub fn genus_of(ks: &[usize]) -> Option<usize> {
    let s = ks.iter().sum::<usize>() + 3;
    let n = ks.len();
    (s >= n && (s - n) % 3 == 0).then(|| (s - n) / 3)
}

/// Sorted multiset of t̃-indices standing for the monomial ∏ t̃_{k}.
type Mono = Vec<usize>;

fn multiplicity_factorial(m: &[usize]) -> Q {
    let mut f = Q::from_integer(1.into());
    let mut i = 0;
    while i < m.len() {
        let j = (i..m.len()).find(|&j| m[j] != m[i]).unwrap_or(m.len());
        f *= qn(factorial(j - i));
        i = j;
    }
    f
}

/// Coefficients of τ(t̃) = exp Σ_g ⟨exp Σ t̃_n σ̃_n⟩_g, computed on demand.
#[derive(Default)]
pub struct TauFunction {
    memo: HashMap<Mono, Q>,
}

impl TauFunction {
    pub fn new() -> Self {
        Self::default()
    }
    /// Coefficient of ∏ t̃ in log τ.
    pub fn free_energy(m: &[usize]) -> Q {
        match genus_of(m) {
            Some(g) if !m.is_empty() => dvv_sigma(g, m) / multiplicity_factorial(m),
            _ => Q::zero(),
        }
    }
    /// Coefficient of the monomial `m` (sorted ascending) in τ.
    pub fn coeff(&mut self, m: &[usize]) -> Q {
        if m.is_empty() {
            return q(1);
        }
        if let Some(v) = self.memo.get(m) {
            return v.clone();
        }
        // α_j τ[α] = Σ_{β ⊆ α, β_j ≥ 1} β_j F[β] τ[α − β], with j the largest index
        let j = *m.last().unwrap();
        let aj = m.iter().filter(|&&x| x == j).count();
        let mut acc = Q::zero();
        let subs = sub_multisets(m);
        for b in subs {
            let bj = b.iter().filter(|&&x| x == j).count();
            if bj == 0 {
                continue;
            }
            let f = Self::free_energy(&b);
            if f.is_zero() {
                continue;
            }
            let rest = multiset_minus(m, &b);
            acc += q(bj as i64) * f * self.coeff(&rest);
        }
        let v = acc / q(aj as i64);
        self.memo.insert(m.to_vec(), v.clone());
        v
    }
}

fn sub_multisets(m: &[usize]) -> Vec<Mono> {
    // group by value, choose a count per group
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for &x in m {
        match groups.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => groups.push((x, 1)),
        }
    }
    let mut out: Vec<Mono> = vec![Vec::new()];
    for (v, c) in groups {
        let mut next = Vec::new();
        for base in &out {
            for take in 0..=c {
                let mut b = base.clone();
                b.extend(std::iter::repeat_n(v, take));
                next.push(b);
            }
        }
        out = next;
    }
    out.retain(|b| !b.is_empty());
    out
}

fn multiset_minus(a: &[usize], b: &[usize]) -> Mono {
    let mut r = a.to_vec();
    for x in b {
        let i = r.iter().position(|y| y == x).expect("sub-multiset");
        r.remove(i);
    }
    r
}

fn with(m: &[usize], extra: &[usize]) -> Mono {
    let mut r = m.to_vec();
    r.extend_from_slice(extra);
    r.sort_unstable();
    r
}

fn mult(m: &[usize], k: usize) -> i64 {
    m.iter().filter(|&&x| x == k).count() as i64
}

/// Coefficient of t̃^m in ∂τ/∂t̃_a.
fn d1(tau: &mut TauFunction, m: &[usize], a: usize) -> Q {
    q(mult(m, a) + 1) * tau.coeff(&with(m, &[a]))
}

/// Coefficient of t̃^m in ∂²τ/∂t̃_a∂t̃_b.
fn d2(tau: &mut TauFunction, m: &[usize], a: usize, b: usize) -> Q {
    let c = if a == b {
        q((mult(m, a) + 1) * (mult(m, a) + 2))
    } else {
        q((mult(m, a) + 1) * (mult(m, b) + 1))
    };
    c * tau.coeff(&with(m, &[a, b]))
}

/// Coefficient of t̃^m in (L_n τ).
///
/// L_n = −½∂_{n+1} + Σ_k (k+½) t̃_k ∂_{k+n} + (¼ t̃_0² if n = −1) + (1/16 if n = 0)
///       + ¼ Σ_{i=1}^{n} ∂_{i−1}∂_{n−i}.
pub fn virasoro_coeff(tau: &mut TauFunction, n: i64, m: &[usize]) -> Q {
    let mut acc = Q::zero();
    if n + 1 >= 0 {
        acc -= qf(1, 2) * d1(tau, m, (n + 1) as usize);
    }
    // t̃_k ∂_{k+n}: pick one copy of t̃_k out of m
    let mut seen = Vec::new();
    for &k in m {
        if seen.contains(&k) {
            continue;
        }
        seen.push(k);
        let j = k as i64 + n;
        if j < 0 {
            continue;
        }
        let rest = multiset_minus(m, &[k]);
        acc += qf(2 * k as i64 + 1, 2) * d1(tau, &rest, j as usize);
    }
    match n {
        -1 => {
            if mult(m, 0) >= 2 {
                acc += qf(1, 4) * tau.coeff(&multiset_minus(m, &[0, 0]));
            }
        }
        0 => acc += qf(1, 16) * tau.coeff(m),
        _ => {
            for i in 1..=n {
                acc += qf(1, 4) * d2(tau, m, (i - 1) as usize, (n - i) as usize);
            }
        }
    }
    acc
}

/// Residual of L_n τ = 0 on all monomials of degree ≤ `order` in t̃_0..t̃_order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirasoroResidual {
    pub n: i64,
    pub order: usize,
    pub checked: usize,
    pub nonzero: usize,
    pub max_abs: Q,
}

pub fn virasoro_residual(n: i64, order: usize) -> Result<VirasoroResidual> {
    if n < -1 {
        return Err(Error::Invalid("Virasoro index must be ≥ −1".into()));
    }
    let mut tau = TauFunction::new();
    let mut monos: Vec<Mono> = vec![Vec::new()];
    let mut frontier: Vec<Mono> = vec![Vec::new()];
    for _ in 0..order {
        let mut next = Vec::new();
        for m in &frontier {
            let lo = m.last().copied().unwrap_or(0);
            for k in lo..=order {
                let mut e = m.clone();
                e.push(k);
                next.push(e);
            }
        }
        monos.extend(next.iter().cloned());
        frontier = next;
    }
    let mut nonzero = 0;
    let mut max_abs = Q::zero();
    for m in &monos {
        let v = virasoro_coeff(&mut tau, n, m).abs();
        if !v.is_zero() {
            nonzero += 1;
            if v > max_abs {
                max_abs = v;
            }
        }
    }
    Ok(VirasoroResidual { n, order, checked: monos.len(), nonzero, max_abs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_and_string_equation() {
        assert_eq!(dvv(0, &[0, 0, 0]).unwrap(), q(1));
        assert_eq!(dvv(1, &[1]).unwrap(), qf(1, 24));
        assert_eq!(dvv(0, &[0, 0, 0, 1]).unwrap(), q(1));
        // off the dimension locus
        assert_eq!(dvv(0, &[0, 0, 1]).unwrap(), q(0));
        assert_eq!(dvv(1, &[0, 2]).unwrap(), qf(1, 24));
    }

    #[test]
    fn classical_values() {
        assert_eq!(dvv(1, &[1, 1]).unwrap(), qf(1, 24));
        assert_eq!(dvv(2, &[4]).unwrap(), qf(1, 1152));
        assert_eq!(dvv(3, &[7]).unwrap(), qf(1, 82944));
        assert_eq!(dvv(0, &[1, 1, 0, 0, 0]).unwrap(), q(2));
    }

    #[test]
    fn constant_of_l0() {
        let mut t = TauFunction::new();
        assert_eq!(virasoro_coeff(&mut t, 0, &[]), q(0));
        assert_eq!(virasoro_coeff(&mut t, -1, &[0, 0]), q(0));
    }

    #[test]
    fn symmetric_in_insertions() {
        assert_eq!(dvv(2, &[2, 3, 0]).unwrap(), dvv(2, &[0, 3, 2]).unwrap());
    }
}
