//! Integer partitions and symmetric-group data.

use crate::error::{Error, Result};
use crate::exact::{QFunction, Q};
use num_traits::One;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

/// A weakly decreasing list of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }
    pub fn empty() -> Self {
        Partition(Vec::new())
    }
    pub fn single(n: usize) -> Self {
        Self::new(vec![n])
    }
    pub fn parts(&self) -> &[usize] {
        &self.0
    }
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    /// `i`-th part (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }
    pub fn conjugate(&self) -> Self {
        let m = self.part(0);
        Partition((1..=m).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }
    /// Multiplicity of each part size.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
    /// |Aut μ| = ∏ m_j!.
    pub fn aut(&self) -> u128 {
        self.multiplicities().iter().map(|&(_, c)| factorial(c)).product()
    }
    /// z_μ = ∏ m_j! j^{m_j}.
    pub fn z(&self) -> u128 {
        self.aut() * self.0.iter().map(|&p| p as u128).product::<u128>()
    }
    /// κ_μ = |μ| + Σ (μ_i² − 2iμ_i), 1-based i.
    pub fn kappa(&self) -> i64 {
        let mut k = self.size() as i64;
        for (i, &p) in self.0.iter().enumerate() {
            let p = p as i64;
            k += p * p - 2 * (i as i64 + 1) * p;
        }
        k
    }
    /// Hook lengths row by row.
    pub fn hooks(&self) -> Vec<usize> {
        let c = self.conjugate();
        let mut h = Vec::with_capacity(self.size());
        for (i, &r) in self.0.iter().enumerate() {
            for j in 0..r {
                h.push(r - j + c.part(j) - i - 1);
            }
        }
        h
    }
    /// Young-diagram containment ρ ⊆ self.
    pub fn contains(&self, rho: &Partition) -> bool {
        rho.len() <= self.len() && rho.0.iter().enumerate().all(|(i, &r)| r <= self.0[i])
    }
    /// Multiset union of parts.
    pub fn union(&self, o: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Partition::new(v)
    }
    /// Removes one copy of a part; `None` if absent.
    pub fn remove_part(&self, p: usize) -> Option<Partition> {
        let i = self.0.iter().position(|&x| x == p)?;
        let mut v = self.0.clone();
        v.remove(i);
        Some(Partition(v))
    }
    /// Adds a part.
    pub fn with_part(&self, p: usize) -> Partition {
        let mut v = self.0.clone();
        v.push(p);
        Partition::new(v)
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}
impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: std::result::Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse::<usize>()).collect();
        let parts = parts.map_err(|e| Error::Invalid(format!("partition {s:?}: {e}")))?;
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("partition {s:?} has a zero part")));
        }
        Ok(Partition::new(parts))
    }
}

/// All partitions of `n` in reverse lexicographic order: (n), (n−1,1), ….
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// All partitions of size at most `n`, by size then reverse-lex.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(enumerate_partitions).collect()
}

/// (z_μ, |Aut μ|, κ_μ).
pub fn basic_stats(mu: &Partition) -> (u128, u128, i64) {
    (mu.z(), mu.aut(), mu.kappa())
}

type CharKey = (Partition, Partition);

fn char_cache() -> &'static RwLock<HashMap<CharKey, i64>> {
    static CACHE: OnceLock<RwLock<HashMap<CharKey, i64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// χ_ν(C(μ)) by the Murnaghan–Nakayama rule.
pub fn character(nu: &Partition, mu: &Partition) -> Result<i64> {
    if nu.size() != mu.size() {
        return Err(Error::SizeMismatch(format!("|{nu}| != |{mu}|")));
    }
    Ok(mn(nu, mu))
}

fn mn(nu: &Partition, mu: &Partition) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (nu.clone(), mu.clone());
    if let Some(&v) = char_cache().read().unwrap().get(&key) {
        return v;
    }
    // strip the largest part as a border strip, using beta numbers
    let r = mu.part(0);
    let rest = Partition(mu.0[1..].to_vec());
    let l = nu.len();
    let beta: Vec<i64> = (0..l).map(|i| (nu.0[i] + l - 1 - i) as i64).collect();
    let mut total = 0i64;
    for i in 0..l {
        let b = beta[i] - r as i64;
        if b < 0 || beta.contains(&b) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b && x < beta[i]).count();
        let mut nb = beta.clone();
        nb[i] = b;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = nb.iter().enumerate().map(|(j, &x)| (x - (l - 1 - j) as i64) as usize).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&Partition::new(parts), &rest);
    }
    char_cache().write().unwrap().insert(key, total);
    total
}

/// dim R_ν / |ν|! = 1/∏ hooks.
pub fn hook_dim(nu: &Partition) -> Q {
    let p: u128 = nu.hooks().iter().map(|&h| h as u128).product();
    Q::one() / Q::from_integer(p.into())
}

/// Principal specialization of a skew Schur function, with a flag telling
/// whether ρ ⊆ μ (when not, the value is zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewSchur {
    pub value: QFunction,
    pub contained: bool,
}

fn h_principal(k: i64) -> QFunction {
    if k < 0 {
        return QFunction::zero();
    }
    let mut den = QFunction::one();
    for i in 1..=k {
        den = den.mul(&QFunction::one_minus_q(i));
    }
    den.inv().expect("nonzero")
}

/// s_{μ/ρ}(1, q, q², …) via Jacobi–Trudi with h_k = 1/∏_{i≤k}(1 − q^i).
pub fn skew_schur_principal(mu: &Partition, rho: &Partition) -> SkewSchur {
    if !mu.contains(rho) {
        return SkewSchur { value: QFunction::zero(), contained: false };
    }
    let n = mu.len();
    let mut m: Vec<Vec<QFunction>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| h_principal(mu.part(i) as i64 - rho.part(j) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    SkewSchur { value: determinant(&mut m), contained: true }
}

/// Determinant over ℚ(u) by Gaussian elimination; entries all carry ipow 0.
fn determinant(m: &mut [Vec<QFunction>]) -> QFunction {
    let n = m.len();
    let mut det = QFunction::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return QFunction::zero();
        };
        if p != c {
            m.swap(p, c);
            det = det.neg();
        }
        let piv = m[c][c].clone();
        det = det.mul(&piv);
        let pinv = piv.inv().expect("nonzero pivot");
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].mul(&pinv);
            for k in c..n {
                let v = m[c][k].mul(&f);
                m[r][k] = m[r][k].sub(&v).expect("same ipow");
            }
        }
    }
    det
}

/// An unsigned integer as a rational.
pub fn qn(n: u128) -> Q {
    Q::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(10).len(), 42);
        let four = enumerate_partitions(4);
        assert_eq!(four[0], p(&[4]));
        assert_eq!(four[1], p(&[3, 1]));
        assert_eq!(four[4], p(&[1, 1, 1, 1]));
    }

    #[test]
    fn stats() {
        assert_eq!(basic_stats(&p(&[2, 1])), (2, 1, 0));
        assert_eq!(basic_stats(&p(&[1, 1])), (2, 2, -2));
        assert_eq!(basic_stats(&p(&[2])), (2, 1, 2));
        assert_eq!(p(&[3, 1, 1]).to_string(), "3,1,1");
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("2,0".parse::<Partition>().is_err());
    }

    #[test]
    fn small_characters() {
        assert_eq!(character(&p(&[3]), &p(&[2, 1])).unwrap(), 1);
        assert_eq!(character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert!(character(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn hooks() {
        assert_eq!(hook_dim(&p(&[2, 1])), Q::new(1.into(), 3.into()));
        assert_eq!(hook_dim(&p(&[1])), Q::one());
    }

    #[test]
    fn skew_schur_examples() {
        let one_row = skew_schur_principal(&p(&[2]), &Partition::empty());
        let expect = QFunction::one_minus_q(1).mul(&QFunction::one_minus_q(2)).inv().unwrap();
        assert_eq!(one_row.value, expect);
        assert_eq!(skew_schur_principal(&p(&[2, 1]), &p(&[2, 1])).value, QFunction::one());
        let no = skew_schur_principal(&p(&[1]), &p(&[2]));
        assert!(!no.contained && no.value.is_zero());
    }
}
