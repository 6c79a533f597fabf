//! Formal series in partition-indexed power sums p_μ and cut-and-join operators.

use crate::error::{Error, Result};
use crate::exact::{q, LambdaSeries, Q};
use crate::partition::Partition;
use std::collections::BTreeMap;

/// Truncation order given to the additive identity of λ-series coefficients;
/// any real truncation is smaller, so sums inherit the finite one.
const UNBOUNDED: i32 = 1 << 20;

/// Coefficient ring for [`PSeries`].
pub trait Coeff: Clone + PartialEq + Send + Sync + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale_q(&self, s: &Q) -> Self;
    fn neg(&self) -> Self {
        self.scale_q(&-q(1))
    }
    fn is_one(&self) -> bool {
        self.sub(&Self::one()).is_zero()
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Coeff for Q {
    fn zero() -> Self {
        <Q as num_traits::Zero>::zero()
    }
    fn one() -> Self {
        q(1)
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale_q(&self, s: &Q) -> Self {
        self * s
    }
}

impl Coeff for LambdaSeries {
    fn zero() -> Self {
        LambdaSeries::zero(UNBOUNDED)
    }
    fn one() -> Self {
        LambdaSeries::one(UNBOUNDED)
    }
    fn is_zero(&self) -> bool {
        LambdaSeries::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        LambdaSeries::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LambdaSeries::mul(self, o)
    }
    fn scale_q(&self, s: &Q) -> Self {
        self.map_coeffs(|x| x.scale_q(s))
    }
}

/// One partition per variable family.
pub type Key = Vec<Partition>;

/// `Σ c_key p^1_{key[0]} ⋯ p^f_{key[f−1]}`, all keys of total weight ≤ `cap`.
#[derive(Clone, PartialEq, Debug)]
pub struct PSeries<C: Coeff> {
    families: usize,
    cap: usize,
    terms: BTreeMap<Key, C>,
}

pub fn key_weight(k: &Key) -> usize {
    k.iter().map(|p| p.size()).sum()
}

impl<C: Coeff> PSeries<C> {
    pub fn zero(families: usize, cap: usize) -> Self {
        assert!((1..=3).contains(&families), "1 to 3 families");
        PSeries { families, cap, terms: BTreeMap::new() }
    }
    pub fn one(families: usize, cap: usize) -> Self {
        let mut s = Self::zero(families, cap);
        s.insert(vec![Partition::empty(); families], C::one());
        s
    }
    /// `c · p_key`.
    pub fn monomial(families: usize, cap: usize, key: Key, c: C) -> Self {
        let mut s = Self::zero(families, cap);
        s.insert(key, c);
        s
    }
    /// `p^fam_n`.
    pub fn p(families: usize, cap: usize, fam: usize, n: usize) -> Self {
        let mut key = vec![Partition::empty(); families];
        key[fam] = Partition::single(n);
        Self::monomial(families, cap, key, C::one())
    }
    pub fn families(&self) -> usize {
        self.families
    }
    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Key, &C)> {
        self.terms.iter()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn get(&self, key: &[Partition]) -> Option<&C> {
        self.terms.get(key)
    }
    pub fn coeff(&self, key: &[Partition]) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }
    /// Adds `c` to the coefficient of `key`, dropping it beyond the cap.
    pub fn insert(&mut self, key: Key, c: C) {
        debug_assert_eq!(key.len(), self.families);
        if key_weight(&key) > self.cap || c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
    fn check(&self, o: &Self) -> Result<()> {
        if self.families != o.families || self.cap != o.cap {
            return Err(Error::SizeMismatch(format!(
                "series shapes ({}, {}) vs ({}, {})",
                self.families, self.cap, o.families, o.cap
            )));
        }
        Ok(())
    }
    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.insert(k.clone(), c.clone());
        }
        Ok(r)
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        self.map(|_, c| c.neg())
    }
    pub fn scale(&self, s: &C) -> Self {
        self.map(|_, c| c.mul(s))
    }
    pub fn scale_q(&self, s: &Q) -> Self {
        self.map(|_, c| c.scale_q(s))
    }
    /// Applies `f(key, coeff)` termwise.
    pub fn map(&self, f: impl Fn(&Key, &C) -> C) -> Self {
        let mut r = Self::zero(self.families, self.cap);
        for (k, c) in &self.terms {
            r.insert(k.clone(), f(k, c));
        }
        r
    }
    /// Part of total weight exactly `w`.
    pub fn homogeneous(&self, w: usize) -> Self {
        let mut r = Self::zero(self.families, self.cap);
        for (k, c) in &self.terms {
            if key_weight(k) == w {
                r.insert(k.clone(), c.clone());
            }
        }
        r
    }
    pub fn with_cap(&self, cap: usize) -> Self {
        let mut r = Self::zero(self.families, cap);
        for (k, c) in &self.terms {
            r.insert(k.clone(), c.clone());
        }
        r
    }
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = Self::zero(self.families, self.cap);
        for (ka, ca) in &self.terms {
            let wa = key_weight(ka);
            for (kb, cb) in &o.terms {
                if wa + key_weight(kb) > self.cap {
                    continue;
                }
                let k: Key = ka.iter().zip(kb).map(|(a, b)| a.union(b)).collect();
                r.insert(k, ca.mul(cb));
            }
        }
        Ok(r)
    }
    pub fn constant_term(&self) -> C {
        self.coeff(&vec![Partition::empty(); self.families])
    }
    /// exp of a series without constant term, via the weight grading.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Precondition("exp needs zero constant term".into()));
        }
        // w G_w = Σ_{k=1}^{w} k F_k G_{w−k}
        let f: Vec<Self> = (0..=self.cap).map(|w| self.homogeneous(w)).collect();
        let mut g: Vec<Self> = vec![Self::one(self.families, self.cap)];
        for w in 1..=self.cap {
            let mut acc = Self::zero(self.families, self.cap);
            for k in 1..=w {
                if f[k].is_zero() || g[w - k].is_zero() {
                    continue;
                }
                acc = acc.add(&f[k].mul(&g[w - k])?.scale_q(&q(k as i64)))?;
            }
            g.push(acc.scale_q(&(q(1) / q(w as i64))));
        }
        let mut r = Self::zero(self.families, self.cap);
        for s in g {
            r = r.add(&s)?;
        }
        Ok(r)
    }
    /// log of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        // F_w = G_w − (1/w) Σ_{k=1}^{w−1} k F_k G_{w−k}
        let g: Vec<Self> = (0..=self.cap).map(|w| self.homogeneous(w)).collect();
        let mut f: Vec<Self> = vec![Self::zero(self.families, self.cap)];
        for w in 1..=self.cap {
            let mut acc = Self::zero(self.families, self.cap);
            for k in 1..w {
                if f[k].is_zero() || g[w - k].is_zero() {
                    continue;
                }
                acc = acc.add(&f[k].mul(&g[w - k])?.scale_q(&q(k as i64)))?;
            }
            let fw = g[w].sub(&acc.scale_q(&(q(1) / q(w as i64))))?;
            f.push(fw);
        }
        let mut r = Self::zero(self.families, self.cap);
        for s in f {
            r = r.add(&s)?;
        }
        Ok(r)
    }
    /// ∂/∂p^fam_i.
    pub fn d_p(&self, fam: usize, i: usize) -> Self {
        let mut r = Self::zero(self.families, self.cap);
        for (k, c) in &self.terms {
            let m = k[fam].parts().iter().filter(|&&x| x == i).count();
            if m == 0 {
                continue;
            }
            let mut nk = k.clone();
            nk[fam] = k[fam].remove_part(i).unwrap();
            r.insert(nk, c.scale_q(&q(m as i64)));
        }
        r
    }
    /// Multiplication by p^fam_i.
    pub fn times_p(&self, fam: usize, i: usize) -> Self {
        let mut r = Self::zero(self.families, self.cap);
        for (k, c) in &self.terms {
            let mut nk = k.clone();
            nk[fam] = k[fam].with_part(i);
            r.insert(nk, c.clone());
        }
        r
    }
    /// (1/2) Σ_{i,j≥1} [ij p_{i+j} ∂²/∂p_i∂p_j + (i+j) p_i p_j ∂/∂p_{i+j}] in one family,
    /// summed over ordered pairs (i, j).
    pub fn cut_join_linear(&self, fam: usize) -> Self {
        let mut r = Self::zero(self.families, self.cap);
        for (k, c) in &self.terms {
            let parts = k[fam].parts();
            // join: unordered pairs of positions
            for a in 0..parts.len() {
                for b in a + 1..parts.len() {
                    let mut v: Vec<usize> = parts.to_vec();
                    let (x, y) = (v[a], v[b]);
                    v.remove(b);
                    v.remove(a);
                    v.push(x + y);
                    let mut nk = k.clone();
                    nk[fam] = Partition::new(v);
                    r.insert(nk, c.scale_q(&q((x * y) as i64)));
                }
            }
            // cut: one position, all splittings i + j = n in order, weight n/2
            for a in 0..parts.len() {
                if a > 0 && parts[a] == parts[a - 1] {
                    continue;
                }
                let n = parts[a];
                let mult = parts.iter().filter(|&&x| x == n).count();
                for i in 1..n {
                    let mut v: Vec<usize> = parts.to_vec();
                    v.remove(a);
                    v.push(i);
                    v.push(n - i);
                    let mut nk = k.clone();
                    nk[fam] = Partition::new(v);
                    r.insert(nk, c.scale_q(&(q((n * mult) as i64) / q(2))));
                }
            }
        }
        r
    }
    /// The linear operator plus (1/2) Σ_{i,j} ij p_{i+j} ∂_iF ∂_jF.
    pub fn cut_join_nonlinear(&self, fam: usize) -> Result<Self> {
        self.cut_join_linear(fam).add(&Self::cut_join_quadratic(self, self, fam)?)
    }
    /// (1/2) Σ_{i,j} ij p_{i+j} ∂_iA ∂_jB.
    pub fn cut_join_quadratic(a: &Self, b: &Self, fam: usize) -> Result<Self> {
        a.check(b)?;
        let cap = a.cap;
        let da: Vec<Self> = (0..=cap).map(|i| if i == 0 { Self::zero(a.families, cap) } else { a.d_p(fam, i) }).collect();
        let db: Vec<Self> = (0..=cap).map(|i| if i == 0 { Self::zero(a.families, cap) } else { b.d_p(fam, i) }).collect();
        let mut r = Self::zero(a.families, cap);
        for i in 1..cap {
            if da[i].is_zero() {
                continue;
            }
            for j in 1..=cap - i {
                if db[j].is_zero() {
                    continue;
                }
                let c = cap - i - j;
                let prod = da[i].with_cap(c).mul(&db[j].with_cap(c))?;
                let t = prod.with_cap(cap).times_p(fam, i + j);
                r = r.add(&t.scale_q(&(q((i * j) as i64) / q(2))))?;
            }
        }
        Ok(r)
    }
    /// Exchanges two families.
    pub fn swap_families(&self, a: usize, b: usize) -> Self {
        let mut r = Self::zero(self.families, self.cap);
        for (k, c) in &self.terms {
            let mut nk = k.clone();
            nk.swap(a, b);
            r.insert(nk, c.clone());
        }
        r
    }
    /// Sets every variable of `fam` to zero.
    pub fn slice_zero(&self, fam: usize) -> Self {
        let mut r = Self::zero(self.families, self.cap);
        for (k, c) in &self.terms {
            if k[fam].is_empty() {
                r.insert(k.clone(), c.clone());
            }
        }
        r
    }
    /// Drops families other than `fam` (after slicing them to zero).
    pub fn restrict_to(&self, fam: usize) -> PSeries<C> {
        let mut r = PSeries::zero(1, self.cap);
        for (k, c) in &self.terms {
            if k.iter().enumerate().all(|(i, p)| i == fam || p.is_empty()) {
                r.insert(vec![k[fam].clone()], c.clone());
            }
        }
        r
    }
    /// Keys in canonical order: total weight, then family-wise reverse lexicographic.
    pub fn sorted_keys(&self) -> Vec<Key> {
        let mut keys: Vec<Key> = self.terms.keys().cloned().collect();
        keys.sort_by(|a, b| {
            key_weight(a)
                .cmp(&key_weight(b))
                .then_with(|| {
                    for (x, y) in a.iter().zip(b) {
                        let o = x.size().cmp(&y.size()).then_with(|| y.cmp(x));
                        if o != std::cmp::Ordering::Equal {
                            return o;
                        }
                    }
                    std::cmp::Ordering::Equal
                })
        });
        keys
    }
}

impl PSeries<LambdaSeries> {
    /// ∂/∂τ of every coefficient.
    pub fn d_tau(&self) -> Self {
        self.map(|_, c| c.d_tau())
    }
    /// Multiplies every coefficient by a λ-series.
    pub fn times_series(&self, s: &LambdaSeries) -> Self {
        self.map(|_, c| c.mul(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = PSeries<Q>;

    fn key(v: &[usize]) -> Key {
        vec![Partition::new(v.to_vec())]
    }

    #[test]
    fn product_is_union() {
        let a = S::p(1, 6, 0, 2);
        let b = S::p(1, 6, 0, 1);
        assert_eq!(a.mul(&b).unwrap(), S::monomial(1, 6, key(&[2, 1]), q(1)));
        let s = a.add(&b).unwrap();
        assert_eq!(S::one(1, 6).mul(&s).unwrap(), s);
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.coeff(&key(&[1, 1])), q(1));
        assert_eq!(sq.coeff(&key(&[2, 1])), q(2));
        assert_eq!(sq.coeff(&key(&[2, 2])), q(1));
    }

    #[test]
    fn cut_and_join_on_monomials() {
        assert_eq!(S::p(1, 6, 0, 2).cut_join_linear(0), S::monomial(1, 6, key(&[1, 1]), q(1)));
        assert_eq!(S::monomial(1, 6, key(&[1, 1]), q(1)).cut_join_linear(0), S::p(1, 6, 0, 2));
        // ordered pairs (1,2), (2,1) each give (1/2)·3·p_1p_2
        assert_eq!(S::p(1, 6, 0, 3).cut_join_linear(0), S::monomial(1, 6, key(&[2, 1]), q(3)));
        assert!(S::p(1, 6, 0, 1).cut_join_linear(0).is_zero());
        // (∂_1 p_1)² = 1 leaves the quadratic term p_2/2, as CJ(e^{p_1}) = (p_2/2)e^{p_1}
        let half = S::monomial(1, 6, key(&[2]), Q::new(1.into(), 2.into()));
        assert_eq!(S::p(1, 6, 0, 1).cut_join_nonlinear(0).unwrap(), half);
    }

    #[test]
    fn exp_log_small() {
        let f = S::p(1, 4, 0, 1).add(&S::p(1, 4, 0, 2)).unwrap();
        let g = f.exp().unwrap();
        assert_eq!(g.coeff(&key(&[2, 1])), q(1));
        assert_eq!(g.coeff(&key(&[1, 1])), Q::new(1.into(), 2.into()));
        assert_eq!(g.log().unwrap(), f);
        assert_eq!(S::zero(1, 4).exp().unwrap(), S::one(1, 4));
    }

    #[test]
    fn cap_mismatch() {
        assert!(S::one(1, 3).add(&S::one(1, 4)).is_err());
    }
}
