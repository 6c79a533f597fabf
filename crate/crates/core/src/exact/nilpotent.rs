//! Sparse multivariate polynomials with nilpotent generators.

use super::scalar::{fmt_q, q, Q};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Variable layout shared by all elements of one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    /// `Some(n)`: x^n = 0 and exponents are nonnegative. `None`: Laurent variable.
    orders: Vec<Option<i32>>,
    /// Monomials whose total degree in these variables exceeds the bound vanish.
    degree_cap: Option<(Vec<usize>, i32)>,
}

impl Ring {
    pub fn new(vars: &[(&str, Option<i32>)]) -> Arc<Ring> {
        Arc::new(Ring {
            names: vars.iter().map(|v| v.0.to_string()).collect(),
            orders: vars.iter().map(|v| v.1).collect(),
            degree_cap: None,
        })
    }
    pub fn with_degree_cap(vars: &[(&str, Option<i32>)], capped: &[&str], cap: i32) -> Arc<Ring> {
        let mut r = Ring {
            names: vars.iter().map(|v| v.0.to_string()).collect(),
            orders: vars.iter().map(|v| v.1).collect(),
            degree_cap: None,
        };
        let idx = capped.iter().map(|n| r.index(n).expect("capped variable")).collect();
        r.degree_cap = Some((idx, cap));
        Arc::new(r)
    }
    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    fn admits(&self, e: &[i32]) -> bool {
        for (x, o) in e.iter().zip(&self.orders) {
            if let Some(o) = o {
                if *x < 0 || *x >= *o {
                    return false;
                }
            }
        }
        if let Some((idx, cap)) = &self.degree_cap {
            if idx.iter().map(|&i| e[i]).sum::<i32>() > *cap {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct NilpotentPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Vec<i32>, Q>,
}

impl NilpotentPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        NilpotentPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }
    pub fn constant(ring: &Arc<Ring>, c: Q) -> Self {
        let mut p = Self::zero(ring);
        p.insert(vec![0; ring.nvars()], c);
        p
    }
    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Q::one())
    }
    pub fn monomial(ring: &Arc<Ring>, e: Vec<i32>, c: Q) -> Self {
        let mut p = Self::zero(ring);
        p.insert(e, c);
        p
    }
    /// The generator `name`, raised to `pow`.
    pub fn var(ring: &Arc<Ring>, name: &str, pow: i32) -> Self {
        let i = ring.index(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0; ring.nvars()];
        e[i] = pow;
        Self::monomial(ring, e, Q::one())
    }
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Q)> {
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
    fn insert(&mut self, e: Vec<i32>, c: Q) {
        if c.is_zero() || !self.ring.admits(&e) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
    pub fn coeff(&self, e: &[i32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.insert(e.clone(), c.clone());
        }
        r
    }
    pub fn scale(&self, s: &Q) -> Self {
        let mut r = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            r.insert(e.clone(), c * s);
        }
        r
    }
    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.insert(e, ca * cb);
            }
        }
        r
    }
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
    /// exp(f) for nilpotent f (the sum terminates).
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(&vec![0; self.ring.nvars()]).is_zero() {
            return Err(Error::Precondition("exp of a non-nilpotent element".into()));
        }
        let mut acc = Self::one(&self.ring);
        let mut term = Self::one(&self.ring);
        for k in 1.. {
            term = term.mul(self).scale(&(Q::one() / q(k)));
            if term.is_zero() {
                break;
            }
            if k > 10_000 {
                return Err(Error::Precondition("exp argument is not nilpotent".into()));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
    /// Inverse of `u + n` where `u` is a single invertible monomial (made of
    /// Laurent variables) and `n` is nilpotent.
    pub fn inv(&self) -> Result<Self> {
        let unit = self
            .terms
            .iter()
            .find(|(e, _)| e.iter().zip(&self.ring.orders).all(|(x, o)| o.is_none() || *x == 0))
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or_else(|| Error::NonInvertibleLeading("no unit monomial".into()))?;
        let uinv = Self::monomial(
            &self.ring,
            unit.0.iter().map(|x| -x).collect(),
            Q::one() / &unit.1,
        );
        let rest = self.sub(&Self::monomial(&self.ring, unit.0.clone(), unit.1.clone()));
        let nil = rest.mul(&uinv).neg();
        let mut acc = Self::one(&self.ring);
        let mut term = Self::one(&self.ring);
        for k in 1.. {
            term = term.mul(&nil);
            if term.is_zero() {
                break;
            }
            if k > 10_000 {
                return Err(Error::NonInvertibleLeading("remainder is not nilpotent".into()));
            }
            acc = acc.add(&term);
        }
        Ok(acc.mul(&uinv))
    }
    pub fn derivative(&self, name: &str) -> Self {
        let i = self.ring.index(name).expect("variable");
        let mut r = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut f = e.clone();
                f[i] -= 1;
                r.insert(f, c * q(e[i] as i64));
            }
        }
        r
    }
    /// Substitutes a polynomial for a nonnegative-exponent variable.
    pub fn substitute(&self, name: &str, by: &Self) -> Self {
        let i = self.ring.index(name).expect("variable");
        let mut powers: Vec<Self> = vec![Self::one(&self.ring)];
        let mut r = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            assert!(e[i] >= 0, "substitution into a negative power");
            while powers.len() <= e[i] as usize {
                let next = powers.last().unwrap().mul(by);
                powers.push(next);
            }
            let mut f = e.clone();
            f[i] = 0;
            let m = Self::monomial(&self.ring, f, c.clone());
            r = r.add(&m.mul(&powers[e[i] as usize]));
        }
        r
    }
    /// Substitutes `name ↦ s·name`.
    pub fn scale_var(&self, name: &str, s: &Q) -> Self {
        let i = self.ring.index(name).expect("variable");
        let mut r = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            let mut p = Q::one();
            let base = if e[i] >= 0 { s.clone() } else { Q::one() / s };
            for _ in 0..e[i].abs() {
                p *= &base;
            }
            r.insert(e.clone(), c * p);
        }
        r
    }
    /// Exchanges two variables.
    pub fn swap_vars(&self, a: &str, b: &str) -> Self {
        let i = self.ring.index(a).expect("variable");
        let j = self.ring.index(b).expect("variable");
        let mut r = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.swap(i, j);
            r.insert(f, c.clone());
        }
        r
    }
    pub fn degree_in(&self, name: &str) -> Option<i32> {
        let i = self.ring.index(name).expect("variable");
        self.terms.keys().map(|e| e[i]).max()
    }
    pub fn is_free_of(&self, name: &str) -> bool {
        let i = self.ring.index(name).expect("variable");
        self.terms.keys().all(|e| e[i] == 0)
    }
    /// Exact division by `a − b` for two nonnegative-exponent variables.
    pub fn div_difference(&self, a: &str, b: &str) -> Result<Self> {
        let i = self.ring.index(a).expect("variable");
        let j = self.ring.index(b).expect("variable");
        let mut rem = self.terms.clone();
        let mut quo = Self::zero(&self.ring);
        // repeatedly remove the term with the highest power of `a`
        loop {
            let top = rem.iter().filter(|(e, _)| e[i] > 0).max_by_key(|(e, _)| (e[i], (*e).clone()));
            let Some((e, c)) = top.map(|(e, c)| (e.clone(), c.clone())) else { break };
            let mut qe = e.clone();
            qe[i] -= 1;
            // subtract c·x^{qe}·(a − b)
            let mut plus_b = qe.clone();
            plus_b[j] += 1;
            for (m, v) in [(e.clone(), -c.clone()), (plus_b, c.clone())] {
                let ent = rem.entry(m).or_insert_with(Q::zero);
                *ent += v;
            }
            rem.retain(|_, v| !v.is_zero());
            quo.insert(qe, c);
        }
        if rem.is_empty() {
            Ok(quo)
        } else {
            Err(Error::NonzeroRemainder(format!("division by {a}-{b}")))
        }
    }
    /// Collects coefficients of monomials in the given variables, returning
    /// `exponents ↦ coefficient polynomial` (those variables set to zero).
    pub fn split_by(&self, names: &[&str]) -> BTreeMap<Vec<i32>, Self> {
        let idx: Vec<usize> = names.iter().map(|n| self.ring.index(n).expect("variable")).collect();
        let mut out: BTreeMap<Vec<i32>, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Vec<i32> = idx.iter().map(|&i| e[i]).collect();
            let mut f = e.clone();
            for &i in &idx {
                f[i] = 0;
            }
            out.entry(key).or_insert_with(|| Self::zero(&self.ring)).insert(f, c.clone());
        }
        out
    }
}

impl fmt::Display for NilpotentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut s = fmt_q(c);
            for (x, n) in e.iter().zip(&self.ring.names) {
                match x {
                    0 => {}
                    1 => s.push_str(&format!("*{n}")),
                    _ => s.push_str(&format!("*{n}^{x}")),
                }
            }
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}
impl fmt::Debug for NilpotentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sign of a rational as ±1 (zero maps to 0).
pub fn sign_of(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::super::scalar::qf;
    use super::*;

    #[test]
    fn nilpotency_truncates() {
        let r = Ring::new(&[("H", Some(5))]);
        let h = NilpotentPoly::var(&r, "H", 1);
        assert!(h.pow(5).is_zero());
        assert!(!h.pow(4).is_zero());
    }

    #[test]
    fn geometric_inverse() {
        // 1/(x − α) = −α^{-1}(1 + x/α) in x² = 0
        let r = Ring::new(&[("x", Some(2)), ("a", None)]);
        let f = NilpotentPoly::var(&r, "x", 1).sub(&NilpotentPoly::var(&r, "a", 1));
        let g = f.inv().unwrap();
        assert_eq!(g.coeff(&[0, -1]), q(-1));
        assert_eq!(g.coeff(&[1, -2]), q(-1));
        assert!(f.mul(&g).sub(&NilpotentPoly::one(&r)).is_zero());
    }

    #[test]
    fn difference_division() {
        let r = Ring::new(&[("x", Some(9)), ("y", Some(9))]);
        let x = NilpotentPoly::var(&r, "x", 1);
        let y = NilpotentPoly::var(&r, "y", 1);
        let p = x.pow(3).sub(&y.pow(3));
        let d = p.div_difference("x", "y").unwrap();
        assert_eq!(d, x.pow(2).add(&x.mul(&y)).add(&y.pow(2)));
        assert!(x.div_difference("x", "y").is_err());
    }

    #[test]
    fn exp_and_substitution() {
        let r = Ring::new(&[("H", Some(3)), ("t", None)]);
        let e = NilpotentPoly::var(&r, "H", 1).mul(&NilpotentPoly::var(&r, "t", 1)).exp().unwrap();
        assert_eq!(e.coeff(&[2, 2]), qf(1, 2));
        let s = e.substitute("t", &NilpotentPoly::constant(&r, q(2)));
        assert_eq!(s.coeff(&[2, 0]), q(2));
    }
}
