//! Dense univariate polynomials over ℚ.

use super::scalar::{fmt_q, Q};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Q>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }
    pub fn one() -> Self {
        UPoly { c: vec![Q::one()] }
    }
    pub fn constant(x: Q) -> Self {
        Self::new(vec![x])
    }
    pub fn monomial(e: usize, x: Q) -> Self {
        let mut c = vec![Q::zero(); e + 1];
        c[e] = x;
        Self::new(c)
    }
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }
    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lead(&self) -> Option<&Q> {
        self.c.last()
    }
    /// Multiplicity of the root 0.
    pub fn low_order(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }
    /// Divides by u^k; the caller guarantees the low coefficients vanish.
    pub fn drop_low(&self, k: usize) -> Self {
        UPoly::new(self.c[k..].to_vec())
    }
    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        UPoly { c: self.c.iter().map(|x| x * s).collect() }
    }
    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![Q::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in o.c.iter().enumerate() {
            c[i] += x;
        }
        Self::new(c)
    }
    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    /// Multiplies by u^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Q::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Self::new(c)
    }
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = Q::one() / d.lead().unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut qc = vec![Q::zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            if r[top].is_zero() {
                continue;
            }
            let f = &r[top] * &inv;
            let base = top - dd;
            for (j, dj) in d.c.iter().enumerate() {
                r[base + j] -= &f * dj;
            }
            qc[base] = f;
        }
        (Self::new(qc), Self::new(r))
    }
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&(Q::one() / l)),
        }
    }
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.monic();
        let mut b = o.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }
    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
    /// u^deg · p(1/u).
    pub fn reversed(&self) -> Self {
        UPoly::new(self.c.iter().rev().cloned().collect())
    }
    /// Substitutes u ↦ u^k.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Q::zero(); (self.c.len() - 1) * k + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[i * k] = x.clone();
        }
        UPoly { c }
    }
    /// True when only even powers occur.
    pub fn is_even(&self) -> bool {
        self.c.iter().enumerate().all(|(i, x)| i % 2 == 0 || x.is_zero())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_laurent(f, &self.c, 0, "u")
    }
}
impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn fmt_laurent(f: &mut fmt::Formatter<'_>, c: &[Q], low: i64, var: &str) -> fmt::Result {
    let parts: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| {
            let e = low + i as i64;
            match e {
                0 => fmt_q(x),
                1 => format!("{}*{var}", fmt_q(x)),
                _ => format!("{}*{var}^{e}", fmt_q(x)),
            }
        })
        .collect();
    if parts.is_empty() {
        write!(f, "0")
    } else {
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::super::scalar::q;
    use super::*;

    fn p(v: &[i64]) -> UPoly {
        UPoly::new(v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[-1, 1]); // u-1
        let b = p(&[1, 1]); // u+1
        let c = p(&[2, 0, 1]);
        let g = a.mul(&b).mul(&c).gcd(&a.mul(&c).mul(&c));
        assert_eq!(g, a.mul(&c).monic());
    }

    #[test]
    fn division() {
        let a = p(&[1, 0, 0, 1]);
        let (qq, r) = a.div_rem(&p(&[1, 1]));
        assert_eq!(qq, p(&[1, -1, 1]));
        assert!(r.is_zero());
    }
}
