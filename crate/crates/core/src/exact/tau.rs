//! Laurent polynomials in the framing variable τ.

use super::scalar::{ExactScalar, Q};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `Σ c_e τ^e` stored densely from exponent `low`; trimmed so both ends are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TauLaurent {
    low: i32,
    c: Vec<ExactScalar>,
}

impl TauLaurent {
    pub fn zero() -> Self {
        TauLaurent { low: 0, c: Vec::new() }
    }
    pub fn one() -> Self {
        Self::constant(ExactScalar::one())
    }
    pub fn constant(s: ExactScalar) -> Self {
        Self::monomial(0, s)
    }
    pub fn monomial(e: i32, s: ExactScalar) -> Self {
        let mut t = TauLaurent { low: e, c: vec![s] };
        t.trim();
        t
    }
    /// The variable τ itself.
    pub fn tau() -> Self {
        Self::monomial(1, ExactScalar::one())
    }
    pub fn from_coeffs(low: i32, c: Vec<ExactScalar>) -> Self {
        let mut t = TauLaurent { low, c };
        t.trim();
        t
    }
    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.low += lead as i32;
        }
        if self.c.is_empty() {
            self.low = 0;
        }
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn min_exp(&self) -> Option<i32> {
        (!self.c.is_empty()).then_some(self.low)
    }
    pub fn max_exp(&self) -> Option<i32> {
        (!self.c.is_empty()).then(|| self.low + self.c.len() as i32 - 1)
    }
    pub fn coeff(&self, e: i32) -> ExactScalar {
        let k = e - self.low;
        if k < 0 || k as usize >= self.c.len() {
            ExactScalar::zero()
        } else {
            self.c[k as usize].clone()
        }
    }
    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &ExactScalar)> {
        let low = self.low;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, x)| (low + k as i32, x))
    }
    pub fn is_monomial(&self) -> bool {
        self.c.len() == 1
    }
    pub fn is_real(&self) -> bool {
        self.c.iter().all(|x| x.is_real())
    }
    pub fn scale(&self, s: &ExactScalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        TauLaurent { low: self.low, c: self.c.iter().map(|x| x * s).collect() }
    }
    pub fn scale_q(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        TauLaurent { low: self.low, c: self.c.iter().map(|x| x.scale(s)).collect() }
    }
    /// Multiplies by τ^k.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        TauLaurent { low: self.low + k, c: self.c.clone() }
    }
    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(k, x)| x.scale(&super::scalar::q((self.low + k as i32) as i64)))
            .collect();
        TauLaurent::from_coeffs(self.low - 1, c)
    }
    /// The substitution τ ↦ 1/τ.
    pub fn invert_var(&self) -> Self {
        let Some(hi) = self.max_exp() else { return Self::zero() };
        let c = self.c.iter().rev().cloned().collect();
        TauLaurent { low: -hi, c }
    }
    pub fn eval(&self, t: &Q) -> ExactScalar {
        if self.is_zero() {
            return ExactScalar::zero();
        }
        // a Laurent polynomial: t^low · p(t)
        let mut acc = ExactScalar::zero();
        for x in self.c.iter().rev() {
            acc = acc.scale(t);
            acc += x;
        }
        let mut tp = Q::one();
        let base = if self.low >= 0 { t.clone() } else { Q::one() / t };
        for _ in 0..self.low.unsigned_abs() {
            tp *= &base;
        }
        acc.scale(&tp)
    }
    /// Inverse of a monomial.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if !self.is_monomial() {
            return None;
        }
        Some(TauLaurent { low: -self.low, c: vec![self.c[0].inv()?] })
    }
    /// Exact division; `None` when the divisor does not divide.
    pub fn div_exact(&self, d: &TauLaurent) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(inv) = d.monomial_inverse() {
            return Some(self * &inv);
        }
        let (qt, r) = self.div_rem(d);
        r.is_zero().then_some(qt)
    }
    /// Division with remainder, reducing from the top degree down; the remainder
    /// has a span strictly shorter than the divisor.
    pub fn div_rem(&self, d: &TauLaurent) -> (Self, Self) {
        let dl = d.c.len();
        let lead_inv = d.c.last().expect("nonzero divisor").inv().expect("nonzero lead");
        let mut r = self.c.clone();
        let mut qc = vec![ExactScalar::zero(); r.len().saturating_sub(dl - 1).max(0)];
        if r.len() < dl {
            return (Self::zero(), self.clone());
        }
        for top in (dl - 1..r.len()).rev() {
            let f = &r[top] * &lead_inv;
            if f.is_zero() {
                continue;
            }
            let base = top + 1 - dl;
            for (j, dj) in d.c.iter().enumerate() {
                let v = &f * dj;
                r[base + j] -= &v;
            }
            qc[base] = f;
        }
        let qt = TauLaurent::from_coeffs(self.low - d.low, qc);
        let rem = TauLaurent::from_coeffs(self.low, r);
        (qt, rem)
    }
}

impl<'a> Add<&'a TauLaurent> for &'a TauLaurent {
    type Output = TauLaurent;
    fn add(self, o: &TauLaurent) -> TauLaurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let hi = self.max_exp().unwrap().max(o.max_exp().unwrap());
        let mut c = vec![ExactScalar::zero(); (hi - low + 1) as usize];
        for (k, x) in self.c.iter().enumerate() {
            c[(self.low - low) as usize + k] += x;
        }
        for (k, x) in o.c.iter().enumerate() {
            c[(o.low - low) as usize + k] += x;
        }
        TauLaurent::from_coeffs(low, c)
    }
}
impl<'a> Sub<&'a TauLaurent> for &'a TauLaurent {
    type Output = TauLaurent;
    fn sub(self, o: &TauLaurent) -> TauLaurent {
        self + &(-o)
    }
}
impl<'a> Mul<&'a TauLaurent> for &'a TauLaurent {
    type Output = TauLaurent;
    fn mul(self, o: &TauLaurent) -> TauLaurent {
        if self.is_zero() || o.is_zero() {
            return TauLaurent::zero();
        }
        let mut c = vec![ExactScalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += &(a * b);
                }
            }
        }
        TauLaurent::from_coeffs(self.low + o.low, c)
    }
}
impl Neg for &TauLaurent {
    type Output = TauLaurent;
    fn neg(self) -> TauLaurent {
        TauLaurent { low: self.low, c: self.c.iter().map(|x| -x).collect() }
    }
}
impl Add for TauLaurent {
    type Output = TauLaurent;
    fn add(self, o: TauLaurent) -> TauLaurent {
        &self + &o
    }
}
impl Sub for TauLaurent {
    type Output = TauLaurent;
    fn sub(self, o: TauLaurent) -> TauLaurent {
        &self - &o
    }
}
impl Mul for TauLaurent {
    type Output = TauLaurent;
    fn mul(self, o: TauLaurent) -> TauLaurent {
        &self * &o
    }
}

impl fmt::Display for TauLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, x)| match e {
                0 => format!("{x}"),
                1 => format!("{x}*tau"),
                _ => format!("{x}*tau^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
impl fmt::Debug for TauLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::scalar::{q, qf};
    use super::*;

    fn r(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn laurent_mul_and_eval() {
        // (τ + τ^{-1})^2 = τ^2 + 2 + τ^{-2}
        let a = &TauLaurent::tau() + &TauLaurent::monomial(-1, r(1));
        let b = &a * &a;
        assert_eq!(b.coeff(0), r(2));
        assert_eq!(b.min_exp(), Some(-2));
        assert_eq!(b.eval(&q(2)), ExactScalar::real(qf(25, 4)));
        assert_eq!(b.invert_var(), b);
    }

    #[test]
    fn exact_division() {
        let p = TauLaurent::from_coeffs(0, vec![r(1), r(1)]); // 1+τ
        let p2 = &p * &p;
        assert_eq!(p2.div_exact(&p).unwrap(), p);
        let (_, rem) = TauLaurent::from_coeffs(0, vec![r(1), r(0), r(1)]).div_rem(&p);
        assert_eq!(rem, TauLaurent::constant(r(2)));
        assert!(TauLaurent::from_coeffs(0, vec![r(1), r(0), r(1)]).div_exact(&p).is_none());
    }

    #[test]
    fn derivative_of_laurent() {
        let a = TauLaurent::from_coeffs(-1, vec![r(1), r(0), r(3)]);
        let d = a.derivative();
        assert_eq!(d.coeff(-2), r(-1));
        assert_eq!(d.coeff(0), r(3));
    }
}
