//! Truncated Laurent series in λ with τ-Laurent coefficients.

use super::scalar::{q, ExactScalar, Q};
use super::tau::TauLaurent;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;

/// `Σ_{floor ≤ e < trunc} c_e λ^e + O(λ^trunc)`.
///
/// `floor` is kept equal to the valuation; a series that is zero through its
/// truncation has `floor == trunc` and no stored coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LambdaSeries {
    floor: i32,
    trunc: i32,
    c: Vec<TauLaurent>,
}

impl LambdaSeries {
    pub fn new(floor: i32, trunc: i32, mut c: Vec<TauLaurent>) -> Self {
        assert!(trunc >= floor, "trunc below floor");
        c.resize((trunc - floor) as usize, TauLaurent::zero());
        let mut s = LambdaSeries { floor, trunc, c };
        s.normalize();
        s
    }
    pub fn from_scalars(floor: i32, trunc: i32, c: Vec<ExactScalar>) -> Self {
        Self::new(floor, trunc, c.into_iter().map(TauLaurent::constant).collect())
    }
    pub fn from_rationals(floor: i32, trunc: i32, c: Vec<Q>) -> Self {
        Self::from_scalars(floor, trunc, c.into_iter().map(ExactScalar::real).collect())
    }
    pub fn zero(trunc: i32) -> Self {
        LambdaSeries { floor: trunc, trunc, c: Vec::new() }
    }
    pub fn one(trunc: i32) -> Self {
        Self::monomial(0, TauLaurent::one(), trunc)
    }
    pub fn monomial(e: i32, coeff: TauLaurent, trunc: i32) -> Self {
        if e >= trunc {
            return Self::zero(trunc);
        }
        Self::new(e, trunc, vec![coeff])
    }
    pub fn constant(s: ExactScalar, trunc: i32) -> Self {
        Self::monomial(0, TauLaurent::constant(s), trunc)
    }
    fn normalize(&mut self) {
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.floor += lead as i32;
        }
    }
    pub fn floor(&self) -> i32 {
        self.floor
    }
    pub fn trunc(&self) -> i32 {
        self.trunc
    }
    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        (!self.c.is_empty()).then_some(self.floor)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Coefficient of λ^e; panics if `e` is at or beyond the truncation.
    pub fn coeff(&self, e: i32) -> TauLaurent {
        self.try_coeff(e).unwrap_or_else(|| panic!("λ^{e} beyond truncation {}", self.trunc))
    }
    pub fn try_coeff(&self, e: i32) -> Option<TauLaurent> {
        if e >= self.trunc {
            return None;
        }
        if e < self.floor {
            return Some(TauLaurent::zero());
        }
        Some(self.c[(e - self.floor) as usize].clone())
    }
    pub fn coeff_ref(&self, e: i32) -> Option<&TauLaurent> {
        if e < self.floor || e >= self.trunc {
            None
        } else {
            Some(&self.c[(e - self.floor) as usize])
        }
    }
    pub fn terms(&self) -> impl Iterator<Item = (i32, &TauLaurent)> {
        let f = self.floor;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, x)| (f + k as i32, x))
    }
    /// Lowers the truncation order.
    pub fn truncate(&self, trunc: i32) -> Self {
        if trunc >= self.trunc {
            return self.clone();
        }
        if trunc <= self.floor {
            return Self::zero(trunc);
        }
        let c = self.c[..(trunc - self.floor) as usize].to_vec();
        LambdaSeries { floor: self.floor, trunc, c }
    }
    pub fn map_coeffs(&self, f: impl Fn(&TauLaurent) -> TauLaurent) -> Self {
        LambdaSeries::new(self.floor, self.trunc, self.c.iter().map(f).collect())
    }
    pub fn scale(&self, s: &ExactScalar) -> Self {
        self.map_coeffs(|x| x.scale(s))
    }
    pub fn scale_tau(&self, t: &TauLaurent) -> Self {
        self.map_coeffs(|x| x * t)
    }
    /// Multiplies by λ^k.
    pub fn shift(&self, k: i32) -> Self {
        LambdaSeries { floor: self.floor + k, trunc: self.trunc + k, c: self.c.clone() }
    }
    /// Substitutes λ ↦ sλ.
    pub fn subst_scale(&self, s: &ExactScalar) -> Self {
        let inv = s.inv().expect("nonzero scale");
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(k, x)| {
                let e = self.floor + k as i32;
                let p = if e >= 0 { s.pow(e as u32) } else { inv.pow((-e) as u32) };
                x.scale(&p)
            })
            .collect();
        LambdaSeries::new(self.floor, self.trunc, c)
    }
    pub fn d_tau(&self) -> Self {
        self.map_coeffs(|x| x.derivative())
    }
    pub fn eval_tau(&self, t: &Q) -> Self {
        self.map_coeffs(|x| TauLaurent::constant(x.eval(t)))
    }
    pub fn add(&self, o: &Self) -> Self {
        let trunc = self.trunc.min(o.trunc);
        let floor = self.floor.min(o.floor).min(trunc);
        let mut c = vec![TauLaurent::zero(); (trunc - floor) as usize];
        for (e, x) in self.terms().chain(o.terms()) {
            if e < trunc {
                let slot = &mut c[(e - floor) as usize];
                *slot = &*slot + x;
            }
        }
        LambdaSeries::new(floor, trunc, c)
    }
    pub fn neg(&self) -> Self {
        self.map_coeffs(|x| -x)
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        let trunc = (self.trunc + o.floor).min(o.trunc + self.floor);
        let floor = (self.floor + o.floor).min(trunc);
        let mut c = vec![TauLaurent::zero(); (trunc - floor) as usize];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                let e = self.floor + o.floor + (i + j) as i32;
                if e >= trunc {
                    break;
                }
                if !b.is_zero() {
                    let slot = &mut c[(e - floor) as usize];
                    *slot = &*slot + &(a * b);
                }
            }
        }
        LambdaSeries::new(floor, trunc, c)
    }
    /// Division; each step divides by the leading coefficient of `o` exactly
    /// (always possible when it is a τ-monomial).
    pub fn div(&self, o: &Self) -> Result<Self> {
        let Some(bv) = o.valuation() else {
            return Err(Error::DivisionByZero);
        };
        let lead = &o.c[0];
        let trunc = (self.trunc - bv).min(self.floor - bv + (o.trunc - bv));
        let floor = (self.floor - bv).min(trunc);
        let n = (trunc - floor).max(0) as usize;
        let mut qc: Vec<TauLaurent> = Vec::with_capacity(n);
        for k in 0..n {
            let e = floor + k as i32;
            let mut acc = self.try_coeff(e + bv).unwrap_or_default();
            for (j, qj) in qc.iter().enumerate() {
                if qj.is_zero() {
                    continue;
                }
                let be = bv + (k - j) as i32;
                if let Some(b) = o.coeff_ref(be) {
                    if !b.is_zero() {
                        acc = &acc - &(qj * b);
                    }
                }
            }
            let qk = acc
                .div_exact(lead)
                .ok_or_else(|| Error::NonzeroRemainder(format!("λ^{e}: {acc} / {lead}")))?;
            qc.push(qk);
        }
        Ok(LambdaSeries::new(floor, trunc, qc))
    }
    pub fn inv(&self) -> Result<Self> {
        Self::one(self.trunc - self.valuation().unwrap_or(0)).div(self)
    }
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.trunc - self.floor);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }
    /// exp of a series with positive valuation.
    pub fn exp(&self) -> Result<Self> {
        if self.valuation().is_some_and(|v| v < 1) {
            return Err(Error::Precondition("exp needs zero constant term and no poles".into()));
        }
        let t = self.trunc.max(1);
        let mut g: Vec<TauLaurent> = vec![TauLaurent::one()];
        for n in 1..t {
            let mut acc = TauLaurent::zero();
            for k in 1..=n {
                if let Some(f) = self.coeff_ref(k) {
                    if !f.is_zero() {
                        acc = &acc + &(f * &g[(n - k) as usize]).scale_q(&q(k as i64));
                    }
                }
            }
            g.push(acc.scale_q(&(Q::one() / q(n as i64))));
        }
        Ok(LambdaSeries::new(0, t, g))
    }
    /// log of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        let ok = self.valuation() == Some(0) && self.c[0] == TauLaurent::one();
        if !ok {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let t = self.trunc;
        let mut l: Vec<TauLaurent> = vec![TauLaurent::zero()];
        for n in 1..t {
            let mut acc = self.coeff(n).scale_q(&q(n as i64));
            for k in 1..n {
                let f = self.coeff(n - k);
                if !f.is_zero() && !l[k as usize].is_zero() {
                    acc = &acc - &(&l[k as usize] * &f).scale_q(&q(k as i64));
                }
            }
            l.push(acc.scale_q(&(Q::one() / q(n as i64))));
        }
        Ok(LambdaSeries::new(0, t, l))
    }
    /// Coefficientwise equality through the smaller truncation.
    pub fn agrees_with(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Display for LambdaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(e, x)| format!("({x})*lambda^{e}")).collect();
        if parts.is_empty() {
            write!(f, "O(lambda^{})", self.trunc)
        } else {
            write!(f, "{} + O(lambda^{})", parts.join(" + "), self.trunc)
        }
    }
}
impl fmt::Debug for LambdaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `2 sin(mλ/2)` through `λ^L` (exclusive).
pub fn sin_expand(m: i64, l: i32) -> LambdaSeries {
    let mut c = vec![Q::zero(); l.max(0) as usize];
    // Σ_k (-1)^k (m/2)^{2k+1} λ^{2k+1} · 2/(2k+1)!
    let half = super::scalar::qf(m, 2);
    let mut fact = Q::one();
    let mut pw = Q::one();
    for e in 1..l {
        fact *= q(e as i64);
        pw *= &half;
        if e % 2 == 1 {
            let sign = if (e / 2) % 2 == 0 { q(2) } else { q(-2) };
            c[e as usize] = &sign * &pw / &fact;
        }
    }
    LambdaSeries::from_rationals(0, l.max(0), c)
}

#[cfg(test)]
mod tests {
    use super::super::scalar::qf;
    use super::*;

    fn rs(floor: i32, trunc: i32, v: &[i64]) -> LambdaSeries {
        LambdaSeries::from_rationals(floor, trunc, v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn monomial_shift() {
        let a = rs(1, 6, &[1, 1]);
        let b = rs(-1, 4, &[1]);
        let p = a.mul(&b);
        assert!(p.agrees_with(&rs(0, 5, &[1, 1])));
    }

    #[test]
    fn self_division() {
        let a = rs(0, 8, &[1, 1]);
        assert!(a.div(&a).unwrap().agrees_with(&LambdaSeries::one(8)));
    }

    #[test]
    fn geometric_series() {
        let geo = rs(0, 8, &[1; 8]);
        let p = geo.mul(&rs(0, 8, &[1, -1]));
        assert_eq!(p.trunc(), 8);
        assert!(p.agrees_with(&LambdaSeries::one(8)));
    }

    #[test]
    fn exp_log_roundtrip() {
        let f = rs(1, 9, &[2, -1, 3, 0, 5]);
        let back = f.exp().unwrap().log().unwrap();
        assert!(back.agrees_with(&f));
        assert!(LambdaSeries::zero(5).exp().unwrap().agrees_with(&LambdaSeries::one(5)));
        assert!(LambdaSeries::one(5).exp().is_err());
    }

    #[test]
    fn sine_series() {
        let s = sin_expand(1, 4);
        assert_eq!(s.coeff(1), TauLaurent::one());
        assert_eq!(s.coeff(3), TauLaurent::constant(ExactScalar::real(qf(-1, 24))));
        assert!(sin_expand(0, 6).is_zero());
        assert_eq!(sin_expand(5, 3).coeff(1), TauLaurent::constant(ExactScalar::from_int(5)));
    }

    #[test]
    fn inverse_sine_has_pole() {
        let inv = sin_expand(1, 8).inv().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.coeff(1), TauLaurent::constant(ExactScalar::real(qf(1, 24))));
    }
}
