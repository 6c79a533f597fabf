//! Rational functions of u = q^{1/2} carrying a power of −i.

use super::lambda::LambdaSeries;
use super::scalar::{q, qf, ExactScalar, Q};
use super::tau::TauLaurent;
use super::upoly::UPoly;
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;

/// `(−i)^ipow · u^shift · num(u)/den(u)`.
///
/// Canonical form: `ipow ∈ {0,1}` (a factor `(−i)² = −1` is moved into `num`),
/// `num` and `den` coprime, neither divisible by `u`, `den` monic. Zero is
/// `ipow = 0, shift = 0, num = 0, den = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QFunction {
    ipow: i32,
    shift: i64,
    num: UPoly,
    den: UPoly,
}

impl QFunction {
    pub fn zero() -> Self {
        QFunction { ipow: 0, shift: 0, num: UPoly::zero(), den: UPoly::one() }
    }
    pub fn one() -> Self {
        Self::constant(Q::one())
    }
    pub fn constant(x: Q) -> Self {
        Self::from_parts(0, 0, UPoly::constant(x), UPoly::one())
    }
    /// u^m.
    pub fn u_pow(m: i64) -> Self {
        Self::from_parts(0, m, UPoly::one(), UPoly::one())
    }
    /// A Laurent polynomial `Σ c_e u^e`.
    pub fn laurent(terms: &[(i64, Q)]) -> Self {
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![Q::zero(); (hi - low + 1) as usize];
        for (e, x) in terms {
            c[(e - low) as usize] += x;
        }
        Self::from_parts(0, low, UPoly::new(c), UPoly::one())
    }
    /// `2 sin(mλ/2)` written as `(−i)(u^m − u^{−m})`.
    pub fn sine(m: i64) -> Self {
        Self::laurent(&[(m, Q::one()), (-m, -Q::one())]).with_ipow(1)
    }
    /// `1 − q^m = 1 − u^{2m}`.
    pub fn one_minus_q(m: i64) -> Self {
        Self::laurent(&[(0, Q::one()), (2 * m, -Q::one())])
    }
    pub fn with_ipow(mut self, k: i32) -> Self {
        self.ipow += k;
        self.canonicalize();
        self
    }
    pub fn from_parts(ipow: i32, shift: i64, num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = QFunction { ipow, shift, num, den };
        f.canonicalize();
        f
    }
    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            *self = QFunction { ipow: 0, shift: 0, num: UPoly::zero(), den: UPoly::one() };
            return;
        }
        let a = self.num.low_order();
        let b = self.den.low_order();
        if a > 0 {
            self.num = self.num.drop_low(a);
        }
        if b > 0 {
            self.den = self.den.drop_low(b);
        }
        self.shift += a as i64 - b as i64;
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) > 0 {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let l = self.den.lead().unwrap().clone();
        if !l.is_one() {
            self.num = self.num.scale(&(Q::one() / &l));
            self.den = self.den.scale(&(Q::one() / &l));
        }
        let k = self.ipow.rem_euclid(4);
        if k >= 2 {
            self.num = self.num.neg();
        }
        self.ipow = k % 2;
    }
    pub fn ipow(&self) -> i32 {
        self.ipow
    }
    pub fn shift(&self) -> i64 {
        self.shift
    }
    pub fn num(&self) -> &UPoly {
        &self.num
    }
    pub fn den(&self) -> &UPoly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        // cross-cancel before multiplying to keep degrees small
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_rem(&g1).0;
        let d2 = o.den.div_rem(&g1).0;
        let n2 = o.num.div_rem(&g2).0;
        let d1 = self.den.div_rem(&g2).0;
        Self::from_parts(self.ipow + o.ipow, self.shift + o.shift, n1.mul(&n2), d1.mul(&d2))
    }
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_parts(-self.ipow, -self.shift, self.den.clone(), self.num.clone()))
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }
    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
    pub fn scale(&self, s: &Q) -> Self {
        Self::from_parts(self.ipow, self.shift, self.num.scale(s), self.den.clone())
    }
    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }
    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.ipow != o.ipow {
            return Err(Error::IpowMismatch(self.ipow, o.ipow));
        }
        let s = self.shift.min(o.shift);
        let a = self.num.shift((self.shift - s) as usize);
        let b = o.num.shift((o.shift - s) as usize);
        let g = self.den.gcd(&o.den);
        let da = self.den.div_rem(&g).0;
        let db = o.den.div_rem(&g).0;
        let num = a.mul(&db).add(&b.mul(&da));
        let den = da.mul(&o.den);
        Ok(Self::from_parts(self.ipow, s, num, den))
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }
    /// The substitution u ↦ 1/u; for `ipow = 1` the sign flip of −i is kept
    /// implicit, i.e. this acts on the ℚ(u) part only.
    pub fn invert_u(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0) as i64;
        let dd = self.den.degree().unwrap_or(0) as i64;
        Self::from_parts(self.ipow, -self.shift - dn + dd, self.num.reversed(), self.den.reversed())
    }
    /// True when the function lies in ℚ(q), i.e. only even powers of u occur.
    pub fn is_in_q(&self) -> bool {
        self.shift % 2 == 0 && self.num.is_even() && self.den.is_even()
    }
    /// Expansion around u = 0 of the ℚ(u) part: coefficients of u^{shift+k},
    /// k < n, returned with `shift`.
    pub fn u_series(&self, n: usize) -> (i64, Vec<Q>) {
        let d = self.den.coeffs();
        let num = self.num.coeffs();
        let inv0 = Q::one() / &d[0];
        let mut out: Vec<Q> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = num.get(k).cloned().unwrap_or_else(Q::zero);
            for j in 1..=k.min(d.len() - 1) {
                acc -= &d[j] * &out[k - j];
            }
            out.push(acc * &inv0);
        }
        (self.shift, out)
    }
    /// Numeric value at a rational u (for spot checks).
    pub fn eval_u(&self, u: &Q) -> Option<ExactScalar> {
        let d = self.den.eval(u);
        if d.is_zero() || u.is_zero() {
            return None;
        }
        let mut up = Q::one();
        let base = if self.shift >= 0 { u.clone() } else { Q::one() / u };
        for _ in 0..self.shift.unsigned_abs() {
            up *= &base;
        }
        let v = self.num.eval(u) / d * up;
        Some(ExactScalar::i_pow(-(self.ipow as i64)).scale(&v))
    }
}

/// Expansion of `u^m = e^{imλ/2}` through `λ^{trunc}` (exclusive).
fn u_power_series(m: i64, trunc: i32) -> Vec<ExactScalar> {
    let mut out = Vec::with_capacity(trunc.max(0) as usize);
    let step = ExactScalar::new(Q::zero(), qf(m, 2));
    let mut term = ExactScalar::one();
    for k in 0..trunc.max(0) {
        out.push(term.clone());
        term = (&term * &step).scale(&(Q::one() / q(k as i64 + 1)));
    }
    out
}

fn poly_series(p: &UPoly, shift: i64, trunc: i32) -> LambdaSeries {
    let mut acc = vec![ExactScalar::zero(); trunc.max(0) as usize];
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, x) in u_power_series(shift + i as i64, trunc).into_iter().enumerate() {
            acc[k] += &x.scale(c);
        }
    }
    LambdaSeries::from_scalars(0, trunc.max(0), acc)
}

/// Substitutes u = e^{iλ/2} and multiplies by (−i)^ipow, returning the
/// λ-series through `λ^l` (exclusive).
pub fn qfun_to_lambda(f: &QFunction, l: i32) -> Result<LambdaSeries> {
    if f.is_zero() {
        return Ok(LambdaSeries::zero(l));
    }
    // The order of vanishing of den at u = 1 bounds the pole of the result.
    let mut extra = 4;
    let vd = loop {
        let d = poly_series(&f.den, 0, extra);
        if let Some(v) = d.valuation() {
            break v;
        }
        extra *= 2;
        if extra > 4096 {
            return Err(Error::Truncation("denominator expands to zero".into()));
        }
    };
    let n = l + 2 * vd + 1;
    let num = poly_series(&f.num, f.shift, n);
    let den = poly_series(&f.den, 0, n);
    let s = num.div(&den)?.truncate(l);
    let ph = ExactScalar::i_pow(-(f.ipow as i64));
    Ok(s.map_coeffs(|x| TauLaurent::scale(x, &ph)))
}

impl fmt::Display for QFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.ipow == 1 {
            write!(f, "(-i)*")?;
        }
        if self.shift != 0 {
            write!(f, "u^{}*", self.shift)?;
        }
        write!(f, "({})", self.num)?;
        if self.den != UPoly::one() {
            write!(f, "/({})", self.den)?;
        }
        Ok(())
    }
}
impl fmt::Debug for QFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::lambda::sin_expand;
    use super::*;

    #[test]
    fn euler_identity() {
        let s = qfun_to_lambda(&QFunction::sine(1), 8).unwrap();
        assert!(s.agrees_with(&sin_expand(1, 8)));
        assert!(qfun_to_lambda(&QFunction::one(), 5).unwrap().agrees_with(&LambdaSeries::one(5)));
    }

    #[test]
    fn inverse_sine() {
        let f = QFunction::sine(1).inv().unwrap();
        assert_eq!(f.ipow(), 1);
        let s = qfun_to_lambda(&f, 6).unwrap();
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.coeff(-1), TauLaurent::one());
        assert_eq!(s.coeff(1), TauLaurent::constant(ExactScalar::real(qf(1, 24))));
    }

    #[test]
    fn canonical_cancellation() {
        let a = QFunction::one_minus_q(2).div(&QFunction::one_minus_q(1)).unwrap();
        // (1 - q^2)/(1 - q) = 1 + q
        assert_eq!(a, QFunction::laurent(&[(0, Q::one()), (2, Q::one())]));
        let s = QFunction::sine(1);
        assert_eq!(s.mul(&s), QFunction::laurent(&[(2, q(-1)), (0, q(2)), (-2, q(-1))]));
    }

    #[test]
    fn ipow_mismatch() {
        assert!(QFunction::sine(1).add(&QFunction::one()).is_err());
    }
}
