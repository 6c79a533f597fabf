//! Gaussian rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q` or `p`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().ok()?;
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// A number `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    pub re: Q,
    pub im: Q,
}

impl ExactScalar {
    pub fn new(re: Q, im: Q) -> Self {
        ExactScalar { re, im }
    }
    pub fn real(re: Q) -> Self {
        ExactScalar { re, im: Q::zero() }
    }
    pub fn from_int(n: i64) -> Self {
        Self::real(q(n))
    }
    pub fn i() -> Self {
        ExactScalar { re: Q::zero(), im: Q::one() }
    }
    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        ExactScalar { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn norm_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn scale(&self, c: &Q) -> Self {
        ExactScalar { re: &self.re * c, im: &self.im * c }
    }
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return None;
        }
        Some(ExactScalar { re: &self.re / &n, im: -(&self.im / &n) })
    }
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
    /// Largest absolute value of the two parts, as a crude size measure.
    pub fn max_abs(&self) -> Q {
        let a = self.re.abs();
        let b = self.im.abs();
        if a > b {
            a
        } else {
            b
        }
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar { re: Q::zero(), im: Q::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        Self::real(Q::one())
    }
}

impl From<Q> for ExactScalar {
    fn from(r: Q) -> Self {
        Self::real(r)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_q(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}*i", fmt_q(&self.im))
        } else {
            write!(f, "({} + {}*i)", fmt_q(&self.re), fmt_q(&self.im))
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}
impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}
impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return ExactScalar::real(&self.re * &o.re);
        }
        ExactScalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}
impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero; use [`ExactScalar::inv`] for a checked inverse.
    fn div(self, o: &ExactScalar) -> ExactScalar {
        if o.im.is_zero() {
            return ExactScalar { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &ExactScalar) -> ExactScalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { re: -self.re, im: -self.im }
    }
}
impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}
impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}
impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, o: &ExactScalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}
impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, o: &ExactScalar) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared() {
        let i = ExactScalar::i();
        assert_eq!(&i * &i, -ExactScalar::one());
        assert_eq!(ExactScalar::i_pow(-1), -ExactScalar::i());
        assert_eq!(ExactScalar::i_pow(7), -ExactScalar::i());
    }

    #[test]
    fn division_roundtrip() {
        let a = ExactScalar::new(qf(3, 4), qf(-2, 5));
        let b = ExactScalar::new(qf(1, 3), q(7));
        assert_eq!(&(&a / &b) * &b, a);
        assert!(ExactScalar::zero().inv().is_none());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-6/4").unwrap(), qf(-3, 2));
        assert_eq!(fmt_q(&qf(4, 2)), "2");
        assert!(parse_q("1/0").is_none());
    }
}
