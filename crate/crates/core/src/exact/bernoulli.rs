use super::scalar::{q, Q};
use num_integer::binomial;
use num_bigint::BigInt;
use num_traits::Zero;

/// Bernoulli numbers with B_1 = −1/2.
pub fn bernoulli(n: usize) -> Q {
    bernoulli_table(n)[n].clone()
}

pub fn bernoulli_table(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = vec![q(1)];
    for m in 1..=n {
        let mut s = Q::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Q::from_integer(binomial(BigInt::from(m + 1), BigInt::from(k))) * bk;
        }
        b.push(-s / q(m as i64 + 1));
    }
    b
}

#[cfg(test)]
mod tests {
    use super::super::scalar::qf;
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), q(1));
        assert_eq!(bernoulli(1), qf(-1, 2));
        assert_eq!(bernoulli(2), qf(1, 6));
        assert_eq!(bernoulli(4), qf(-1, 30));
        assert_eq!(bernoulli(12), qf(-691, 2730));
        assert!(bernoulli(7).is_zero());
    }
}
