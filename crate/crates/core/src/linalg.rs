//! Exact dense linear algebra over ℚ.

use crate::error::{Error, Result};
use crate::exact::Q;
use num_traits::Zero;

/// Solves `A x = b` for square nonsingular `A` by Gaussian elimination.
pub fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Result<Vec<Q>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::SizeMismatch("linear system is not square".into()));
    }
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .ok_or_else(|| Error::Invalid("singular interpolation system".into()))?;
        a.swap(p, c);
        b.swap(p, c);
        let inv = a[c][c].recip();
        for k in c..n {
            a[c][k] *= &inv;
        }
        b[c] *= &inv;
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
            let v = &f * &b[c];
            b[r] -= v;
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn two_by_two() {
        let x = solve(vec![vec![q(2), q(1)], vec![q(1), q(3)]], vec![q(5), q(10)]).unwrap();
        assert_eq!(x, vec![q(1), q(3)]);
        assert!(solve(vec![vec![q(1), q(1)], vec![q(2), q(2)]], vec![q(1), q(2)]).is_err());
    }
}
