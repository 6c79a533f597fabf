use num_traits::{One, Zero};
use stringdual::exact::Q;
use stringdual::partition::*;

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec())
}

#[test]
fn row_and_column_orthogonality() {
    for n in 1..=8 {
        let ps = enumerate_partitions(n);
        for a in &ps {
            for b in &ps {
                let mut row = Q::zero();
                let mut col = Q::zero();
                for m in &ps {
                    let z = qn(m.z());
                    row += Q::from_integer((character(a, m).unwrap() * character(b, m).unwrap()).into()) / &z;
                    col += Q::from_integer((character(m, a).unwrap() * character(m, b).unwrap()).into());
                }
                col /= qn(a.z());
                let delta = if a == b { Q::one() } else { Q::zero() };
                assert_eq!(row, delta, "row {a} {b}");
                assert_eq!(col, delta, "col {a} {b}");
            }
        }
    }
}

#[test]
fn conjugation_twists_by_sign() {
    for n in 1..=8 {
        for nu in enumerate_partitions(n) {
            for mu in enumerate_partitions(n) {
                let s = if (mu.size() - mu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(character(&nu.conjugate(), &mu).unwrap(), s * character(&nu, &mu).unwrap());
            }
        }
    }
}

#[test]
fn hook_formula_matches_dimension() {
    for n in 1..=9 {
        let ones = Partition::new(vec![1; n]);
        let fact = qn(factorial(n));
        for nu in enumerate_partitions(n) {
            let dim = Q::from_integer(character(&nu, &ones).unwrap().into());
            assert!(dim > Q::zero());
            assert_eq!(hook_dim(&nu), dim / &fact);
        }
    }
}

#[test]
fn sign_character() {
    assert_eq!(character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
    // brute-force trace of the standard representation of S_3 on a 3-cycle
    // (permutation character minus trivial): 0 − 1
    assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
}

/// Σ over semistandard fillings of μ/ρ with entries ≥ 0 of q^{Σ entries},
/// returned as coefficients of q^0..q^max.
fn ssyt_series(mu: &Partition, rho: &Partition, max: usize) -> Vec<u64> {
    let mut cells = Vec::new();
    for i in 0..mu.len() {
        for j in rho.part(i)..mu.part(i) {
            cells.push((i, j));
        }
    }
    let mut out = vec![0u64; max + 1];
    let mut fill: std::collections::HashMap<(usize, usize), usize> = Default::default();
    fn rec(
        k: usize,
        sum: usize,
        cells: &[(usize, usize)],
        fill: &mut std::collections::HashMap<(usize, usize), usize>,
        out: &mut [u64],
    ) {
        let max = out.len() - 1;
        if k == cells.len() {
            out[sum] += 1;
            return;
        }
        let (i, j) = cells[k];
        let mut lo = 0;
        if j > 0 {
            if let Some(&l) = fill.get(&(i, j - 1)) {
                lo = lo.max(l);
            }
        }
        if i > 0 {
            if let Some(&a) = fill.get(&(i - 1, j)) {
                lo = lo.max(a + 1);
            }
        }
        for v in lo..=max {
            if sum + v > max {
                break;
            }
            fill.insert((i, j), v);
            rec(k + 1, sum + v, cells, fill, out);
            fill.remove(&(i, j));
        }
    }
    rec(0, 0, &cells, &mut fill, &mut out);
    out
}

#[test]
fn skew_schur_matches_tableaux() {
    let max = 10;
    for n in 0..=5 {
        for mu in enumerate_partitions(n) {
            for r in 0..=n {
                for rho in enumerate_partitions(r) {
                    if !mu.contains(&rho) {
                        continue;
                    }
                    let f = skew_schur_principal(&mu, &rho).value;
                    assert!(f.is_in_q());
                    let (shift, ser) = f.u_series(2 * max + 2);
                    assert!(shift >= 0);
                    let coeff = |e: usize| -> Q {
                        let k = e as i64 - shift;
                        if k < 0 { Q::zero() } else { ser[k as usize].clone() }
                    };
                    let brute = ssyt_series(&mu, &rho, max);
                    for k in 0..=max {
                        assert_eq!(coeff(2 * k), Q::from_integer(brute[k].into()), "{mu}/{rho} q^{k}");
                        assert!(coeff(2 * k + 1).is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn cache_is_consistent_under_concurrency() {
    let ps = enumerate_partitions(7);
    let first: Vec<i64> = ps.iter().map(|m| character(&ps[2], m).unwrap()).collect();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let ps = ps.clone();
            std::thread::spawn(move || ps.iter().map(|m| character(&ps[2], m).unwrap()).collect::<Vec<i64>>())
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), first);
    }
}
