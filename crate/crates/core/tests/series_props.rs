use proptest::prelude::*;
use stringdual::exact::{q, Q};
use stringdual::partition::{partitions_up_to, qn, Partition};
use stringdual::series::{Coeff, PSeries};

type S = PSeries<Q>;

fn random_series(cap: usize, coeffs: &[i64]) -> S {
    let keys: Vec<Partition> = partitions_up_to(cap).into_iter().skip(1).collect();
    let mut s = S::zero(1, cap);
    for (k, c) in keys.iter().zip(coeffs) {
        s.insert(vec![k.clone()], Q::new((*c).into(), ((k.size() as i64) + 1).into()));
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exponential_conjugation(coeffs in proptest::collection::vec(-3i64..4, 30)) {
        let f = random_series(6, &coeffs);
        let ef = f.exp().unwrap();
        let lhs = ef.cut_join_linear(0);
        let rhs = ef.mul(&f.cut_join_nonlinear(0).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn log_inverts_exp(coeffs in proptest::collection::vec(-3i64..4, 30)) {
        let f = random_series(6, &coeffs);
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
    }
}

#[test]
fn cut_and_join_preserves_weight() {
    for mu in partitions_up_to(7) {
        let s = S::monomial(1, 7, vec![mu.clone()], q(1));
        for (k, _) in s.cut_join_linear(0).terms() {
            assert_eq!(k[0].size(), mu.size());
        }
    }
}

#[test]
fn cut_and_join_is_self_adjoint() {
    let ps = partitions_up_to(6);
    for a in &ps {
        let ca = S::monomial(1, 6, vec![a.clone()], q(1)).cut_join_linear(0);
        for b in &ps {
            let cb = S::monomial(1, 6, vec![b.clone()], q(1)).cut_join_linear(0);
            // ⟨CJ p_a, p_b⟩ = z_b [p_b](CJ p_a)
            let l = ca.coeff(&[b.clone()]) * qn(b.z());
            let r = cb.coeff(&[a.clone()]) * qn(a.z());
            assert_eq!(l, r, "{a} {b}");
        }
    }
}

#[test]
fn multinomial_coefficient_of_exp() {
    let f = S::p(1, 3, 0, 1).add(&S::p(1, 3, 0, 2)).unwrap();
    let g = f.exp().unwrap();
    assert_eq!(g.coeff(&[Partition::new(vec![2, 1])]), q(1));
    assert!(Coeff::is_zero(&g.coeff(&[Partition::new(vec![3])])));
}

#[test]
fn three_family_operator_acts_per_family() {
    let mut key = vec![Partition::empty(); 3];
    key[1] = Partition::single(2);
    let s = S::monomial(3, 4, key, q(1));
    assert!(s.cut_join_linear(0).is_zero());
    let mut want = vec![Partition::empty(); 3];
    want[1] = Partition::new(vec![1, 1]);
    assert_eq!(s.cut_join_linear(1), S::monomial(3, 4, want, q(1)));
}
