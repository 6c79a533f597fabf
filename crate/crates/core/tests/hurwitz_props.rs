use num_traits::Signed;
use stringdual::exact::{q, qf, Q};
use stringdual::hurwitz::*;
use stringdual::partition::{enumerate_partitions, Partition};

#[test]
fn burnside_equals_cut_and_join() {
    let t = HurwitzTable::build(6, 2).unwrap();
    assert!(t.consistent());
    assert_eq!(t.entries.len(), 2 * 3 + 3 * (1 + 2 + 3 + 5 + 7 + 11) - 6);
    for ((g, mu), m) in &t.entries {
        for v in m.values() {
            assert!(!v.is_negative(), "H_{g},{mu} = {v}");
        }
    }
}

#[test]
fn known_small_values() {
    let p = |v: &[usize]| Partition::new(v.to_vec());
    // H_{0,(1,1)}: one transposition pair covering two sheets, weight 1/2
    assert_eq!(hurwitz_number(0, &p(&[1, 1]), Method::CutJoin).unwrap(), qf(1, 2));
    assert_eq!(hurwitz_number(0, &p(&[3]), Method::Burnside).unwrap(), q(1));
}

#[test]
fn genus_zero_closed_form() {
    for n in 3..=7 {
        for mu in enumerate_partitions(n) {
            if mu.len() != 3 && mu.len() != 4 {
                continue;
            }
            let v = elsv_i(0, &mu).unwrap();
            let want = Q::from_integer((n as i64).pow(mu.len() as u32 - 3).into());
            assert_eq!(v.bare, want, "{mu}");
        }
    }
}

#[test]
fn double_hurwitz_degree_zero_is_orthogonality() {
    for n in 1..=4 {
        for a in enumerate_partitions(n) {
            for b in enumerate_partitions(n) {
                let s = double_hurwitz(&a, &b, 3).unwrap();
                let want = if a == b { Q::from_integer(1.into()) / q(a.z() as i64) } else { q(0) };
                assert_eq!(s.coeff(0).coeff(0).re, want);
            }
        }
    }
}
