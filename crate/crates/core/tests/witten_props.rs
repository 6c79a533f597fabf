use stringdual::exact::{q, qf};
use stringdual::hurwitz::psi_from_asymptotics;
use stringdual::witten::{dvv, virasoro_residual};

fn compositions(total: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, n - 1) {
            if rest.first().is_some_and(|&r| r > first) {
                continue;
            }
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn virasoro_constraints_vanish() {
    for n in -1..=3 {
        let r = virasoro_residual(n, 4).unwrap();
        assert_eq!(r.nonzero, 0, "L_{n}: {r:?}");
        assert!(r.checked > 100);
    }
}

#[test]
fn l2_degree3() {
    assert_eq!(virasoro_residual(2, 3).unwrap().max_abs, q(0));
}

#[test]
fn dimension_selection() {
    for g in 0..4 {
        for n in 1..5 {
            for total in 0..12 {
                for ks in compositions(total, n) {
                    if total + 3 != 3 * g + n {
                        assert_eq!(dvv(g, &ks).unwrap(), q(0));
                    }
                }
            }
        }
    }
}

#[test]
fn agrees_with_hurwitz_asymptotics() {
    let mut count = 0;
    for g in 0..=3usize {
        for n in 1..=6usize {
            let chi = 2 * g as i64 - 2 + n as i64;
            if chi <= 0 || chi > 4 {
                continue;
            }
            for ks in compositions(3 * g + n - 3, n) {
                let a = dvv(g, &ks).unwrap();
                let b = psi_from_asymptotics(g, &ks).unwrap();
                assert_eq!(a, b, "g={g} ks={ks:?}");
                count += 1;
            }
        }
    }
    assert!(count > 20);
    assert_eq!(dvv(1, &[1]).unwrap(), qf(1, 24));
}
