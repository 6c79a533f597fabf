use stringdual::exact::{q, qf};
use stringdual::marino_vafa::*;
use stringdual::partition::Partition;

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec())
}

#[test]
fn pde_one_family() {
    let s = mv_r(4, 8, 1).unwrap();
    let r = mv_pde_residual(&s).unwrap();
    assert!(r.vanishes(), "{r:?}");
    assert!(r.verified_through >= 7, "{}", r.verified_through);
}

#[test]
fn pde_two_family_and_symmetry() {
    let s = mv_r(4, 5, 2).unwrap();
    let r = mv_pde_residual(&s).unwrap();
    assert!(r.vanishes(), "{r:?}");
    assert!(r.verified_through >= 4, "{}", r.verified_through);
    let sym = swap_symmetry_check(&s);
    assert!(sym.passed, "{sym:?}");
    let one = mv_r(4, 5, 1).unwrap();
    let sl = slice_check(&s, &one);
    assert!(sl.passed, "{sl:?}");
}

#[test]
fn initial_value() {
    let r = mv_initial_value_check(4, 10).unwrap();
    assert!(r.passed, "{r:?}");
}

#[test]
fn hodge_low_genus() {
    assert_eq!(mv_hodge_extract(0, &p(&[1, 1, 1])).unwrap(), vec![q(1)]);
    assert_eq!(mv_hodge_extract(0, &p(&[1])).unwrap(), vec![q(1)]);
    assert_eq!(mv_hodge_extract(0, &p(&[2, 1])).unwrap(), vec![qf(1, 3)]);
}

#[test]
fn lambda_g() {
    let r = lambda_g_check(2, 4).unwrap();
    assert!(r.passed, "{r:?}");
}

#[test]
fn elsv_limit() {
    let r = mv_to_elsv_limit(4, 7).unwrap();
    assert!(r.passed, "{r:?}");
}

#[test]
fn convolution() {
    let r = convolution_check(3, 5).unwrap();
    assert!(r.passed, "{r:?}");
}
