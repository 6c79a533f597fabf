use stringdual::chern_simons::*;
use stringdual::exact::qfun_to_lambda;
use stringdual::partition::partitions_up_to;

#[test]
fn hopf_link_is_symmetric() {
    let ps = partitions_up_to(5);
    for (i, a) in ps.iter().enumerate() {
        for b in &ps[i..] {
            assert_eq!(w_pair(a, b).unwrap(), w_pair(b, a).unwrap(), "{a} | {b}");
        }
    }
}

#[test]
fn unknot_pole_order_is_size() {
    for mu in partitions_up_to(6) {
        let s = qfun_to_lambda(&w_one(&mu), 2).unwrap();
        assert_eq!(s.valuation(), Some(-(mu.size() as i32)), "{mu}");
    }
}

#[test]
fn unknot_expansion_is_real() {
    for mu in partitions_up_to(4) {
        let s = qfun_to_lambda(&w_one(&mu), 6).unwrap();
        assert!(s.terms().all(|(_, c)| c.is_real()), "{mu}");
    }
}

#[test]
fn bridge_holds_up_to_four_boxes() {
    let b = calibrate_bridge().unwrap();
    assert!(check_bridge(&b, 4).unwrap());
}
