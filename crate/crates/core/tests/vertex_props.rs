use num_bigint::BigInt;
use std::collections::BTreeMap;
use stringdual::vertex::*;

#[test]
fn gv_integrality_local_p2() {
    let gw = extract_gw(3, 2, 8).unwrap();
    let gv = gv_invert(&gw).unwrap();
    println!("{gw:?}\n{gv:?}");
    assert!(odd_powers_vanish(3, 8).unwrap());
    assert!(exp_log_roundtrip(&gw).unwrap());
}

#[test]
fn synthetic_roundtrip() {
    let mut n = BTreeMap::new();
    let mut x: i64 = 7;
    for d in 1..=4 {
        for g in 0..=3 {
            x = (x * 37 + 11) % 101 - 50;
            n.insert((g, d), BigInt::from(x));
        }
    }
    let gv = GvTable { d_max: 4, g_max: 3, n };
    let back = gv_invert(&gv_forward(&gv).unwrap()).unwrap();
    assert_eq!(back, gv);
}
