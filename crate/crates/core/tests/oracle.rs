use frobrec_core::verify::oracle_solve;
use frobrec_core::{reconstruct, OrbifoldData};

fn agree(a: (i64, i64, i64), m: u32) {
    let orb = OrbifoldData::new(a.0, a.1, a.2).unwrap();
    let r = reconstruct(&orb, m, None).unwrap();
    let o = oracle_solve(&orb, m, None).unwrap();
    assert!(o.potential.is_complete());
    assert_eq!(r.potential.coefficients(), o.potential.coefficients(), "{orb}");
    assert!(o.groups.iter().all(|g| g.equations > 0 || g.unknowns == 0));
}

#[test]
fn oracle_agrees_on_small_orbifolds() {
    for a in [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)] {
        let m = OrbifoldData::new(a.0, a.1, a.2).unwrap().natural_max_m().unwrap().min(3);
        agree(a, m);
    }
}

#[test]
fn oracle_agrees_beyond_the_small_suite() {
    agree((1, 2, 3), 3);
    agree((2, 2, 3), 2);
}
