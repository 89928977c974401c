use std::sync::OnceLock;

use num_traits::{One, Zero};
use proptest::prelude::*;

use frobrec_core::verify::{check_homogeneity, from_gw_invariant, to_gw_invariant};
use frobrec_core::wdvv::antisymmetry_check;
use frobrec_core::{
    reconstruct, sweep_residuals, BigRational, CoeffKey, Coordinate, MultiIndex, OrbifoldData, Reconstruction,
    SolveState, Source,
};

fn triple() -> impl Strategy<Value = OrbifoldData> {
    (1i64..=6, 1i64..=6, 1i64..=8).prop_filter_map("sorted", |(a, b, c)| {
        let mut v = [a, b, c];
        v.sort();
        OrbifoldData::new(v[0], v[1], v[2]).ok()
    })
}

fn cached(a: (i64, i64, i64), m: u32) -> &'static Reconstruction {
    static R235: OnceLock<Reconstruction> = OnceLock::new();
    static R224: OnceLock<Reconstruction> = OnceLock::new();
    static R333: OnceLock<Reconstruction> = OnceLock::new();
    let cell = match a {
        (2, 3, 5) => &R235,
        (2, 2, 4) => &R224,
        _ => &R333,
    };
    cell.get_or_init(|| reconstruct(&OrbifoldData::new(a.0, a.1, a.2).unwrap(), m, None).unwrap())
}

fn r235() -> &'static Reconstruction {
    cached((2, 3, 5), 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_is_symmetric_and_inverted(orb in triple()) {
        let cs = orb.coordinates();
        for &x in &cs {
            for &y in &cs {
                prop_assert_eq!(orb.metric(x, y), orb.metric(y, x));
                let s: BigRational = cs.iter().map(|&z| orb.metric(x, z) * orb.metric_inverse(z, y)).sum();
                let expected = if x == y { BigRational::one() } else { BigRational::zero() };
                prop_assert_eq!(s, expected);
            }
        }
    }

    #[test]
    fn multi_index_arithmetic(
        xs in proptest::collection::vec((1u8..=3, 1u32..=4, 0u32..=3), 0..6),
        ys in proptest::collection::vec((1u8..=3, 1u32..=4, 0u32..=3), 0..6),
    ) {
        let orb = OrbifoldData::new(5, 5, 5).unwrap();
        let a = MultiIndex::from_pairs(xs.into_iter().map(|(l, j, e)| (Coordinate::twisted(l, j), e)));
        let b = MultiIndex::from_pairs(ys.into_iter().map(|(l, j, e)| (Coordinate::twisted(l, j), e)));
        let s = a.plus(&b);
        prop_assert_eq!(s.checked_minus(&b), Some(a.clone()));
        prop_assert_eq!(s.length(), a.length() + b.length());
        prop_assert_eq!(s.weight(&orb), a.weight(&orb) + b.weight(&orb));
        prop_assert!(s.contains(&a));
    }

    #[test]
    fn third_derivatives_are_symmetric(pick in 0usize..10_000, d in proptest::collection::vec(0usize..8, 3)) {
        let p = &r235().potential;
        let coeffs = p.coefficients();
        let (k, _) = coeffs[pick % coeffs.len()];
        let mut opts: Vec<Coordinate> = k.alpha.entries().iter().map(|(c, _)| *c).collect();
        if k.m > 0 {
            opts.push(Coordinate::Divisor);
        }
        let dirs: Vec<Coordinate> = d.iter().map(|i| opts[i % opts.len()]).collect();
        let twisted = MultiIndex::from_coords(dirs.iter().copied().filter(|c| c.is_twisted()));
        prop_assume!(k.alpha.contains(&twisted));
        let beta = k.alpha.checked_minus(&twisted).unwrap();
        let base = p.third_derivative_coefficient(dirs[0], dirs[1], dirs[2], &beta, k.m).unwrap();
        prop_assert!(!base.constant.is_zero());
        for perm in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let f = p.third_derivative_coefficient(dirs[perm[0]], dirs[perm[1]], dirs[perm[2]], &beta, k.m).unwrap();
            prop_assert_eq!(&f, &base);
        }
    }

    #[test]
    fn swapping_middle_entries_negates(q in proptest::collection::vec(0usize..64, 4), pick in 0usize..10_000) {
        let p = &r235().potential;
        let orb = p.orbifold();
        let cs = orb.coordinates();
        let quad = [cs[q[0] % cs.len()], cs[q[1] % cs.len()], cs[q[2] % cs.len()], cs[q[3] % cs.len()]];
        let targets = frobrec_core::wdvv::targets(orb, &quad, 2);
        prop_assume!(!targets.is_empty());
        let (beta, n) = &targets[pick % targets.len()];
        prop_assert!(antisymmetry_check(p, quad, beta, *n));
    }

    #[test]
    fn gw_conversion_round_trips(pick in 0usize..10_000) {
        let coeffs = r235().potential.coefficients();
        let (k, v) = coeffs[pick % coeffs.len()];
        prop_assert_eq!(&from_gw_invariant(k, &to_gw_invariant(k, v)), v);
    }

    #[test]
    fn resolved_keys_are_recovered_after_forgetting(pick in 0usize..10_000) {
        let r = r235();
        let wdvv: Vec<_> = r.log.iter().filter(|e| matches!(e.source, Source::Wdvv(_))).collect();
        let entry = wdvv[pick % wdvv.len()];
        let mut p = r.potential.clone();
        p.forget(&entry.key);
        let mut state = SolveState::new(p);
        prop_assert_eq!(state.resolve_key(&entry.key).unwrap(), entry.value.clone());
    }

    #[test]
    fn perturbations_are_detected(pick in 0usize..10_000, bump in 1i64..5) {
        let r = cached((2, 2, 4), 2);
        let solved: Vec<&CoeffKey> = r.log.iter().map(|e| &e.key).collect();
        let k = solved[pick % solved.len()];
        let mut p = r.potential.clone();
        let v = p.value(k).unwrap() + BigRational::from_integer(bump.into());
        p.set_known(k.clone(), v).unwrap();
        prop_assert!(!sweep_residuals(&p, 2).unwrap().is_clean());
    }
}

#[test]
fn every_stored_key_is_homogeneous() {
    for r in [r235(), cached((3, 3, 3), 3)] {
        assert!(check_homogeneity(&r.potential));
        for (k, _) in r.potential.coefficients() {
            assert!(r.potential.is_admissible(k));
        }
    }
}

#[test]
fn log_follows_the_level_order() {
    for r in [r235(), cached((3, 3, 3), 3)] {
        let levels: Vec<(u32, u32)> = r.log.iter().map(|e| e.key.level()).collect();
        assert!(levels.windows(2).all(|w| w[0] <= w[1]));
        for e in &r.log {
            if let Source::Symmetry(from) = &e.source {
                assert_eq!(from.level(), e.key.level());
                assert_eq!(r.potential.value(from).as_ref(), Some(&e.value));
            }
        }
    }
}

#[test]
fn reconstruction_is_deterministic() {
    let orb = OrbifoldData::new(2, 3, 7).unwrap();
    let a = reconstruct(&orb, 2, None).unwrap();
    let b = reconstruct(&orb, 2, None).unwrap();
    assert_eq!(a.potential.coefficients(), b.potential.coefficients());
    assert_eq!(a.log, b.log);
}

#[test]
fn symmetric_legs_give_symmetric_potentials() {
    for (a, m) in [((2, 2, 2), 4), ((2, 2, 5), 3), ((3, 3, 3), 3), ((1, 2, 2), 3)] {
        let orb = OrbifoldData::new(a.0, a.1, a.2).unwrap();
        let r = reconstruct(&orb, m, None).unwrap();
        assert!(frobrec_core::verify::check_symmetry(&r.potential), "{orb}");
        for perm in orb.leg_symmetries() {
            for k in r.potential.all_keys() {
                assert_eq!(r.potential.value(&k), r.potential.value(&k.permute_legs(&perm)));
            }
        }
    }
}

#[test]
fn length_bound_truncates_consistently() {
    let orb = OrbifoldData::new(2, 3, 5).unwrap();
    let full = &r235().potential;
    let short = reconstruct(&orb, 2, Some(5)).unwrap().potential;
    for (k, v) in short.coefficients() {
        assert!(k.length() <= 5);
        assert_eq!(full.value(k).as_ref(), Some(v));
    }
    let report = sweep_residuals(&short, 2).unwrap();
    assert!(report.failures.is_empty());
    assert!(report.skipped > 0);
}
