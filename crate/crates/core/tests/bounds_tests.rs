use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use subcode::bounds::{
    degree_bound, double_count_bound, johnson_bound, johnson_cascade_check, one_incidence_bound, pair_threshold,
    partial_spread_size, point_hyperplane_threshold, resolve_upper, BoundMethod, BoundsDb, DbKey,
};
use subcode::constructions::lifted_mrd_plus_one;

fn big(x: u128) -> BigUint {
    BigUint::from(x)
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Gaussian binomial by the product formula over u128.
fn gauss(a: u32, b: u32, q: u128) -> u128 {
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..b {
        num *= q.pow(a - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

#[test]
fn johnson_and_refined_bounds_for_binary_solids_in_8_space() {
    let empty = BoundsDb::new();
    let spread7 = (2u128.pow(7) - 2) / (2u128.pow(3) - 1) - 1;
    assert_eq!(spread7, 17);
    let j = johnson_bound(2, 8, 6, 4, &empty).unwrap();
    assert_eq!(j.value, big((2u128.pow(8) - 1) * spread7 / (2u128.pow(4) - 1)));
    assert_eq!(j.value, big(289));
    assert!(j.unconditioned);
    assert_eq!(resolve_upper(2, 8, 6, 4, &empty).unwrap().value, big(289));

    let db = BoundsDb::seeded();
    let r = resolve_upper(2, 8, 6, 4, &db).unwrap();
    assert_eq!((r.value.clone(), r.method), (big(272), BoundMethod::DbLookup));
    assert!(!r.unconditioned);
    let (_, rec) = r.known.unwrap();
    assert_eq!((rec.lower, rec.upper), (Some(big(257)), Some(big(272))));
}

#[test]
fn one_incidence_and_double_counting_agree_on_272() {
    let per_point = 2u128.pow(4) + 1 - 1;
    assert_eq!(one_incidence_bound(2, 4, 1).unwrap(), big(272));
    assert_eq!(one_incidence_bound(2, 4, 1).unwrap(), big((2u128.pow(4) + 1) * per_point));
    for l in [1u32, 7] {
        let den = if l <= 4 { gauss(4, l, 2) } else { gauss(4, l - 4, 2) };
        let oracle = gauss(8, l, 2) * per_point / den;
        assert_eq!(oracle, 272);
        assert_eq!(double_count_bound(2, 8, 4, l, per_point as u64).unwrap(), big(oracle));
    }
    assert_eq!(point_hyperplane_threshold(2, 4, 1).unwrap(), ratio(272, 1));
}

#[test]
fn pair_threshold_values() {
    let oracle = |b: i64| ratio((2i64.pow(8) - 1) * (b - 1), 2i64.pow(4) + 2i64.pow(4) - 2);
    assert_eq!(pair_threshold(2, 8, 4, 34).unwrap(), ratio(561, 2));
    assert_eq!(pair_threshold(2, 8, 4, 34).unwrap(), oracle(34));
    assert_eq!(pair_threshold(2, 8, 4, 33).unwrap(), ratio(272, 1));
    assert_eq!(pair_threshold(2, 8, 4, 33).unwrap(), oracle(33));
    for b in 1..60 {
        assert_eq!(pair_threshold(2, 8, 4, b as u64).unwrap(), oracle(b));
    }
}

#[test]
fn partial_spread_sizes() {
    assert_eq!(partial_spread_size(2, 9, 4).unwrap(), big(33));
    for (q, v, k) in [(2u32, 7u32, 3u32), (2, 9, 4), (3, 7, 3), (2, 13, 4), (2, 11, 5), (5, 9, 4)] {
        let qq = q as u128;
        let oracle = (qq.pow(v) - qq) / (qq.pow(k) - 1) - qq + 1;
        assert_eq!(partial_spread_size(q, v, k).unwrap(), big(oracle));
    }
    assert!(partial_spread_size(2, 8, 4).is_err());
}

#[test]
fn degree_bounds_for_points_and_hyperplanes() {
    let db = BoundsDb::seeded();
    for l in [1u32, 7] {
        let r = degree_bound(2, 8, 6, 4, l, &db).unwrap();
        assert_eq!(r.value, big(17));
        assert_eq!(r.method, BoundMethod::Degree);
        assert!(r.derivation.last().unwrap().contains(&format!("dim X = {l}")));
    }
}

#[test]
fn cascade_chain_for_272() {
    let r = johnson_cascade_check(2, 4, &big(272)).unwrap();
    assert!(r.chain_holds);
    assert_eq!(r.lower_route, ratio(511 * 255, 15 * 7));
    assert_eq!(r.lower_route_floor, big(1241));
    assert_eq!(r.pivot, ratio(511 * 256, 31));
    assert_eq!(r.floor_case, big(511 * 257 / 31));
    assert_eq!(r.upper_route, big(511 * 272 / 31));
    assert!(johnson_cascade_check(2, 4, &big(256)).is_err());
}

#[test]
fn upper_bounds_are_symmetric_under_orthogonality() {
    for db in [BoundsDb::new(), BoundsDb::seeded()] {
        for q in [2u32, 3] {
            for v in 2..=12u32 {
                for k in 0..=v {
                    for d in (2..=2 * k.min(v - k).max(1)).step_by(2) {
                        let a = resolve_upper(q, v, d, k, &db).unwrap().value;
                        let b = resolve_upper(q, v, d, v - k, &db).unwrap().value;
                        assert_eq!(a, b, "A_{q}({v},{d};{k})");
                    }
                }
            }
        }
    }
}

#[test]
fn table_is_consistent_with_computed_bounds() {
    let db = BoundsDb::seeded();
    for (key, rec) in db.iter() {
        if let (Some(l), Some(u)) = (&rec.lower, &rec.upper) {
            assert!(l <= u, "{key}");
        }
        let (found, _) = db.lookup(&key.orthogonal()).unwrap();
        assert!(found == key || found == &key.orthogonal());
        if key.dims.len() == 1 {
            let r = resolve_upper(key.q, key.v, key.d, key.dims[0], &BoundsDb::new()).unwrap();
            if let Some(l) = &rec.lower {
                assert!(l <= &r.value, "{key}: known lower {l} above computed upper {}", r.value);
            }
        }
    }
    assert!(db.lookup(&DbKey::new(2, 8, 6, [4])).is_some());
}

#[test]
fn upper_bounds_dominate_constructions() {
    let empty = BoundsDb::new();
    for (v, k, d) in [(7usize, 3usize, 6usize), (7, 3, 4), (8, 4, 6), (8, 4, 8), (8, 4, 4), (6, 2, 4)] {
        let n = lifted_mrd_plus_one(v, k, d).unwrap().len();
        let u = resolve_upper(2, v as u32, d as u32, k as u32, &empty).unwrap().value;
        assert!(big(n as u128) <= u, "({v},{k},{d}): {n} > {u}");
    }
}

#[test]
fn domain_errors() {
    let db = BoundsDb::new();
    assert!(resolve_upper(1, 8, 6, 4, &db).is_err());
    assert!(resolve_upper(2, 8, 5, 4, &db).is_err());
    assert!(resolve_upper(2, 4, 4, 5, &db).is_err());
    assert!(one_incidence_bound(2, 4, 18).is_err());
    assert!(pair_threshold(2, 8, 8, 3).is_err());
    assert!(johnson_cascade_check(2, 2, &big(100)).is_err());
}
