mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subcode::bounds::{degree_bound, BoundsDb};
use subcode::codes::{emit_code, orthogonal_code, parse_code, shorten, verify, CodeClaim, SubspaceCode};
use subcode::constructions::{lift, lifted_mrd, lifted_mrd_plus_one, mrd_matrices, plus_one, GabidulinSpec};
use subcode::grassmann::subspace_distance;
use subcode::{FieldSpec, Subspace};

/// Greedy random code with the given dimensions and minimum distance.
fn random_code(rng: &mut ChaCha8Rng, v: usize, dims: &[usize], d: usize, tries: usize) -> SubspaceCode {
    let mut words: Vec<Subspace> = Vec::new();
    for _ in 0..tries {
        let k = dims[rng.gen_range(0..dims.len())];
        let u = common::random_subspace(rng, FieldSpec::GF2, v, k);
        if words.iter().all(|w| subspace_distance(w, &u).unwrap() >= d) {
            words.push(u);
        }
    }
    SubspaceCode::new(FieldSpec::GF2, v, words).unwrap()
}

fn point_off_hyperplane(rng: &mut ChaCha8Rng, v: usize) -> (Subspace, Subspace) {
    loop {
        let p = common::random_subspace(rng, FieldSpec::GF2, v, 1);
        let h = common::random_subspace(rng, FieldSpec::GF2, v, v - 1);
        if !p.is_subspace_of(&h).unwrap() {
            return (p, h);
        }
    }
}

#[test]
fn shorten_sizes_add_up_and_distance_drops_by_at_most_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cases: [(usize, &[usize], usize); 4] = [(6, &[3], 4), (6, &[2, 3], 3), (7, &[3], 4), (7, &[3, 4], 3)];
    for i in 0..200 {
        let (v, dims, d) = cases[i % cases.len()];
        let c = random_code(&mut rng, v, dims, d, 60);
        let actual_d = c.min_distance().unwrap().unwrap_or(d);
        let (p, h) = point_off_hyperplane(&mut rng, v);
        let through_p = c.iter().filter(|u| common::scan_incident(u, &p)).count();
        let inside_h = c.iter().filter(|u| common::scan_incident(u, &h)).count();
        let s = shorten(&c, &p, &h).unwrap();
        assert_eq!(s.ambient(), v - 1);
        assert_eq!(s.len(), through_p + inside_h, "case {i}");
        if let Some(sd) = s.min_distance().unwrap() {
            assert!(sd + 1 >= actual_d, "case {i}: distance {sd} after shortening a code with d = {actual_d}");
        }
    }
}

#[test]
fn orthogonal_code_is_a_distance_preserving_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..50 {
        let v = 5 + i % 3;
        let c = random_code(&mut rng, v, &[1, 2, 3, 4], 2, 30);
        let o = orthogonal_code(&c);
        assert_eq!(orthogonal_code(&o).words(), c.words());
        for a in 0..c.len() {
            assert_eq!(o.words()[a].dim(), v - c.words()[a].dim());
            for b in a + 1..c.len() {
                assert_eq!(
                    subspace_distance(&c.words()[a], &c.words()[b]).unwrap(),
                    subspace_distance(&o.words()[a], &o.words()[b]).unwrap()
                );
            }
        }
    }
}

#[test]
fn incidence_profile_respects_degree_bounds() {
    let db = BoundsDb::seeded();
    let plane_code = lifted_mrd_plus_one(7, 3, 6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut codes = vec![(plane_code, 6usize)];
    for _ in 0..4 {
        codes.push((random_code(&mut rng, 6, &[3], 4, 80), 4));
    }
    for (c, d) in &codes {
        let (v, k) = (c.ambient(), c.words()[0].dim());
        for l in (1..v).filter(|&l| l != k) {
            let profile = c.incidence_profile(l).unwrap();
            let bound = degree_bound(2, v as u32, *d as u32, k as u32, l as u32, &db).unwrap().value;
            assert!(
                num_bigint::BigUint::from(profile.max) <= bound,
                "l = {l}: max incidence {} exceeds {bound}",
                profile.max
            );
            assert_eq!(profile.histogram.values().sum::<u64>() as usize, subcode::Grassmannian::new(FieldSpec::GF2, v, l).unwrap().len() as usize);
        }
    }
}

#[test]
fn construct_emit_parse_verify_roundtrip() {
    for (v, k, n) in [(7usize, 3usize, 17usize), (8, 4, 257)] {
        let c = lifted_mrd_plus_one(v, k, 6).unwrap();
        let text = emit_code(&c).unwrap();
        let back = parse_code(&text).unwrap();
        assert_eq!(emit_code(&back).unwrap(), text);
        let report = verify(&back, Some(&CodeClaim::new(2, v, n, 6, [k]))).unwrap();
        assert!(report.confirmed(), "{:?}", report.mismatches);
    }
}

#[test]
fn small_code_distance_matches_vector_scan() {
    let c = lifted_mrd_plus_one(7, 3, 6).unwrap();
    let mut min = usize::MAX;
    for a in 0..c.len() {
        for b in a + 1..c.len() {
            min = min.min(common::scan_distance(&c.words()[a], &c.words()[b]));
        }
    }
    assert_eq!(c.min_distance().unwrap(), Some(min));
    assert_eq!(min, 6);
}

fn naive_rank_distance(a: &subcode::MatRows, b: &subcode::MatRows) -> usize {
    let diff: Vec<Vec<u8>> = a.to_rows().iter().zip(b.to_rows()).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p ^ q).collect()).collect();
    common::naive_rank(&diff, 2)
}

#[test]
fn lifting_doubles_rank_distance() {
    for (n, kp, v) in [(3usize, 1usize, 7usize), (4, 2, 8)] {
        let spec = GabidulinSpec::new(n, kp).unwrap();
        let ms = mrd_matrices(&spec);
        let code = lift(&ms, v).unwrap();
        assert_eq!(code.len(), spec.size());
        let mut min_rank = usize::MAX;
        for i in 0..ms.len() {
            for j in i + 1..ms.len() {
                let r = naive_rank_distance(&ms[i], &ms[j]);
                min_rank = min_rank.min(r);
                assert_eq!(subspace_distance(&code.words()[i], &code.words()[j]).unwrap(), 2 * r);
            }
        }
        assert_eq!(min_rank, spec.rank_distance());
    }
}

#[test]
fn plus_one_keeps_minimum_distance() {
    for (v, k, d) in [(7usize, 3usize, 6usize), (8, 4, 6), (8, 4, 8), (7, 3, 4), (6, 2, 4)] {
        let c = lifted_mrd(v, k, d).unwrap();
        let before = c.min_distance().unwrap().unwrap();
        let after = plus_one(&c).unwrap().min_distance().unwrap().unwrap();
        assert!(after >= before, "({v},{k},{d}): {before} -> {after}");
    }
}
