mod common;

use std::collections::HashSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subcode::grassmann::{dual, subspace_distance};
use subcode::{gaussian_binomial, FieldSpec, Grassmannian, Subspace};

const POINTS: [(u32, usize); 3] = [(2, 6), (2, 7), (3, 4)];

fn any_subspace(rng: &mut ChaCha8Rng, field: FieldSpec, v: usize) -> Subspace {
    let k = rng.gen_range(0..=v);
    common::random_subspace(rng, field, v, k)
}

#[test]
fn metric_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (q, v) in POINTS {
        let field = FieldSpec::new(q).unwrap();
        for i in 0..1000 {
            let (a, b, c) = (any_subspace(&mut rng, field, v), any_subspace(&mut rng, field, v), any_subspace(&mut rng, field, v));
            let ab = subspace_distance(&a, &b).unwrap();
            assert_eq!(ab, subspace_distance(&b, &a).unwrap());
            assert_eq!(ab == 0, a == b);
            assert_eq!(subspace_distance(&a, &a).unwrap(), 0);
            let bc = subspace_distance(&b, &c).unwrap();
            let ac = subspace_distance(&a, &c).unwrap();
            assert!(ac <= ab + bc, "triangle fails for q={q}, v={v}");
            if i % 10 == 0 {
                assert_eq!(ab, common::scan_distance(&a, &b));
            }
        }
    }
}

#[test]
fn duality_is_an_isometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (q, v) in POINTS {
        let field = FieldSpec::new(q).unwrap();
        for _ in 0..1000 {
            let (a, b) = (any_subspace(&mut rng, field, v), any_subspace(&mut rng, field, v));
            let (da, db) = (dual(&a), dual(&b));
            assert_eq!(da.dim(), v - a.dim());
            assert_eq!(subspace_distance(&a, &b).unwrap(), subspace_distance(&da, &db).unwrap());
            assert_eq!(dual(&da), a);
        }
    }
}

#[test]
fn enumeration_is_complete_and_injective() {
    for q in [2u32, 3] {
        let field = FieldSpec::new(q).unwrap();
        for v in 1..=6usize {
            for k in 0..=v {
                let g = Grassmannian::new(field, v, k).unwrap();
                let all = g.materialize().unwrap();
                assert_eq!(BigUint::from(all.len()), gaussian_binomial(v as u32, k as u32, q).unwrap());
                let distinct: HashSet<&Subspace> = all.iter().collect();
                assert_eq!(distinct.len(), all.len(), "duplicates in [{v},{k}]_{q}");
                for (i, u) in all.iter().enumerate() {
                    assert_eq!(u.dim(), k);
                    assert_eq!(g.index_of(u).unwrap(), i as u64);
                }
            }
        }
    }
}

/// q-Pascal recursion `[a,b] = [a-1,b-1] + q^b [a-1,b]`.
fn pascal(a: u32, b: u32, q: u32) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for n in 1..=a {
        let mut next = vec![BigUint::from(1u32); n as usize + 1];
        for j in 1..n as usize {
            next[j] = &row[j - 1] + BigUint::from(q).pow(j as u32) * &row[j];
        }
        row = next;
    }
    row[b as usize].clone()
}

#[test]
fn gaussian_binomial_symmetry() {
    for q in [2u32, 3, 5] {
        for a in 0..=12u32 {
            for b in 0..=a {
                let x = gaussian_binomial(a, b, q).unwrap();
                assert_eq!(x, gaussian_binomial(a, a - b, q).unwrap());
                assert_eq!(x, pascal(a, b, q), "[{a},{b}]_{q}");
            }
        }
    }
}

#[test]
fn unrank_inverts_index_on_large_grassmannians() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (q, v, k) in [(2u32, 8usize, 4usize), (2, 10, 5), (3, 6, 3)] {
        let g = Grassmannian::new(FieldSpec::new(q).unwrap(), v, k).unwrap();
        for _ in 0..500 {
            let i = rng.gen_range(0..g.len());
            assert_eq!(g.index_of(&g.unrank(i).unwrap()).unwrap(), i);
        }
    }
}
