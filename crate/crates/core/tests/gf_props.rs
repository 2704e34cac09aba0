mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subcode::gf::{in_row_space, rank, rref, rref_bytewise};
use subcode::{FieldSpec, MatRows};

fn matrix() -> impl Strategy<Value = (u32, Vec<Vec<u8>>)> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..=8, 1usize..=8).prop_flat_map(|(q, r, c)| {
        (Just(q), prop::collection::vec(prop::collection::vec(0..q as u8, c), r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn rref_is_idempotent((q, rows) in matrix()) {
        let field = FieldSpec::new(q).unwrap();
        let m = MatRows::from_rows(field, rows[0].len(), &rows).unwrap();
        let once = rref(&m);
        prop_assert_eq!(rref(&once.matrix), once);
    }

    #[test]
    fn row_space_is_preserved((q, rows) in matrix()) {
        let field = FieldSpec::new(q).unwrap();
        let m = MatRows::from_rows(field, rows[0].len(), &rows).unwrap();
        let r = rref(&m);
        for row in &rows {
            prop_assert!(in_row_space(&r.matrix, row).unwrap());
        }
        for row in r.matrix.to_rows() {
            prop_assert!(in_row_space(&m, &row).unwrap());
        }
        prop_assert_eq!(r.rank(), common::naive_rank(&rows, q));
    }

    #[test]
    fn pivots_are_unit_columns((q, rows) in matrix()) {
        let field = FieldSpec::new(q).unwrap();
        let m = MatRows::from_rows(field, rows[0].len(), &rows).unwrap();
        let r = rref(&m);
        for (i, &p) in r.pivots.iter().enumerate() {
            for j in 0..r.rank() {
                prop_assert_eq!(r.matrix.get(j, p), u8::from(i == j));
            }
            prop_assert!((0..p).all(|c| r.matrix.get(i, c) == 0));
        }
    }
}

#[test]
fn packed_and_bytewise_agree_on_10000_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let rows = common::random_matrix(&mut rng, 2, r, c);
        let m = MatRows::from_rows(FieldSpec::GF2, c, &rows).unwrap();
        let packed = rref(&m);
        assert_eq!(packed, rref_bytewise(&m), "{rows:?}");
        assert_eq!(rank(&m), common::naive_rank(&rows, 2), "{rows:?}");
    }
}
