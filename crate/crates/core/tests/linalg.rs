mod common;

use common::{q, rational_rank};
use grt_core::linalg::modular::{kernel_mod, rank_mod};
use grt_core::linalg::{kernel_basis_int, quotient_invariants, rank_int, saturation, smith_normal_form};
use grt_core::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<BigInt>>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        (Just(c), prop::collection::vec(prop::collection::vec((-6i64..=6).prop_map(BigInt::from), c), r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_factorization((c, rows) in matrix()) {
        let m = IntMatrix::from_rows(c, &rows);
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
        prop_assert_eq!(s.rank(), rank_int(&rows, c));
    }

    #[test]
    fn rank_matches_gaussian_elimination((c, rows) in matrix()) {
        let rational: Vec<_> = rows.iter().map(|r| r.iter().map(|x| q(i64::try_from(x).unwrap(), 1)).collect()).collect();
        prop_assert_eq!(rank_int(&rows, c), rational_rank(rational));
    }

    #[test]
    fn kernel_is_annihilated((c, rows) in matrix()) {
        let m = IntMatrix::from_rows(c, &rows);
        let k = kernel_basis_int(&rows, c);
        prop_assert_eq!(k.len() + rank_int(&rows, c), c);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn saturation_is_torsion_free_with_same_rank((c, rows) in matrix()) {
        let sat = saturation(&rows, c);
        prop_assert!(quotient_invariants(&sat, c).torsion.is_empty());
        prop_assert_eq!(sat.len(), rank_int(&rows, c));
        for r in &rows {
            let mut extended = sat.clone();
            extended.push(r.clone());
            prop_assert_eq!(rank_int(&extended, c), sat.len());
        }
    }

    #[test]
    fn modular_rank_bounded((c, rows) in matrix()) {
        let r = rank_int(&rows, c);
        for p in [2u64, 3, 10007] {
            let rp = rank_mod(&rows, c, p).unwrap();
            prop_assert!(rp <= r);
            prop_assert_eq!(kernel_mod(&rows, c, p).unwrap().len(), c - rp);
        }
        prop_assert_eq!(rank_mod(&rows, c, 1_000_000_007).unwrap(), r);
    }
}

#[test]
fn quotient_of_diagonal() {
    let rows = vec![
        vec![BigInt::from(2), BigInt::zero(), BigInt::zero()],
        vec![BigInt::zero(), BigInt::from(6), BigInt::zero()],
    ];
    let q = quotient_invariants(&rows, 3);
    assert_eq!(q.free_rank, 1);
    assert_eq!(q.torsion, vec![BigInt::from(2), BigInt::from(6)]);
    assert!(rank_mod(&rows, 3, 4).is_err());
}
