mod common;

use common::random_homogeneous;
use grt_core::lie::{
    expand_assoc, lyndon_basis, lyndon_words, mobius, parse_lie, project_lyndon, weighted_witt_dims, witt_dim,
    GradedAlphabet, LieElement,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn elements(seed: u64, degrees: [u32; 3], alphabet: &GradedAlphabet) -> [LieElement; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    degrees.map(|d| random_homogeneous(&mut rng, alphabet, d, 4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_and_antisymmetry(seed: u64, da in 1u32..4, db in 1u32..4, dc in 1u32..3, three: bool) {
        let a = if three { GradedAlphabet::uniform(3).unwrap() } else { GradedAlphabet::xy() };
        let [p, q, r] = elements(seed, [da, db, dc], &a);
        prop_assert_eq!(p.bracket(&q).unwrap(), -&q.bracket(&p).unwrap());
        let j = p.bracket(&q.bracket(&r).unwrap()).unwrap()
            .checked_add(&q.bracket(&r.bracket(&p).unwrap()).unwrap()).unwrap()
            .checked_add(&r.bracket(&p.bracket(&q).unwrap()).unwrap()).unwrap();
        prop_assert!(j.is_zero());
    }

    #[test]
    fn bracket_matches_tensor_commutator(seed: u64, da in 1u32..5, db in 1u32..5) {
        let a = GradedAlphabet::xy();
        let [p, q, _] = elements(seed, [da, db, 1], &a);
        let pq = p.bracket(&q).unwrap();
        prop_assert_eq!(expand_assoc(&pq), expand_assoc(&p).commutator(&expand_assoc(&q)));
        prop_assert_eq!(project_lyndon(&expand_assoc(&pq)).unwrap(), pq);
    }

    #[test]
    fn canonical_string_round_trips(seed: u64, da in 1u32..6, db in 1u32..6) {
        let a = GradedAlphabet::weighted(&[1, 2]).unwrap();
        let [p, q, _] = elements(seed, [da, db, 1], &a);
        let e = p.checked_add(&q).unwrap();
        prop_assert_eq!(parse_lie(&e.to_canonical_string(), &a).unwrap(), e);
    }
}

#[test]
fn witt_matches_enumeration() {
    for k in 1..=4u64 {
        let a = GradedAlphabet::uniform(k as usize).unwrap();
        for n in 1..=(14 / k as u32).min(9) {
            assert_eq!(witt_dim(k, n).unwrap(), lyndon_words(&a, n).len() as u128, "k={k} n={n}");
        }
    }
}

#[test]
fn necklace_formula_by_hand() {
    // (1/n) Σ_{d|n} μ(d) k^{n/d}
    for n in 1..=20u32 {
        let total: i128 =
            (1..=n).filter(|d| n % d == 0).map(|d| i128::from(mobius(u64::from(d))) * 3i128.pow(n / d)).sum();
        assert_eq!(witt_dim(3, n).unwrap() as i128, total / i128::from(n));
    }
}

#[test]
fn weighted_dims_against_enumeration() {
    let a = GradedAlphabet::weighted(&[1, 2, 3]).unwrap();
    let dims = weighted_witt_dims(&[1, 2, 3], 8).unwrap();
    for n in 1..=8 {
        assert_eq!(dims[&n], lyndon_basis(&a, n).len() as u128);
    }
}

#[test]
fn parse_errors_carry_positions() {
    let a = GradedAlphabet::xy();
    for (text, pos) in [("[x,", 3), ("x + ", 4), ("[x,z]", 3)] {
        match parse_lie(text, &a) {
            Err(grt_core::Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
            Err(grt_core::Error::UnknownGenerator(_)) => assert_eq!(text, "[x,z]"),
            other => panic!("{text}: {other:?}"),
        }
    }
}
