mod common;

use common::{special_oracle, stuffle_oracle};
use grt_core::derivation::{is_inner, outder_dim};
use grt_core::ihara::{
    freeness_table, ihara_bracket, in_stable_algebra, is_special, leading_word, soule_generator, special_basis,
    special_condition_dim,
};
use num_traits::Signed;

#[test]
fn basis_passes_independent_checks() {
    for n in 8..=10 {
        for b in special_basis(n).unwrap().iter() {
            assert!(special_oracle(b.f(), n), "degree {n}");
            assert!(stuffle_oracle(b.f(), n), "degree {n}");
            assert!(!is_inner(&b.derivation()).unwrap());
        }
    }
}

#[test]
fn special_only_dimensions() {
    let dims: Vec<usize> = (2..=9).map(|n| special_condition_dim(n).unwrap()).collect();
    assert_eq!(dims, vec![0, 1, 0, 3, 0, 6, 4, 13]);
    for n in 2..=8 {
        assert!(special_basis(n).unwrap().len() <= dims[n as usize - 2]);
        assert!(special_basis(n).unwrap().len() <= outder_dim(n).unwrap());
    }
}

#[test]
fn freeness_through_twelve() {
    let rows = freeness_table(12).unwrap();
    assert!(rows.iter().all(|r| r.matches));
    let dims: Vec<usize> = rows.iter().map(|r| r.dim_d).collect();
    assert_eq!(dims, vec![0, 1, 0, 1, 0, 1, 1, 1, 1, 2, 2]);
}

#[test]
fn generator_normalization() {
    let leading: Vec<String> = [3, 5, 7, 9]
        .iter()
        .map(|&m| soule_generator(m).unwrap().f().coefficient(&leading_word(m)).to_string())
        .collect();
    assert_eq!(leading, ["1", "2", "16", "144"]);
    let f3 = soule_generator(3).unwrap();
    assert!(f3.f().terms().values().all(|c| c.is_integer()));
    assert!(f3.f().coefficient(&leading_word(3)).is_positive());
}

#[test]
fn brackets_stay_in_the_algebra() {
    let f3 = soule_generator(3).unwrap();
    let f5 = soule_generator(5).unwrap();
    let h = ihara_bracket(&f3, &f5).unwrap();
    assert!(is_special(h.f(), 8).unwrap());
    assert!(in_stable_algebra(h.f(), 8).unwrap());
    assert!(special_oracle(h.f(), 8));
    assert!(stuffle_oracle(h.f(), 8));
    assert!(ihara_bracket(&f3, &f3).unwrap().is_zero());
}
