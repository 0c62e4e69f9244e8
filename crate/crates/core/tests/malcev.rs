mod common;

use common::{random_element, rng, tensor_bch};
use grt_core::lie::{expand_assoc, GradedAlphabet};
use grt_core::malcev::{bch, bch_series, group_commutator, word_to_group};
use grt_core::NilpotentElement;

#[test]
fn series_matches_tensor_logarithm() {
    for class in 1..=6 {
        assert_eq!(expand_assoc(&bch_series(class).unwrap()), tensor_bch(class), "class {class}");
    }
    assert!(bch_series(11).is_err());
}

#[test]
fn group_laws() {
    let a = GradedAlphabet::uniform(3).unwrap();
    let mut rng = rng();
    for _ in 0..30 {
        let g = NilpotentElement::new(random_element(&mut rng, &a, 3), 3).unwrap();
        let h = NilpotentElement::new(random_element(&mut rng, &a, 3), 3).unwrap();
        assert!(bch(&g, &g.inverse()).unwrap().is_identity());
        assert_eq!(bch(&g, &NilpotentElement::identity(&a, 3).unwrap()).unwrap(), g);
        assert_eq!(g.pow(3), bch(&bch(&g, &g).unwrap(), &g).unwrap());
        let c = group_commutator(&g, &h).unwrap();
        assert_eq!(bch(&c, &bch(&h, &g).unwrap()).unwrap(), bch(&g, &h).unwrap());
    }
}

#[test]
fn words() {
    let a = GradedAlphabet::xy();
    let w = word_to_group("x y x^-1 y^-1", &a, 3).unwrap();
    let x = word_to_group("x", &a, 3).unwrap();
    let y = word_to_group("y", &a, 3).unwrap();
    assert_eq!(w, group_commutator(&x, &y).unwrap());
    assert_eq!(word_to_group("x^3", &a, 3).unwrap(), x.pow(3));
    assert!(word_to_group("", &a, 3).unwrap().is_identity());
    assert!(word_to_group("q", &a, 3).is_err());
    assert!(word_to_group("x^", &a, 3).is_err());
}
