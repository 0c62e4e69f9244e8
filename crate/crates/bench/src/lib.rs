//! Fixtures shared by the benchmarks.

use grt_core::lie::{lyndon_basis, LieElement};
use grt_core::{GradedAlphabet, IntMatrix};
use num_bigint::BigInt;

/// Sum of all Lyndon basis elements of degree `n` over `x, y`.
pub fn basis_sum(n: u32) -> LieElement {
    let a = GradedAlphabet::xy();
    let mut e = LieElement::zero(&a);
    for w in lyndon_basis(&a, n).words.iter() {
        e.add_term(w.clone(), grt_core::Rational::from_integer(BigInt::from(1)));
    }
    e
}

/// Deterministic `n × n` integer matrix with small entries.
pub fn test_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| BigInt::from(((i * 7 + j * 13 + i * j) % 11) as i64 - 5)).collect()).collect();
    IntMatrix::from_rows(n, &rows)
}
