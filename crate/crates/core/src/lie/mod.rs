//! Free Lie algebras over graded alphabets in the Lyndon basis.
//!
//! Elements are stored as rational combinations of standard bracketings
//! σ(w) of Lyndon words. Brackets are rewritten in the basis directly; the
//! tensor-algebra expansion in [`assoc`] is an independent route used to
//! cross-check them.

pub mod alphabet;
pub mod assoc;
pub mod element;
pub mod parse;
pub mod witt;
pub mod word;

pub use alphabet::{GradedAlphabet, Letter};
pub use assoc::{expand_assoc, expand_word, project_lyndon, AssocPoly};
pub use element::{bracket_words, weight_of_degree, LieElement};
pub use parse::{parse_lie, parse_rational};
pub use witt::{enumerated_dims, mobius, pbw_dims, weighted_witt_dims, witt_dim};
pub use word::{is_lyndon, lyndon_basis, lyndon_words, LyndonBasis, LyndonWord};

/// Standard factorization `w = uv` of a Lyndon word of length at least 2.
pub fn standard_factorization(w: &LyndonWord) -> crate::Result<(LyndonWord, LyndonWord)> {
    w.standard_factorization()
}
