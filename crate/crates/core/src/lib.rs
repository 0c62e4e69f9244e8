//! Exact computations in graded Lie algebras: free Lie algebras in the
//! Lyndon basis, derivations of the free Lie algebra on two generators,
//! Ihara's stable derivation algebra, dimension tables for weighted
//! completions of Galois groups, and truncated Malcev completions.

pub mod derivation;
pub mod error;
pub mod ihara;
pub mod lie;
pub mod linalg;
pub mod malcev;
pub mod motivic;

pub use error::{Error, Result};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

pub use derivation::Derivation;
pub use ihara::IharaElement;
pub use malcev::{FilteredGroupSpec, NilpotentElement};
pub use motivic::NumberFieldProfile;

pub use lie::{AssocPoly, GradedAlphabet, LieElement, LyndonWord};
pub use linalg::{IntMatrix, RatMatrix, SnfResult};
