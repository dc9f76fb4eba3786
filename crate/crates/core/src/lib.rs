//! Combinatorial knot Floer toolkit.
//!
//! Planar diagrams and their Kauffman states, the Alexander polynomial by
//! state sum and by skein recursion, bigraded knot Floer groups for
//! alternating and L-space knots, chain complexes over `Z[U]`, and
//! correction-term obstructions for definite intersection forms.
//!
//! Algebra is generic over scalar rings through `num-traits`; the aliases
//! below fix the concrete types used throughout.

pub mod complex;
pub mod conway;
pub mod diagram;
pub mod hfk;
pub mod kauffman;
pub mod linalg;
pub mod obstruction;
pub mod poly;
pub mod scalar;
pub mod seifert;

pub use scalar::F2;

/// Integer Laurent polynomial, used for Alexander polynomials.
pub type Polynomial = poly::LaurentPoly<i64>;
/// Exact rational numbers for correction terms.
pub type Rational = num_rational::Ratio<i64>;
pub type BigRational = num_rational::Ratio<num_bigint::BigInt>;
pub type IntMatrix = linalg::Matrix<i64>;
pub type RationalMatrix = linalg::Matrix<Rational>;
