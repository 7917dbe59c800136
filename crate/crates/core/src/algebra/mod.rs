//! Exact arithmetic: rationals, Q(√d), sparse polynomials, linear algebra
//! and truncated power series.

mod linalg;
mod polynomial;
mod quadratic;
mod series;

pub use linalg::MatrixQ;
pub use polynomial::{homogeneous_monomials, LinearForm, Monomial, Polynomial};
pub use quadratic::{exact_sqrt, QuadraticNumber};
pub use series::{series_coefficients, SeriesTable};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;
