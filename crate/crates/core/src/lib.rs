//! Quasi-invariants of the deformed Calogero–Moser configurations
//! `A_n(m)` and `C_{n+1}(m, l)`.
//!
//! Everything is exact: coefficients live in a quadratic field Q(√d) fixed
//! per configuration, and operator coefficients are fractions whose
//! denominators are products of the configuration's linear forms.

pub mod acceptance;
pub mod algebra;
pub mod config;
pub mod diffop;
mod error;
pub mod fraction;
pub mod harmonic;
pub mod operators;
pub mod quasi;

pub use algebra::{
    homogeneous_monomials, series_coefficients, LinearForm, MatrixQ, Monomial, Polynomial, QuadraticNumber, Rational,
    SeriesTable,
};
pub use config::{Configuration, Params, Root, SystemLabel};
pub use diffop::DiffOp;
pub use error::{Error, Result};
pub use fraction::HyperplaneFraction;
