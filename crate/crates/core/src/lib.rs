//! Exact computations on Coxeter groups: positive-definiteness certificates
//! for length- and colour-dependent functions, growth and chromatic series,
//! and exhaustive checks of pairpartition identities.
//!
//! Polynomials, rational functions, matrices and the LDLᵀ factorisation are
//! generic over [`Scalar`]; the aliases below fix the scalar used by the
//! certificates.

pub mod coxeter;
pub mod dihedral;
pub mod error;
pub mod field;
pub mod interval;
pub mod khinchin;
pub mod ldlt;
pub mod matrix;
pub mod pairpart;
pub mod pd;
pub mod poly;
pub mod rademacher;
pub mod ratfunc;
pub mod reproduce;
pub mod rational;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use field::FieldElement;
pub use rational::Rational;
pub use scalar::{Scalar, Sign};

/// Polynomial with rational coefficients.
pub type Poly = poly::Polynomial<Rational>;
/// Rational function with rational coefficients.
pub type RatFunc = ratfunc::RationalFunction<Rational>;
/// Rational matrix.
pub type RatMatrix = matrix::Matrix<Rational>;
/// Matrix over ℚ(√2, √3, √5).
pub type FieldMatrix = matrix::Matrix<FieldElement>;
/// Floating-point matrix over the same generic code paths.
pub type FloatMatrix = matrix::Matrix<f64>;
