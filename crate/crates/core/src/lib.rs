//! Drinfeld doubles on matrix models, affine Dirac structures on Poisson Lie
//! groups, and the pre-symplectic groupoids `𝒢(L) ⇉ G` integrating them.
//!
//! Everything is generic over the scalar field through [`Scalar`]; the
//! aliases below fix the common choices.

pub mod algebra;
pub mod group;
pub mod groupoid;
pub mod error;
pub mod linalg;
pub mod poisson;
pub mod presymp;
pub mod quotient;
pub mod scalar;
pub mod tol;

pub use error::{Error, Result};
pub use scalar::{Coefficient, Field, Scalar};

pub use num_complex::Complex64;

/// Models over real coordinates (complex matrices are still allowed).
pub type Model = group::MatrixGroupModel<f64>;
/// Models over complex coordinates, for holomorphic doubles.
pub type ComplexModel = group::MatrixGroupModel<Complex64>;
pub type Double = algebra::DoubleAlgebra<f64>;
/// Structure constants with exact rational arithmetic.
pub type ExactDouble = algebra::DoubleAlgebra<num_rational::Ratio<i64>>;
pub type Point = groupoid::GroupoidPoint<f64>;
pub type Tangent = groupoid::GroupoidTangent<f64>;
