//! Scalar fields.
//!
//! Structure constants only need ring arithmetic, so the algebra layer is
//! generic over [`Coefficient`] (which admits exact rationals). Everything that
//! touches matrices, decompositions or tolerances needs [`Scalar`], which is
//! implemented for `f32`, `f64` and their complex counterparts.

use std::fmt::Debug;
use std::ops::Neg;

use nalgebra::{ComplexField, RealField};
use num_complex::Complex;
use num_rational::Ratio;
use num_traits::Num;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Ground field of a Lie algebra or matrix model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Ring-level coefficient type for structure constants.
pub trait Coefficient:
    nalgebra::Scalar + Copy + Num + Neg<Output = Self> + Send + Sync
{
    const FIELD: Field;

    /// Size of the value as an `f64`, used only for reporting residuals.
    fn magnitude(self) -> f64;
}

/// Numeric scalar: a coefficient that nalgebra can decompose.
pub trait Scalar: Coefficient + ComplexField<RealField = <Self as Scalar>::Real> {
    type Real: RealField + Copy;

    fn lit(x: f64) -> Self;
    fn from_real(r: Self::Real) -> Self;
    fn to_complex(self) -> Complex<Self::Real>;

    /// Number of scalar equations one complex matrix entry contributes when
    /// solving for coordinates over this field (2 for a real field: real and
    /// imaginary part; 1 for a complex field).
    const EQUATIONS_PER_ENTRY: usize;

    /// Appends the equations of one complex matrix entry.
    fn push_equations(z: Complex<Self::Real>, out: &mut Vec<Self>);

    /// `(re, im)` as `f64`, for serialization.
    fn parts(self) -> (f64, f64);
    fn from_parts(re: f64, im: f64) -> Option<Self>;

    /// Uniform sample from the box of half-width `radius`
    /// (in both real and imaginary parts for complex fields).
    fn sample<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Self;
}

/// `f64` view of a real scalar.
pub fn real_to_f64<R: RealField>(r: R) -> f64 {
    nalgebra::try_convert::<R, f64>(r).unwrap_or(f64::NAN)
}

/// Real scalar from an `f64` literal.
pub fn real_from_f64<R: RealField>(x: f64) -> R {
    nalgebra::convert::<f64, R>(x)
}

macro_rules! real_scalar {
    ($t:ty) => {
        impl Coefficient for $t {
            const FIELD: Field = Field::Real;
            fn magnitude(self) -> f64 {
                (self as f64).abs()
            }
        }

        impl Scalar for $t {
            type Real = $t;
            const EQUATIONS_PER_ENTRY: usize = 2;

            fn lit(x: f64) -> Self {
                x as $t
            }
            fn from_real(r: $t) -> Self {
                r
            }
            fn to_complex(self) -> Complex<$t> {
                Complex::new(self, 0.0)
            }
            fn push_equations(z: Complex<$t>, out: &mut Vec<Self>) {
                out.push(z.re);
                out.push(z.im);
            }
            fn parts(self) -> (f64, f64) {
                (self as f64, 0.0)
            }
            fn from_parts(re: f64, im: f64) -> Option<Self> {
                (im == 0.0).then_some(re as $t)
            }
            fn sample<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Self {
                (radius * (2.0 * rng.random::<f64>() - 1.0)) as $t
            }
        }
    };
}

macro_rules! complex_scalar {
    ($t:ty) => {
        impl Coefficient for Complex<$t> {
            const FIELD: Field = Field::Complex;
            fn magnitude(self) -> f64 {
                self.norm() as f64
            }
        }

        impl Scalar for Complex<$t> {
            type Real = $t;
            const EQUATIONS_PER_ENTRY: usize = 1;

            fn lit(x: f64) -> Self {
                Complex::new(x as $t, 0.0)
            }
            fn from_real(r: $t) -> Self {
                Complex::new(r, 0.0)
            }
            fn to_complex(self) -> Complex<$t> {
                self
            }
            fn push_equations(z: Complex<$t>, out: &mut Vec<Self>) {
                out.push(z);
            }
            fn parts(self) -> (f64, f64) {
                (self.re as f64, self.im as f64)
            }
            fn from_parts(re: f64, im: f64) -> Option<Self> {
                Some(Complex::new(re as $t, im as $t))
            }
            fn sample<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Self {
                let re = radius * (2.0 * rng.random::<f64>() - 1.0);
                let im = radius * (2.0 * rng.random::<f64>() - 1.0);
                Complex::new(re as $t, im as $t)
            }
        }
    };
}

real_scalar!(f32);
real_scalar!(f64);
complex_scalar!(f32);
complex_scalar!(f64);

impl Coefficient for Ratio<i64> {
    const FIELD: Field = Field::Real;
    fn magnitude(self) -> f64 {
        (*self.numer() as f64 / *self.denom() as f64).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn real_entries_split_into_two_equations() {
        let mut eqs: Vec<f64> = Vec::new();
        f64::push_equations(Complex::new(1.5, -2.0), &mut eqs);
        assert_eq!(eqs, vec![1.5, -2.0]);
        let mut ceqs: Vec<Complex<f64>> = Vec::new();
        Complex::<f64>::push_equations(Complex::new(1.5, -2.0), &mut ceqs);
        assert_eq!(ceqs, vec![Complex::new(1.5, -2.0)]);
    }

    #[test]
    fn parts_round_trip() {
        let z = Complex::new(0.25f64, -3.0);
        let (re, im) = z.parts();
        assert_eq!(Complex::<f64>::from_parts(re, im), Some(z));
        assert_eq!(f64::from_parts(2.0, 0.0), Some(2.0));
        assert_eq!(f64::from_parts(2.0, 1.0), None);
    }

    #[test]
    fn samples_stay_in_the_box() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            assert!(f64::sample(&mut rng, 0.3).abs() <= 0.3);
            let z = Complex::<f64>::sample(&mut rng, 0.3);
            assert!(z.re.abs() <= 0.3 && z.im.abs() <= 0.3);
        }
    }
}
