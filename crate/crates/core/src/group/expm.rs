//! Matrix exponential by scaling and squaring with a diagonal [6/6] Padé
//! approximant.
//!
//! The matrix is scaled by `2^-s` until its ∞-norm is at most 1/2. For such
//! `A` the [6/6] approximant satisfies `r(A) = exp(A + E)` with
//! `‖E‖ ≤ 3.4e-16 ‖A‖` (Moler and Van Loan's bound
//! `2^{3-(p+q)} p! q! / ((p+q)! (p+q+1)!)` at `p = q = 6`). Squaring does not
//! amplify this relative backward error.

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;

use crate::scalar::{real_from_f64, real_to_f64};

/// Padé coefficients `c_k = (12-k)! 6! / (12! k! (6-k)!)`.
const PADE6: [f64; 7] = [
    1.0,
    0.5,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
];

pub fn norm_inf<R: RealField + Copy>(a: &DMatrix<Complex<R>>) -> f64 {
    a.row_iter()
        .map(|row| row.iter().map(|z| real_to_f64(nalgebra::ComplexField::modulus(*z))).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Number of halvings applied before the Padé step.
pub fn squarings<R: RealField + Copy>(a: &DMatrix<Complex<R>>) -> u32 {
    let norm = norm_inf(a);
    if norm <= 0.5 {
        0
    } else {
        (norm / 0.5).log2().ceil() as u32
    }
}

pub fn expm<R: RealField + Copy>(a: &DMatrix<Complex<R>>) -> DMatrix<Complex<R>> {
    assert!(a.is_square(), "expm needs a square matrix");
    let n = a.nrows();
    let s = squarings(a);
    let scale: R = real_from_f64(0.5f64.powi(s as i32));
    let a = a.map(|z| z.scale(scale));

    let id = DMatrix::<Complex<R>>::identity(n, n);
    let c = |k: usize| Complex::new(real_from_f64::<R>(PADE6[k]), R::zero());
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    // Even part V and odd part U so that N = V + U, D = V - U.
    let v = &id * c(0) + &a2 * c(2) + &a4 * c(4) + &a6 * c(6);
    let u = &a * (&id * c(1) + &a2 * c(3) + &a4 * c(5));
    let num = &v + &u;
    let den = &v - &u;
    let mut r = den
        .lu()
        .solve(&num)
        .expect("Padé denominator is invertible for ‖A‖ ≤ 1/2");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn coefficients_match_the_factorial_formula() {
        let fact = |k: u64| (1..=k).product::<u64>() as f64;
        for (k, ck) in PADE6.iter().enumerate() {
            let k = k as u64;
            let expected = fact(12 - k) * fact(6) / (fact(12) * fact(k) * fact(6 - k));
            assert!((ck - expected).abs() < 1e-18, "k = {k}");
        }
    }

    #[test]
    fn nilpotent_matches_the_finite_series() {
        // Strictly upper triangular 3×3: exp(N) = I + N + N²/2.
        let nmat = DMatrix::from_row_slice(
            3,
            3,
            &[c(0.0, 0.0), c(2.0, 1.0), c(-3.0, 0.5), c(0.0, 0.0), c(0.0, 0.0), c(4.0, -1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        let series = DMatrix::identity(3, 3) + &nmat + &nmat * &nmat * c(0.5, 0.0);
        assert!((expm(&nmat) - series).camax() < 1e-13);
    }

    #[test]
    fn rotation_generator() {
        let t = 7.3;
        let a = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-t, 0.0), c(t, 0.0), c(0.0, 0.0)]);
        let e = expm(&a);
        let expected = DMatrix::from_row_slice(
            2,
            2,
            &[c(t.cos(), 0.0), c(-t.sin(), 0.0), c(t.sin(), 0.0), c(t.cos(), 0.0)],
        );
        assert!((e - expected).camax() < 1e-13);
    }

    #[test]
    fn diagonal_complex_entries() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.3, 2.0), c(-1.2, -0.7)]));
        let e = expm(&a);
        assert!((e[(0, 0)] - c(0.3, 2.0).exp()).norm() < 1e-14);
        assert!((e[(1, 1)] - c(-1.2, -0.7).exp()).norm() < 1e-14);
        assert!(e[(0, 1)].norm() < 1e-16);
    }

    #[test]
    fn agrees_with_nalgebra_on_a_dense_matrix() {
        let a = DMatrix::from_fn(4, 4, |i, j| c(((i * 7 + j * 3) % 5) as f64 * 0.4 - 0.8, ((i + 2 * j) % 3) as f64 * 0.3));
        let ours = expm(&a);
        let theirs = a.clone().exp();
        let rel = (&ours - &theirs).camax() / theirs.camax();
        assert!(rel < 1e-13, "relative difference {rel:e}");
    }

    #[test]
    fn exp_of_minus_a_is_the_inverse() {
        let a = DMatrix::from_fn(3, 3, |i, j| c((i as f64 - j as f64) * 0.9, (i * j) as f64 * 0.2));
        let prod = expm(&a) * expm(&(-&a));
        assert!((prod - DMatrix::identity(3, 3)).camax() < 1e-12);
    }
}
