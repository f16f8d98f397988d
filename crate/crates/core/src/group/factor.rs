//! Global factorizations `d = v·g` with `v ∈ G*`, `g ∈ G`.

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::real_to_f64;

/// `(v, g)` or `(q, r)`, depending on the routine.
type Factors<R> = (DMatrix<Complex<R>>, DMatrix<Complex<R>>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorizationOracle {
    /// `SL(N,ℂ) = AN · SU(N)` by Gram–Schmidt on the columns of `d⁻¹`.
    IwasawaSlnc,
    /// `[[A, B], [0, A]] = [[I, BA⁻¹], [0, I]] · diag(A, A)`.
    BlockTriangular,
}

impl FactorizationOracle {
    pub fn factorize<R: RealField + Copy>(
        self,
        d: &DMatrix<Complex<R>>,
    ) -> Result<Factors<R>> {
        match self {
            FactorizationOracle::IwasawaSlnc => iwasawa(d),
            FactorizationOracle::BlockTriangular => block_triangular(d),
        }
    }
}

/// Modified Gram–Schmidt with one reorthogonalization pass: `a = QR`, `Q`
/// unitary, `R` upper triangular with positive real diagonal.
pub fn gram_schmidt<R: RealField + Copy>(
    a: &DMatrix<Complex<R>>,
) -> Result<Factors<R>> {
    let n = a.ncols();
    let mut q = a.clone();
    let mut r = DMatrix::<Complex<R>>::zeros(n, n);
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let qi = q.column(i).into_owned();
                let proj = qi.dotc(&q.column(j));
                r[(i, j)] += proj;
                let updated = q.column(j) - qi * proj;
                q.set_column(j, &updated);
            }
        }
        let norm = q.column(j).norm();
        if real_to_f64(norm) < 1e-300 {
            return Err(Error::Factorization(format!("column {j} is dependent")));
        }
        r[(j, j)] = Complex::new(norm, R::zero());
        let unit = q.column(j).unscale(norm);
        q.set_column(j, &unit);
    }
    Ok((q, r))
}

/// `d = v·g` with `v` upper triangular (positive diagonal) and `g` unitary.
///
/// From `d⁻¹ = QR`: `d = R⁻¹ Q*`. For `det d = 1` both factors have
/// determinant one, since `det R > 0` and `|det Q| = 1`.
pub fn iwasawa<R: RealField + Copy>(
    d: &DMatrix<Complex<R>>,
) -> Result<Factors<R>> {
    let inv = d
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Factorization("singular matrix".into()))?;
    let (q, r) = gram_schmidt(&inv)?;
    let v = r
        .try_inverse()
        .ok_or_else(|| Error::Factorization("triangular factor is singular".into()))?;
    Ok((v, q.adjoint()))
}

pub fn block_triangular<R: RealField + Copy>(
    d: &DMatrix<Complex<R>>,
) -> Result<Factors<R>> {
    let size = d.nrows();
    if !size.is_multiple_of(2) || !d.is_square() {
        return Err(Error::Factorization(format!("{size}×{} is not a 2×2 block matrix", d.ncols())));
    }
    let m = size / 2;
    let a = d.view((0, 0), (m, m)).into_owned();
    let b = d.view((0, m), (m, m)).into_owned();
    let a_inv = a
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Factorization("diagonal block is singular".into()))?;
    let mut v = DMatrix::<Complex<R>>::identity(size, size);
    v.view_mut((0, m), (m, m)).copy_from(&(&b * &a_inv));
    let mut g = DMatrix::<Complex<R>>::zeros(size, size);
    g.view_mut((0, 0), (m, m)).copy_from(&a);
    g.view_mut((m, m), (m, m)).copy_from(&a);
    Ok((v, g))
}

/// `‖v·g − d‖_max / max(1, ‖d‖_max)`.
pub fn factorization_residual<R: RealField + Copy>(
    d: &DMatrix<Complex<R>>,
    v: &DMatrix<Complex<R>>,
    g: &DMatrix<Complex<R>>,
) -> f64 {
    let scale = real_to_f64(d.camax()).max(1.0);
    real_to_f64((v * g - d).camax()) / scale
}
