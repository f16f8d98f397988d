//! Small dense helpers on top of nalgebra's SVD.

use nalgebra::{DMatrix, DVector};

use crate::scalar::{real_from_f64, real_to_f64, Scalar};

pub fn vec_norm_inf<S: Scalar>(v: &DVector<S>) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(real_to_f64(x.modulus())))
}

pub fn mat_norm_inf<S: Scalar>(m: &DMatrix<S>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(real_to_f64(x.modulus())))
}

pub fn singular_values<S: Scalar>(m: &DMatrix<S>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .map(|s| real_to_f64(*s))
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn rank<S: Scalar>(m: &DMatrix<S>, tol: f64) -> usize {
    singular_values(m).into_iter().filter(|s| *s > tol).count()
}

/// Orthonormal basis (columns) of the column space.
pub fn column_space<S: Scalar>(m: &DMatrix<S>, tol: f64) -> DMatrix<S> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let cols: Vec<DVector<S>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| real_to_f64(**s) > tol)
        .map(|(i, _)| u.column(i).into_owned())
        .collect();
    from_columns(m.nrows(), &cols)
}

/// Orthonormal basis (columns) of the right null space.
pub fn null_space<S: Scalar>(m: &DMatrix<S>, tol: f64) -> DMatrix<S> {
    let n = m.ncols();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    // Pad with zero rows so the SVD returns a full set of right singular vectors.
    let rows = m.nrows().max(n);
    let mut padded = DMatrix::<S>::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let cols: Vec<DVector<S>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| real_to_f64(**s) <= tol)
        .map(|(i, _)| vt.row(i).adjoint().into_owned())
        .collect();
    from_columns(n, &cols)
}

/// Minimum-norm least-squares solution of `a x = b`.
pub fn lstsq<S: Scalar>(a: &DMatrix<S>, b: &DVector<S>) -> DVector<S> {
    if a.ncols() == 0 {
        return DVector::zeros(0);
    }
    let svd = a.clone().svd(true, true);
    svd.solve(b, real_from_f64(1e-13))
        .expect("SVD solve with both factors")
}

/// Moore–Penrose pseudo-inverse.
pub fn pinv<S: Scalar>(a: &DMatrix<S>) -> DMatrix<S> {
    if a.ncols() == 0 || a.nrows() == 0 {
        return DMatrix::zeros(a.ncols(), a.nrows());
    }
    a.clone()
        .pseudo_inverse(real_from_f64(1e-13))
        .expect("pseudo-inverse")
}

pub fn from_columns<S: Scalar>(nrows: usize, cols: &[DVector<S>]) -> DMatrix<S> {
    let mut m = DMatrix::zeros(nrows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

/// Residual of `x` after orthogonal projection onto the span of the
/// orthonormal columns `q`.
pub fn projection_residual<S: Scalar>(q: &DMatrix<S>, x: &DVector<S>) -> f64 {
    if q.ncols() == 0 {
        return vec_norm_inf(x);
    }
    let coeffs = q.adjoint() * x;
    vec_norm_inf(&(x - q * coeffs))
}
