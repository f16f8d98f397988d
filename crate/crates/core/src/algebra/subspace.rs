use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::Scalar;
use crate::tol;

/// Linear subspace of a coordinate space, stored by a basis (columns) plus an
/// orthonormal basis of the same span for projections.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S: Scalar> {
    basis: DMatrix<S>,
    orthonormal: DMatrix<S>,
}

impl<S: Scalar> Subspace<S> {
    /// Rejects linearly dependent input.
    pub fn new(ambient_dim: usize, vectors: &[DVector<S>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: v.len() });
            }
        }
        Self::from_matrix(linalg::from_columns(ambient_dim, vectors))
    }

    pub fn from_matrix(basis: DMatrix<S>) -> Result<Self> {
        let orthonormal = linalg::column_space(&basis, tol::RANK);
        if orthonormal.ncols() != basis.ncols() {
            return Err(Error::RankDeficient { rank: orthonormal.ncols(), expected: basis.ncols() });
        }
        Ok(Self { basis, orthonormal })
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[DVector<S>]) -> Self {
        let m = linalg::from_columns(ambient_dim, vectors);
        let orthonormal = linalg::column_space(&m, tol::RANK);
        Self { basis: orthonormal.clone(), orthonormal }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            basis: DMatrix::zeros(ambient_dim, 0),
            orthonormal: DMatrix::zeros(ambient_dim, 0),
        }
    }

    /// Span of the listed coordinate axes.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let vectors: Vec<DVector<S>> = indices
            .iter()
            .map(|&i| {
                let mut v = DVector::zeros(ambient_dim);
                v[i] = S::one();
                v
            })
            .collect();
        Self::new(ambient_dim, &vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<S> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<DVector<S>> {
        self.basis.column_iter().map(|c| c.into_owned()).collect()
    }

    pub fn orthonormal(&self) -> &DMatrix<S> {
        &self.orthonormal
    }

    pub fn projection_residual(&self, x: &DVector<S>) -> f64 {
        linalg::projection_residual(&self.orthonormal, x)
    }

    pub fn contains(&self, x: &DVector<S>, tol: f64) -> bool {
        self.projection_residual(x) <= tol
    }

    /// Coefficients of `x` in the stored basis (least squares).
    pub fn coefficients(&self, x: &DVector<S>) -> DVector<S> {
        linalg::lstsq(&self.basis, x)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut m = DMatrix::<S>::zeros(self.ambient_dim(), a + b);
        m.view_mut((0, 0), (self.ambient_dim(), a)).copy_from(&self.orthonormal);
        m.view_mut((0, a), (self.ambient_dim(), b)).copy_from(&(-&other.orthonormal));
        let k = linalg::null_space(&m, tol::RANK);
        let vectors: Vec<DVector<S>> = k
            .column_iter()
            .map(|c| &self.orthonormal * c.rows(0, a))
            .collect();
        Self::span(self.ambient_dim(), &vectors)
    }

    /// Dimension of `self + other`.
    pub fn sum_dim(&self, other: &Self) -> usize {
        let mut m = DMatrix::<S>::zeros(self.ambient_dim(), self.dim() + other.dim());
        m.view_mut((0, 0), (self.ambient_dim(), self.dim())).copy_from(&self.orthonormal);
        m.view_mut((0, self.dim()), (self.ambient_dim(), other.dim()))
            .copy_from(&other.orthonormal);
        linalg::rank(&m, tol::RANK)
    }

    /// Two-sided containment test.
    pub fn same_span(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && self.distance(other) <= tol
    }

    /// Largest projection residual of either orthonormal basis onto the other.
    pub fn distance(&self, other: &Self) -> f64 {
        let one = self
            .orthonormal
            .column_iter()
            .map(|c| other.projection_residual(&c.into_owned()))
            .fold(0.0, f64::max);
        let two = other
            .orthonormal
            .column_iter()
            .map(|c| self.projection_residual(&c.into_owned()))
            .fold(0.0, f64::max);
        one.max(two)
    }

    /// Image under a linear map.
    pub fn map(&self, m: &DMatrix<S>) -> Self {
        let vectors: Vec<DVector<S>> = self.basis.column_iter().map(|c| m * c).collect();
        Self::span(m.nrows(), &vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> DVector<f64> {
        DVector::from_vec(xs.to_vec())
    }

    #[test]
    fn dependent_vectors_rejected() {
        let r = Subspace::new(3, &[v(&[1.0, 0.0, 0.0]), v(&[2.0, 0.0, 0.0])]);
        assert!(matches!(r, Err(Error::RankDeficient { rank: 1, expected: 2 })));
    }

    #[test]
    fn intersection_of_planes_is_a_line() {
        let a = Subspace::coordinate(3, &[0, 1]).unwrap();
        let b = Subspace::new(3, &[v(&[1.0, 0.0, 1.0]), v(&[0.0, 1.0, 0.0])]).unwrap();
        let c = a.intersection(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&v(&[0.0, 3.0, 0.0]), 1e-12));
        assert_eq!(a.sum_dim(&b), 3);
    }

    #[test]
    fn same_span_is_basis_independent() {
        let a = Subspace::new(3, &[v(&[1.0, 1.0, 0.0]), v(&[1.0, -1.0, 0.0])]).unwrap();
        let b = Subspace::coordinate(3, &[1, 0]).unwrap();
        assert!(a.same_span(&b, 1e-12));
        assert!(!a.same_span(&Subspace::coordinate(3, &[0, 2]).unwrap(), 1e-12));
    }
}
