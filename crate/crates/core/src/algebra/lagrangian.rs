use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::algebra::double::DoubleAlgebra;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{real_to_f64, Scalar};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LagrangianReport {
    pub half_dimension: bool,
    pub isotropy: bool,
    pub closure: bool,
    pub isotropy_residual: f64,
    pub closure_residual: f64,
}

impl LagrangianReport {
    pub fn pass(&self) -> bool {
        self.half_dimension && self.isotropy && self.closure
    }

    pub fn worst_residual(&self) -> f64 {
        self.isotropy_residual.max(self.closure_residual)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SplittingReport {
    pub first: LagrangianReport,
    pub second: LagrangianReport,
    pub spans: bool,
}

impl SplittingReport {
    pub fn pass(&self) -> bool {
        self.first.pass() && self.second.pass() && self.spans
    }
}

/// Half-dimension, isotropy and bracket closure of `s`, measured on an
/// orthonormal basis of `s`.
pub fn is_lagrangian_subalgebra<S: Scalar>(
    d: &DoubleAlgebra<S>,
    s: &Subspace<S>,
    tol: f64,
) -> Result<LagrangianReport> {
    if s.ambient_dim() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), got: s.ambient_dim() });
    }
    let q: Vec<DVector<S>> = s.orthonormal().column_iter().map(|c| c.into_owned()).collect();
    let mut iso = 0.0f64;
    let mut clo = 0.0f64;
    for x in &q {
        for y in &q {
            iso = iso.max(real_to_f64(d.pairing(x, y).modulus()));
            clo = clo.max(s.projection_residual(&d.bracket(x, y)));
        }
    }
    Ok(LagrangianReport {
        half_dimension: s.dim() == d.n(),
        isotropy: iso <= tol,
        closure: clo <= tol,
        isotropy_residual: iso,
        closure_residual: clo,
    })
}

pub fn is_lagrangian_splitting<S: Scalar>(
    d: &DoubleAlgebra<S>,
    s1: &Subspace<S>,
    s2: &Subspace<S>,
    tol: f64,
) -> Result<SplittingReport> {
    let first = is_lagrangian_subalgebra(d, s1, tol)?;
    let second = is_lagrangian_subalgebra(d, s2, tol)?;
    Ok(SplittingReport { first, second, spans: s1.sum_dim(s2) == d.dim() })
}

/// Coordinates on `𝔤/𝔥` and `Ann(𝔥)` used to read `Λ`.
///
/// The complement `q_1..q_m` consists of the standard basis vectors of 𝔤,
/// taken in index order, that complete 𝔥 to a basis. `α_1..α_m ∈ Ann(𝔥)` is
/// the dual basis (`α_a(q_b) = δ_ab`, `α_a|_𝔥 = 0`), and `Λ[a][b] = Λ(α_a, α_b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientFrame<S: Scalar> {
    pub complement: DMatrix<S>,
    pub annihilator: DMatrix<S>,
}

impl<S: Scalar> QuotientFrame<S> {
    pub fn new(h: &Subspace<S>) -> Result<Self> {
        let n = h.ambient_dim();
        let k = h.dim();
        let mut cols: Vec<DVector<S>> = h.basis_vectors();
        let mut chosen = Vec::new();
        for i in 0..n {
            let mut e = DVector::zeros(n);
            e[i] = S::one();
            cols.push(e.clone());
            if linalg::rank(&linalg::from_columns(n, &cols), tol::RANK) == cols.len() {
                chosen.push(e);
            } else {
                cols.pop();
            }
        }
        if cols.len() != n {
            return Err(Error::RankDeficient { rank: cols.len(), expected: n });
        }
        let full = linalg::from_columns(n, &cols);
        let inv = full
            .try_inverse()
            .ok_or(Error::RankDeficient { rank: cols.len() - 1, expected: n })?;
        // Row k+a of the inverse is the functional α_a.
        let annihilator = inv.rows(k, n - k).transpose();
        Ok(Self { complement: linalg::from_columns(n, &chosen), annihilator })
    }

    pub fn dim(&self) -> usize {
        self.complement.ncols()
    }
}

/// `𝔩 = {u+ξ : ξ ∈ Ann(𝔥), i_ξ Λ = u + 𝔥}` with `i_ξΛ = Λ(ξ, ·)`.
///
/// The basis lists 𝔥 first, then `α_a + Σ_b Λ[a][b] q_b`.
pub fn drinfeld_subalgebra<S: Scalar>(
    d: &DoubleAlgebra<S>,
    h: &Subspace<S>,
    lambda: &DMatrix<S>,
) -> Result<Subspace<S>> {
    let n = d.n();
    if h.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: h.ambient_dim() });
    }
    let frame = QuotientFrame::new(h)?;
    let m = frame.dim();
    if lambda.nrows() != m || lambda.ncols() != m {
        return Err(Error::DimensionMismatch { expected: m, got: lambda.nrows() });
    }
    let mut vectors: Vec<DVector<S>> = h.basis_vectors().iter().map(|u| d.embed_g(u)).collect();
    for a in 0..m {
        let mut u = DVector::zeros(n);
        for b in 0..m {
            u += frame.complement.column(b) * lambda[(a, b)];
        }
        vectors.push(d.join(&u, &frame.annihilator.column(a).into_owned()));
    }
    let l = Subspace::new(2 * n, &vectors)
        .map_err(|_| Error::Invalid("Λ does not define a lagrangian of full dimension".into()))?;
    if l.dim() != n {
        return Err(Error::RankDeficient { rank: l.dim(), expected: n });
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bialgebra::LieBialgebra;
    use crate::algebra::double::double_from_bialgebra;
    use crate::algebra::lie::{sl2, LieAlgebra};

    fn trivial_sl2() -> DoubleAlgebra<f64> {
        double_from_bialgebra(&LieBialgebra::trivial(sl2::<f64>())).unwrap()
    }

    #[test]
    fn g_and_gstar_split_the_double() {
        let d = trivial_sl2();
        let r = is_lagrangian_splitting(&d, &d.g_part(), &d.gstar_part(), 1e-12).unwrap();
        assert!(r.pass());
        let r = is_lagrangian_splitting(&d, &d.g_part(), &d.g_part(), 1e-12).unwrap();
        assert!(!r.pass() && !r.spans);
    }

    #[test]
    fn non_isotropic_plane_detected() {
        let g = LieAlgebra::<f64>::abelian(2);
        let d = double_from_bialgebra(&LieBialgebra::trivial(g)).unwrap();
        let s = Subspace::coordinate(4, &[0, 2]).unwrap();
        let r = is_lagrangian_subalgebra(&d, &s, 1e-12).unwrap();
        assert!(!r.isotropy && r.half_dimension && r.closure);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let d = trivial_sl2();
        let s = Subspace::<f64>::coordinate(3, &[0]).unwrap();
        assert!(is_lagrangian_subalgebra(&d, &s, 1e-12).is_err());
    }

    #[test]
    fn quotient_frame_is_dual() {
        let h = Subspace::new(3, &[DVector::from_vec(vec![1.0, 1.0, 0.0])]).unwrap();
        let f = QuotientFrame::new(&h).unwrap();
        assert_eq!(f.dim(), 2);
        let pairing = f.annihilator.transpose() * &f.complement;
        assert!((pairing - DMatrix::identity(2, 2)).amax() < 1e-14);
        assert!((f.annihilator.transpose() * h.basis()).amax() < 1e-14);
    }

    #[test]
    fn whole_g_gives_g() {
        let d = trivial_sl2();
        let h = Subspace::coordinate(3, &[0, 1, 2]).unwrap();
        let l = drinfeld_subalgebra(&d, &h, &DMatrix::zeros(0, 0)).unwrap();
        assert!(l.same_span(&d.g_part(), 1e-12));
    }

    #[test]
    fn zero_h_with_invertible_lambda_meets_g_trivially() {
        // 2-dim abelian 𝔤: any Λ works.
        let d = double_from_bialgebra(&LieBialgebra::trivial(LieAlgebra::<f64>::abelian(2))).unwrap();
        let lambda = DMatrix::from_row_slice(2, 2, &[0.0, 1.5, -1.5, 0.0]);
        let l = drinfeld_subalgebra(&d, &Subspace::zero(2), &lambda).unwrap();
        assert_eq!(l.dim(), 2);
        assert_eq!(l.intersection(&d.g_part()).dim(), 0);
        assert!(is_lagrangian_subalgebra(&d, &l, 1e-12).unwrap().pass());
    }
}
