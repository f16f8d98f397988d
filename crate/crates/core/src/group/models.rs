//! Ready-made matrix models.

use nalgebra::{DMatrix, DVector, RealField};
use num_complex::Complex;

use crate::algebra::{double_from_bialgebra, DoubleAlgebra, LieAlgebra, LieBialgebra, Subspace};
use crate::error::{Error, Result};
use crate::group::factor::FactorizationOracle;
use crate::group::model::{Mat, MatrixGroupModel, ModelParts, PairingKind};
use crate::group::predicate::Predicate;
use crate::linalg;
use crate::scalar::{real_from_f64, Scalar};
use crate::tol;

fn cm<R: RealField + Copy>(n: usize, entries: &[(f64, f64)]) -> DMatrix<Complex<R>> {
    DMatrix::from_row_iterator(
        n,
        n,
        entries.iter().map(|&(re, im)| Complex::new(real_from_f64(re), real_from_f64(im))),
    )
}

fn block<R: RealField + Copy>(a: &DMatrix<Complex<R>>, b: &DMatrix<Complex<R>>) -> DMatrix<Complex<R>> {
    let k = a.nrows();
    let mut m = DMatrix::zeros(2 * k, 2 * k);
    m.view_mut((0, 0), (k, k)).copy_from(a);
    m.view_mut((k, k), (k, k)).copy_from(a);
    m.view_mut((0, k), (k, k)).copy_from(b);
    m
}

/// Structure constants of the matrix Lie algebra spanned by `basis`.
fn constants<S: Scalar>(basis: &[Mat<S>], labels: Vec<String>) -> Result<LieAlgebra<S>> {
    let n = basis.len();
    let eqs = |m: &Mat<S>| {
        let mut out = Vec::new();
        for z in m.iter() {
            S::push_equations(*z, &mut out);
        }
        DVector::from_vec(out)
    };
    let cols: Vec<DVector<S>> = basis.iter().map(eqs).collect();
    let a = linalg::from_columns(cols[0].len(), &cols);
    let lift = linalg::pinv(&a);
    let mut worst = 0.0f64;
    let alg = LieAlgebra::from_upper_brackets(n, labels, false, |i, j| {
        let comm = &basis[i] * &basis[j] - &basis[j] * &basis[i];
        let b = eqs(&comm);
        let x = &lift * &b;
        worst = worst.max(linalg::vec_norm_inf(&(&a * &x - &b)));
        x.iter().copied().collect()
    })?;
    if worst > tol::PULLBACK {
        return Err(Error::Pullback { residual: worst });
    }
    Ok(alg)
}

/// Double built from matrix bases of 𝔤 and of 𝔤* (the latter dual to the
/// former under the model pairing).
fn double_from_matrices<S: Scalar>(
    g: &[Mat<S>],
    g_labels: &[&str],
    gstar: &[Mat<S>],
    gstar_labels: &[&str],
) -> Result<DoubleAlgebra<S>> {
    let labels = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let ga = constants::<S>(g, labels(g_labels))?;
    let dual = constants::<S>(gstar, labels(gstar_labels))?;
    double_from_bialgebra(&LieBialgebra::from_dual_bracket(ga, &dual)?)
}

fn check<S: Scalar>(model: MatrixGroupModel<S>) -> Result<MatrixGroupModel<S>> {
    let h = model.homomorphism_residual();
    let p = model.pairing_residual();
    if h > tol::SUBSPACE || p > tol::SUBSPACE {
        return Err(Error::Invalid(format!(
            "{}: realization is off by {h:.2e} (bracket), {p:.2e} (pairing)",
            model.name()
        )));
    }
    Ok(model)
}

/// `SL(2,ℂ)` as the double of `SU(2)` with `G* = AN`, pairing `Im tr(XY)`.
///
/// 𝔤 = su(2) with basis `iH, [[0,1],[-1,0]], [[0,i],[i,0]]`; the dual basis of
/// 𝔞𝔫 is `H/2, -iE, E`. `L = G*` until [`MatrixGroupModel::with_lagrangian`].
pub fn su2_iwasawa<S: Scalar>() -> Result<MatrixGroupModel<S>> {
    let g = vec![
        cm(2, &[(0.0, 1.0), (0.0, 0.0), (0.0, 0.0), (0.0, -1.0)]),
        cm(2, &[(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 0.0)]),
        cm(2, &[(0.0, 0.0), (0.0, 1.0), (0.0, 1.0), (0.0, 0.0)]),
    ];
    let gstar = vec![
        cm(2, &[(0.5, 0.0), (0.0, 0.0), (0.0, 0.0), (-0.5, 0.0)]),
        cm(2, &[(0.0, 0.0), (0.0, -1.0), (0.0, 0.0), (0.0, 0.0)]),
        cm(2, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]),
    ];
    let double = double_from_matrices::<S>(&g, &["iH", "J", "iK"], &gstar, &["H/2", "-iE", "E"])?;
    check(MatrixGroupModel::new(ModelParts {
        name: "su2_iwasawa".into(),
        double,
        basis: g.into_iter().chain(gstar).collect(),
        pairing: PairingKind::ImTrace,
        d_predicate: Predicate::SpecialLinear,
        g_predicate: Predicate::SpecialUnitary,
        gstar_predicate: Predicate::UpperPositive,
        oracle: Some(FactorizationOracle::IwasawaSlnc),
    })?)
}

/// `𝔩 = 𝔱 ⊕ 𝔫` (upper triangular, imaginary trace part) in the su(2) model.
pub fn torus_nilpotent<S: Scalar>(model: &MatrixGroupModel<S>) -> Result<Subspace<S>> {
    Subspace::coordinate(model.double().dim(), &[0, 4, 5])
}

/// su(2) model with `L = {upper triangular, diagonal in U(1)}` and no `H`.
pub fn su2_torus_nilpotent<S: Scalar>() -> Result<MatrixGroupModel<S>> {
    let m = su2_iwasawa::<S>()?;
    m.with_lagrangian(torus_nilpotent(&m)?, Predicate::UpperUnitaryDiagonal, None)
}

/// su(2) model with `𝔩 = 𝔱 ⊕ 𝔫` and `H = U(1)` the diagonal torus, i.e. the
/// Bruhat–Poisson sphere `SU(2)/T` with `Λ = 0`.
pub fn cp1_bruhat<S: Scalar>() -> Result<MatrixGroupModel<S>> {
    let m = su2_iwasawa::<S>()?;
    let h = Subspace::coordinate(m.double().dim(), &[0])?;
    m.with_lagrangian(
        torus_nilpotent(&m)?,
        Predicate::UpperUnitaryDiagonal,
        Some((h, Predicate::DiagonalUnitary)),
    )
}

/// `SL(2,ℝ) ⋉ sl(2,ℝ)*` as real 4×4 matrices `[[A, B], [0, A]]` with zero
/// cobracket and pairing `tr(A₁B₂ + B₁A₂)`.
///
/// 𝔤 has basis `H, E, F` (as `diag(X, X)`), and 𝔤* the dual basis
/// `H/2, F, E` in the upper right block.
pub fn trivial_sl2<S: Scalar>() -> Result<MatrixGroupModel<S>> {
    let h = cm::<S::Real>(2, &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-1.0, 0.0)]);
    let e = cm::<S::Real>(2, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
    let f = cm::<S::Real>(2, &[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
    let z = DMatrix::zeros(2, 2);
    let zero4 = DMatrix::zeros(4, 4);
    let upper = |x: &DMatrix<Complex<S::Real>>| {
        let mut m = zero4.clone();
        m.view_mut((0, 2), (2, 2)).copy_from(x);
        m
    };
    let half: S::Real = real_from_f64(0.5);
    let g = vec![block(&h, &z), block(&e, &z), block(&f, &z)];
    let gstar = vec![upper(&h.map(|x| x.scale(half))), upper(&f), upper(&e)];
    let double = double_from_matrices::<S>(&g, &["H", "E", "F"], &gstar, &["H*", "E*", "F*"])?;
    check(MatrixGroupModel::new(ModelParts {
        name: "trivial_bialgebra".into(),
        double,
        basis: g.into_iter().chain(gstar).collect(),
        pairing: PairingKind::BlockTrace,
        d_predicate: Predicate::BlockSemidirect,
        g_predicate: Predicate::BlockDiagonal,
        gstar_predicate: Predicate::BlockUnipotent,
        oracle: Some(FactorizationOracle::BlockTriangular),
    })?)
}

/// `𝔥 ⊕ Ann(𝔥)` with `𝔥 = ℝH` in the trivial model.
pub fn split_torus_annihilator<S: Scalar>(model: &MatrixGroupModel<S>) -> Result<Subspace<S>> {
    Subspace::coordinate(model.double().dim(), &[0, 4, 5])
}

/// Trivial model with `L = exp(𝔥 ⊕ Ann 𝔥)` and `H = exp(ℝH)`.
pub fn trivial_sl2_split<S: Scalar>() -> Result<MatrixGroupModel<S>> {
    let m = trivial_sl2::<S>()?;
    let h = Subspace::coordinate(m.double().dim(), &[0])?;
    m.with_lagrangian(
        split_torus_annihilator(&m)?,
        Predicate::BlockSplitTorusOffDiagonal,
        Some((h, Predicate::BlockSplitTorus)),
    )
}
