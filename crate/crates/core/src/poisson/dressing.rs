use nalgebra::{DMatrix, DVector};

use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::group::{Mat, MatrixGroupModel, Side};
use crate::linalg;
use crate::poisson::bivector::pi_g_at;
use crate::scalar::{real_from_f64, real_to_f64, Scalar};
use crate::tol;

/// `ρ_𝔡(u+ξ)|_g = −(uˡ + πG♯(ξˡ))|_g`, i.e. `−ḡ·(u + Pᵀξ)` with `P` the
/// left-frame coefficients of `πG|_g`.
pub fn dressing<S: Scalar>(model: &MatrixGroupModel<S>, z: &DVector<S>, g: &Mat<S>) -> Result<Mat<S>> {
    let (u, xi) = model.double().split(z);
    let p = pi_g_at(model, g)?;
    Ok(-(g * model.emb_g(&(u + p.contract(&xi)))))
}

/// `ρ_𝔡(z)|_g = −pr_𝔤(Ad_ḡ z)·ḡ`.
pub fn dressing_projected<S: Scalar>(
    model: &MatrixGroupModel<S>,
    z: &DVector<S>,
    g: &Mat<S>,
) -> Result<Mat<S>> {
    let (u, _) = model.double().split(&model.adjoint(g, z)?);
    Ok(-(model.emb_g(&u) * g))
}

/// `(X, α) = (ρ_𝔡(z)|_g, −ξˡ|_g)`; `alpha` holds the left-frame coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracElement<S: Scalar> {
    pub base: Mat<S>,
    pub z: DVector<S>,
    pub x: Mat<S>,
    pub alpha: DVector<S>,
    /// Distance between the two formulas for `ρ_𝔡(z)|_g`.
    pub consistency: f64,
}

impl<S: Scalar> DiracElement<S> {
    /// `α(Y)` for a tangent matrix `Y` at the same base point.
    pub fn pair(&self, model: &MatrixGroupModel<S>, y: &Mat<S>) -> Result<S> {
        let n = model.n();
        let theta = model.maurer(&self.base, y, Side::Left)?;
        Ok(self.alpha.dot(&theta.rows(0, n)))
    }
}

fn check_member<S: Scalar>(l: &Subspace<S>, z: &DVector<S>) -> Result<()> {
    let r = l.projection_residual(z);
    if r > tol::MEMBERSHIP {
        return Err(Error::NotInSubspace { residual: r });
    }
    Ok(())
}

pub fn dirac_e_at<S: Scalar>(
    model: &MatrixGroupModel<S>,
    l: &Subspace<S>,
    g: &Mat<S>,
    z: &DVector<S>,
) -> Result<DiracElement<S>> {
    check_member(l, z)?;
    let x = dressing(model, z, g)?;
    let other = dressing_projected(model, z, g)?;
    let (_, xi) = model.double().split(z);
    Ok(DiracElement {
        base: g.clone(),
        z: z.clone(),
        consistency: real_to_f64((&x - other).camax()),
        x,
        alpha: -xi,
    })
}

/// The map `z ↦ (θˡ(X), α)` on a basis of 𝔩, as a `2n × dim 𝔩` matrix.
pub fn dirac_frame<S: Scalar>(model: &MatrixGroupModel<S>, l: &Subspace<S>, g: &Mat<S>) -> Result<DMatrix<S>> {
    let n = model.n();
    let mut out = DMatrix::zeros(2 * n, l.dim());
    for (j, z) in l.basis_vectors().iter().enumerate() {
        let e = dirac_e_at(model, l, g, z)?;
        let theta = model.maurer(g, &e.x, Side::Left)?;
        out.view_mut((0, j), (n, 1)).copy_from(&theta.rows(0, n));
        out.view_mut((n, j), (n, 1)).copy_from(&e.alpha);
    }
    Ok(out)
}

/// Rank of [`dirac_frame`]; an error unless it is `n`.
pub fn dirac_rank<S: Scalar>(model: &MatrixGroupModel<S>, l: &Subspace<S>, g: &Mat<S>) -> Result<usize> {
    let rank = linalg::rank(&dirac_frame(model, l, g)?, tol::RANK);
    if rank != model.n() {
        return Err(Error::RankDeficient { rank, expected: model.n() });
    }
    Ok(rank)
}

/// `max |α₁(X₂) + α₂(X₁)|` over pairs of basis vectors of 𝔩.
pub fn dirac_isotropy_residual<S: Scalar>(
    model: &MatrixGroupModel<S>,
    l: &Subspace<S>,
    g: &Mat<S>,
) -> Result<f64> {
    let elems = l
        .basis_vectors()
        .iter()
        .map(|z| dirac_e_at(model, l, g, z))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for a in &elems {
        for b in &elems {
            let s = a.pair(model, &b.x)? + b.pair(model, &a.x)?;
            worst = worst.max(real_to_f64(s.modulus()));
        }
    }
    Ok(worst)
}

/// `Ker E|_g = {ρ_𝔡(z)|_g : z ∈ 𝔩 ∩ 𝔤}`, in left-trivialized coordinates
/// `θˡ(X) ∈ 𝔤`.
pub fn kernel_e_at<S: Scalar>(model: &MatrixGroupModel<S>, l: &Subspace<S>, g: &Mat<S>) -> Result<Subspace<S>> {
    let n = model.n();
    let meet = l.intersection(&model.double().g_part());
    let vectors = meet
        .basis_vectors()
        .iter()
        .map(|z| {
            let x = dressing(model, z, g)?;
            Ok(model.maurer(g, &x, Side::Left)?.rows(0, n).into_owned())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace::span(n, &vectors))
}

/// Step and extrapolation used by the finite-difference checks: central
/// differences `D(h)` combined as `(4D(h/2) − D(h))/3`.
pub fn richardson<S: Scalar, F>(h: f64, f: F) -> Result<Mat<S>>
where
    F: Fn(f64) -> Result<Mat<S>>,
{
    let central = |h: f64| -> Result<Mat<S>> {
        let scale = real_from_f64::<S::Real>(0.5 / h);
        Ok((f(h)? - f(-h)?).map(|z| z.scale(scale)))
    };
    let coarse = central(h)?;
    let fine = central(h / 2.0)?;
    let four = real_from_f64::<S::Real>(4.0 / 3.0);
    let third = real_from_f64::<S::Real>(1.0 / 3.0);
    Ok(fine.map(|z| z.scale(four)) - coarse.map(|z| z.scale(third)))
}

/// Vector-field bracket `[ρ(z₁), ρ(z₂)]` at `g`, from derivatives of each
/// field along exponential curves `exp(t X g⁻¹) g` tangent to the other.
pub fn dressing_bracket_fd<S: Scalar>(
    model: &MatrixGroupModel<S>,
    z1: &DVector<S>,
    z2: &DVector<S>,
    g: &Mat<S>,
    h: f64,
) -> Result<Mat<S>> {
    let x1 = dressing(model, z1, g)?;
    let x2 = dressing(model, z2, g)?;
    let gi = model.inv(g);
    let along = |x: &Mat<S>, z: &DVector<S>| {
        let gen = x * &gi;
        richardson::<S, _>(h, move |t| {
            let scale = real_from_f64::<S::Real>(t);
            let point = crate::group::expm::expm(&gen.map(|c| c.scale(scale))) * g;
            dressing(model, z, &point)
        })
    };
    Ok(along(&x1, z2)? - along(&x2, z1)?)
}
