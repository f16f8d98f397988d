use nalgebra::DVector;

use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::group::{Mat, MatrixGroupModel, Side};
use crate::linalg;
use crate::poisson::dressing::dressing;
use crate::scalar::{real_to_f64, Scalar};
use crate::tol;

fn check_annihilates<S: Scalar>(h: &Subspace<S>, beta: &DVector<S>) -> Result<()> {
    let worst = h
        .basis_vectors()
        .iter()
        .map(|x| real_to_f64(beta.dot(x).modulus()))
        .fold(0.0, f64::max);
    if worst > tol::MEMBERSHIP {
        return Err(Error::NotInSubspace { residual: worst });
    }
    Ok(())
}

/// `π|_{gH}(β₁, β₂)` for covectors whose pullback to `g` is `βᵢˡ|_g`,
/// `βᵢ ∈ Ann(𝔥) ⊂ 𝔤*`.
///
/// Finds `z₁ ∈ 𝔩` with ξ-part `−β₁` and returns `β₂(θˡ(ρ_𝔡(z₁)|_g))`. The
/// 𝔥-ambiguity of `z₁` is killed by `β₂`. `h` lives in 𝔤 coordinates.
pub fn pushforward_pi_quotient<S: Scalar>(
    model: &MatrixGroupModel<S>,
    l: &Subspace<S>,
    h: &Subspace<S>,
    g: &Mat<S>,
    beta1: &DVector<S>,
    beta2: &DVector<S>,
) -> Result<S> {
    let n = model.n();
    check_annihilates(h, beta1)?;
    check_annihilates(h, beta2)?;
    let basis = l.basis();
    let xi_rows = basis.rows(n, n).into_owned();
    let target = -beta1;
    let c = linalg::lstsq(&xi_rows, &target);
    let miss = linalg::vec_norm_inf(&(&xi_rows * &c - &target));
    if miss > tol::MEMBERSHIP {
        return Err(Error::Constraint { residual: miss });
    }
    let z1 = basis * c;
    let x1 = dressing(model, &z1, g)?;
    let theta = model.maurer(g, &x1, Side::Left)?;
    Ok(beta2.dot(&theta.rows(0, n)))
}

/// `|π|_{gH}(β₁, β₂) − π|_{ghH}(β₁', β₂')|` with `β' = β ∘ Ad_h`, the same
/// covectors at `gH = ghH` seen from the representative `gh`.
pub fn quotient_pi_invariance<S: Scalar>(
    model: &MatrixGroupModel<S>,
    l: &Subspace<S>,
    h: &Subspace<S>,
    g: &Mat<S>,
    hh: &Mat<S>,
    beta1: &DVector<S>,
    beta2: &DVector<S>,
) -> Result<f64> {
    let here = pushforward_pi_quotient(model, l, h, g, beta1, beta2)?;
    let b1 = model.coadjoint_g(hh, beta1)?;
    let b2 = model.coadjoint_g(hh, beta2)?;
    let there = pushforward_pi_quotient(model, l, h, &(g * hh), &b1, &b2)?;
    Ok(real_to_f64((here - there).modulus()))
}

/// `𝔮^⊥` with respect to the pairing on 𝔡.
pub fn orthogonal<S: Scalar>(model: &MatrixGroupModel<S>, q: &Subspace<S>) -> Subspace<S> {
    let m = q.basis().transpose() * model.double().pairing_form().matrix();
    let k = linalg::null_space(&m, tol::RANK);
    let vectors: Vec<DVector<S>> = k.column_iter().map(|c| c.into_owned()).collect();
    Subspace::span(model.double().dim(), &vectors)
}

/// Largest distance of a vector of `𝔮^⊥` from `𝔮`.
pub fn coisotropy_residual<S: Scalar>(model: &MatrixGroupModel<S>, q: &Subspace<S>) -> f64 {
    orthogonal(model, q)
        .basis_vectors()
        .iter()
        .map(|x| q.projection_residual(x))
        .fold(0.0, f64::max)
}

/// `p_*(Rʳ)` at `dQ` on covectors `⟨bᵢ, ·⟩`, `bᵢ ∈ 𝔮^⊥`, left-translated to
/// `d`: `R(Ad_{d⁻¹}ᵀβ₁, Ad_{d⁻¹}ᵀβ₂)` with `βᵢ = ⟨bᵢ, ·⟩`.
pub fn pi_dq_at<S: Scalar>(
    model: &MatrixGroupModel<S>,
    q: &Subspace<S>,
    d: &Mat<S>,
    b1: &DVector<S>,
    b2: &DVector<S>,
) -> Result<S> {
    let co = coisotropy_residual(model, q);
    if co > tol::SUBSPACE {
        return Err(Error::Invalid(format!("subalgebra is not coisotropic ({co:.2e})")));
    }
    let perp = orthogonal(model, q);
    for b in [b1, b2] {
        let r = perp.projection_residual(b);
        if r > tol::MEMBERSHIP {
            return Err(Error::NotInSubspace { residual: r });
        }
    }
    let dd = model.double();
    let a = model.adjoint_matrix(&model.inv(d))?;
    let alpha1 = a.transpose() * dd.pairing_form().flat(b1);
    let alpha2 = a.transpose() * dd.pairing_form().flat(b2);
    Ok((alpha1.transpose() * dd.r() * alpha2)[(0, 0)])
}
