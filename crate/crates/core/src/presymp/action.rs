use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::group::{Mat, MatrixGroupModel, Side};
use crate::groupoid::{
    chart_basis, distance, make_point, multiply, point_from_chart, psi, realize_tangent, target, GroupoidPoint,
    GroupoidTangent,
};
use crate::poisson::pi_gstar_sharp;
use crate::presymp::omega::{absf, omega_eval};
use crate::scalar::{real_to_f64, Scalar};
use crate::tol;

// Points of 𝒢(G*) are `(w₁, γ₁, γ₂, w₂)`; over G* the source is `w₂`, the
// target `w₁⁻¹`.

pub fn gstar_source<S: Scalar>(gamma: &GroupoidPoint<S>) -> &Mat<S> {
    &gamma.l
}

pub fn gstar_target<S: Scalar>(dual: &MatrixGroupModel<S>, gamma: &GroupoidPoint<S>) -> Mat<S> {
    dual.inv(&gamma.v)
}

/// `(u⁻¹, e, e, u)`.
pub fn gstar_unit<S: Scalar>(dual: &MatrixGroupModel<S>, u: &Mat<S>) -> Result<GroupoidPoint<S>> {
    let e = Mat::<S>::identity(dual.size(), dual.size());
    make_point(dual, dual.inv(u), e.clone(), e, u.clone())
}

/// `(w₁, γ₁, γ₂, w₂)(w₁′, γ₁′, γ₂′, w₂′) = (w₁, γ₁γ₁′, γ₂γ₂′, w₂′)`.
pub fn gstar_multiply<S: Scalar>(
    dual: &MatrixGroupModel<S>,
    a: &GroupoidPoint<S>,
    b: &GroupoidPoint<S>,
) -> Result<GroupoidPoint<S>> {
    let mismatch = real_to_f64((gstar_source(a) - gstar_target(dual, b)).camax());
    if mismatch > tol::POINT {
        return Err(Error::NotComposable { residual: mismatch });
    }
    make_point(dual, a.v.clone(), &a.g1 * &b.g1, &a.g2 * &b.g2, b.l.clone())
}

/// `J(v, g₁, g₂, l) = v⁻¹`.
pub fn j_map<S: Scalar>(model: &MatrixGroupModel<S>, p: &GroupoidPoint<S>) -> Mat<S> {
    model.inv(&p.v)
}

/// `κ((w₁,γ₁,γ₂,w₂), (v,g₁,g₂,l)) = (w₁, γ₁g₁, γ₂g₂, l)`, defined when `w₂ = v⁻¹`.
/// `dual` must be the same model with `L = G*`.
pub fn double_action_kappa<S: Scalar>(
    model: &MatrixGroupModel<S>,
    gamma: &GroupoidPoint<S>,
    p: &GroupoidPoint<S>,
) -> Result<GroupoidPoint<S>> {
    let mismatch = real_to_f64((gstar_source(gamma) - j_map(model, p)).camax());
    if mismatch > tol::POINT {
        return Err(Error::NotComposable { residual: mismatch });
    }
    make_point(model, gamma.v.clone(), &gamma.g1 * &p.g1, &gamma.g2 * &p.g2, p.l.clone())
}

/// Residuals of `κ(1_{J(σ)}, σ) = σ` and `κ(γγ′, σ) = κ(γ, κ(γ′, σ))`.
pub fn kappa_axioms_residual<S: Scalar>(
    model: &MatrixGroupModel<S>,
    dual: &MatrixGroupModel<S>,
    gamma: &GroupoidPoint<S>,
    gamma2: &GroupoidPoint<S>,
    p: &GroupoidPoint<S>,
) -> Result<f64> {
    let unit = gstar_unit(dual, &j_map(model, p))?;
    let r_unit = distance(&double_action_kappa(model, &unit, p)?, p);
    let once = double_action_kappa(model, &gstar_multiply(dual, gamma, gamma2)?, p)?;
    let twice = double_action_kappa(model, gamma, &double_action_kappa(model, gamma2, p)?)?;
    Ok(r_unit.max(distance(&once, &twice)))
}

/// A tangent to the fibered product: `gamma` at `γ ∈ 𝒢(G*)`, `sigma` at
/// `σ ∈ 𝒢(L)` with `d s_{G*}(gamma) = dJ(sigma)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberedTangent<S: Scalar> {
    pub gamma: GroupoidTangent<S>,
    pub sigma: GroupoidTangent<S>,
}

/// Completes `sigma` with the `𝒢(G*)` tangent `(w_γ, ζ)`; matching forces
/// `ζ = −θˡ_v(X)` for the `G*`-component `X` of `sigma`.
pub fn fibered_tangent<S: Scalar>(
    model: &MatrixGroupModel<S>,
    dual: &MatrixGroupModel<S>,
    gamma: &GroupoidPoint<S>,
    sigma: GroupoidTangent<S>,
    w_gamma: DVector<S>,
) -> Result<FiberedTangent<S>> {
    let x = realize_tangent(model, &sigma)?.x;
    let zeta = -model.maurer(&sigma.base.v, &x, Side::Left)?;
    let gamma = GroupoidTangent::new(dual, gamma.clone(), w_gamma, zeta)?;
    Ok(FiberedTangent { gamma, sigma })
}

/// `dκ` in the chart at `κ(γ, σ)`: `w = w_γ + Ad_{γ₂}w_σ`, `z = z_σ`. The
/// second value is the distance between the realized pushforward
/// `(X_γ, Y_γg₁ + γ₁Y_σ, W_γg₂ + γ₂W_σ, Z_σ)` and the chart tangent.
pub fn kappa_pushforward<S: Scalar>(
    model: &MatrixGroupModel<S>,
    dual: &MatrixGroupModel<S>,
    t: &FiberedTangent<S>,
) -> Result<(GroupoidTangent<S>, f64)> {
    let d = model.double();
    let n = model.n();
    let (gamma, sigma) = (&t.gamma.base, &t.sigma.base);
    let base = double_action_kappa(model, gamma, sigma)?;
    let rg = realize_tangent(dual, &t.gamma)?;
    let rs = realize_tangent(model, &t.sigma)?;
    let moved = model.adjoint(&gamma.g2, &d.embed_g(&t.sigma.w))?;
    let w = &t.gamma.w + moved.rows(0, n);
    let out = GroupoidTangent::new(model, base, w, t.sigma.z.clone())?;
    let r = realize_tangent(model, &out)?;
    let y = &rg.y * &sigma.g1 + &gamma.g1 * &rs.y;
    let ww = &rg.w * &sigma.g2 + &gamma.g2 * &rs.w;
    let mismatch = [r.x - rg.x, r.y - y, r.w - ww, r.z - rs.z]
        .iter()
        .map(|m| real_to_f64(m.camax()))
        .fold(0.0, f64::max);
    Ok((out, mismatch))
}

/// `|κ*ω − pr₁*ω_{𝒢(G*)} − pr₂*ω|` on a pair of fibered tangents, maxed
/// with the realization mismatch of `dκ`.
pub fn omegacond_residual<S: Scalar>(
    model: &MatrixGroupModel<S>,
    dual: &MatrixGroupModel<S>,
    t1: &FiberedTangent<S>,
    t2: &FiberedTangent<S>,
) -> Result<f64> {
    let (k1, m1) = kappa_pushforward(model, dual, t1)?;
    let (k2, m2) = kappa_pushforward(model, dual, t2)?;
    let lhs = omega_eval(model, &k1, &k2)?;
    let rhs = omega_eval(dual, &t1.gamma, &t2.gamma)? + omega_eval(model, &t1.sigma, &t2.sigma)?;
    Ok(absf(lhs - rhs).max(m1).max(m2))
}

/// Residuals of `dJ(w̃_σ) = −π♯_{G*}(wˡ)|_{v⁻¹}` and `i_{w̃}ω = J*(wˡ)` (the
/// latter over the chart basis at `σ`).
pub fn j_dirac_residuals<S: Scalar>(model: &MatrixGroupModel<S>, p: &GroupoidPoint<S>, w: &DVector<S>) -> Result<(f64, f64)> {
    let d = model.double();
    let n = model.n();
    let wt = GroupoidTangent::new(model, p.clone(), w.clone(), DVector::zeros(2 * n))?;
    let x = realize_tangent(model, &wt)?.x;
    let vi = model.inv(&p.v);
    let dj = -(&vi * &x * &vi);
    let sharp = pi_gstar_sharp(model, &vi, &model.coadjoint_gstar(&p.v, w)?)?;
    let first = real_to_f64((dj + sharp).camax());
    let mut second = 0.0f64;
    for t in chart_basis(model, p) {
        let xt = realize_tangent(model, &t)?.x;
        let theta = model.maurer(&p.v, &xt, Side::Right)?;
        let pulled = -d.pairing(&d.embed_g(w), &theta);
        second = second.max(absf(omega_eval(model, &wt, &t)? - pulled));
    }
    Ok((first, second))
}

/// `F(g, l) = (g l⁻¹ (ˡg)⁻¹, ˡg, g, l)` where `g l⁻¹ = v·ˡg` is the
/// factorization.
pub fn f_map<S: Scalar>(model: &MatrixGroupModel<S>, g: &Mat<S>, l: &Mat<S>) -> Result<GroupoidPoint<S>> {
    point_from_chart(model, g, l)
}

/// `‖F(l₁, ˡ²g)·F(l₂, g) − F(l₁l₂, g)‖`.
pub fn f_morphism_residual<S: Scalar>(model: &MatrixGroupModel<S>, l1: &Mat<S>, l2: &Mat<S>, g: &Mat<S>) -> Result<f64> {
    let second = f_map(model, g, l2)?;
    let first = f_map(model, target(&second), l1)?;
    Ok(distance(&multiply(model, &first, &second)?, &f_map(model, g, &(l1 * l2))?))
}

/// `‖F(g, h) − Ψ(h, g)‖` for `h ∈ H`.
pub fn f_psi_residual<S: Scalar>(model: &MatrixGroupModel<S>, g: &Mat<S>, h: &Mat<S>) -> Result<f64> {
    Ok(distance(&f_map(model, g, h)?, &psi(model, h, g)?))
}
