use nalgebra::DVector;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{Mat, MatrixGroupModel, Side, Tag};
use crate::groupoid::point::{multiply, GroupoidPoint};
use crate::scalar::{real_to_f64, Scalar};
use crate::tol;

/// `w̃_σ + z̃_σ` with `w ∈ 𝔤` and `z ∈ 𝔩` (in 𝔡 coordinates).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupoidTangent<S: Scalar> {
    pub base: GroupoidPoint<S>,
    pub w: DVector<S>,
    pub z: DVector<S>,
}

/// Components `(X, Y, W, Z)` at `(v, g₁, g₂, l)`, with `dt = Y`, `ds = W`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizedTangent<S: Scalar> {
    pub x: Mat<S>,
    pub y: Mat<S>,
    pub w: Mat<S>,
    pub z: Mat<S>,
}

impl<S: Scalar> RealizedTangent<S> {
    pub fn dt(&self) -> &Mat<S> {
        &self.y
    }

    pub fn ds(&self) -> &Mat<S> {
        &self.w
    }
}

impl<S: Scalar> GroupoidTangent<S> {
    pub fn new(model: &MatrixGroupModel<S>, base: GroupoidPoint<S>, w: DVector<S>, z: DVector<S>) -> Result<Self> {
        if w.len() != model.n() {
            return Err(Error::DimensionMismatch { expected: model.n(), got: w.len() });
        }
        let r = model.l().algebra.projection_residual(&z);
        if r > tol::MEMBERSHIP {
            return Err(Error::NotInSubspace { residual: r });
        }
        Ok(Self { base, w, z })
    }

    pub fn zero(model: &MatrixGroupModel<S>, base: GroupoidPoint<S>) -> Self {
        let n = model.n();
        Self { base, w: DVector::zeros(n), z: DVector::zeros(2 * n) }
    }
}

/// `a = pr_𝔤*(Ad_{v⁻¹}w − Ad_{g₁}z)`, `b = pr_𝔤(Ad_{v⁻¹}w − Ad_{g₁}z)` and
/// `(X, Y, W, Z) = (v·a, b·g₁, w·g₂, z·l)`.
///
/// The `w`-part gives `(−π♯_{G*}(wʳ), (Ad*_v w)ʳ, wʳ, 0)` and the `z`-part
/// `(−(Ad*_{g₁⁻¹}ξ)ˡ, ρ_𝔡(z), 0, zʳ)`.
pub fn realize_tangent<S: Scalar>(model: &MatrixGroupModel<S>, t: &GroupoidTangent<S>) -> Result<RealizedTangent<S>> {
    let d = model.double();
    let p = &t.base;
    let horizontal = model.adjoint(&model.inv(&p.v), &d.embed_g(&t.w))?;
    let vertical = model.adjoint(&p.g1, &t.z)?;
    let (b, a) = d.split(&(horizontal - vertical));
    Ok(RealizedTangent {
        x: &p.v * model.emb_gstar(&a),
        y: model.emb_g(&b) * &p.g1,
        w: model.emb_g(&t.w) * &p.g2,
        z: model.emb(&t.z) * &p.l,
    })
}

/// Linearized constraint `X g₁ + v Y − W l⁻¹ + g₂ l⁻¹ Z l⁻¹`.
pub fn tangency_residual<S: Scalar>(model: &MatrixGroupModel<S>, p: &GroupoidPoint<S>, r: &RealizedTangent<S>) -> f64 {
    let li = model.inv(&p.l);
    let lin = &r.x * &p.g1 + &p.v * &r.y - &r.w * &li + &p.g2 * &li * &r.z * &li;
    real_to_f64(lin.camax())
}

/// The `w` for which `ds` of a tangent at a point with source `t(σ′)`
/// equals `dt(t′)`: `w = θʳ(dt(t′))`.
pub fn matching_w<S: Scalar>(model: &MatrixGroupModel<S>, t2: &GroupoidTangent<S>) -> Result<DVector<S>> {
    let r = realize_tangent(model, t2)?;
    let theta = model.maurer(&t2.base.g1, r.dt(), Side::Right)?;
    Ok(theta.rows(0, model.n()).into_owned())
}

/// Tangent of the multiplication: `(w, z)·(w′, z′) = (w′, z + Ad_l z′)` at
/// `σσ′`, defined when `ds(t₁) = dt(t₂)`.
pub fn tangent_multiply<S: Scalar>(
    model: &MatrixGroupModel<S>,
    t1: &GroupoidTangent<S>,
    t2: &GroupoidTangent<S>,
) -> Result<GroupoidTangent<S>> {
    let base = multiply(model, &t1.base, &t2.base)?;
    let r1 = realize_tangent(model, t1)?;
    let r2 = realize_tangent(model, t2)?;
    let mismatch = real_to_f64((r1.ds() - r2.dt()).camax());
    if mismatch > tol::POINT {
        return Err(Error::NotComposable { residual: mismatch });
    }
    let z = &t1.z + model.adjoint(&t1.base.l, &t2.z)?;
    GroupoidTangent::new(model, base, t2.w.clone(), z)
}

/// Distance between the realized product tangent and the derivative of the
/// multiplication applied componentwise:
/// `(X′v + v′X, Y, W′, Z l′ + l Z′)`.
pub fn tangent_multiply_residual<S: Scalar>(
    model: &MatrixGroupModel<S>,
    t1: &GroupoidTangent<S>,
    t2: &GroupoidTangent<S>,
) -> Result<f64> {
    let prod = realize_tangent(model, &tangent_multiply(model, t1, t2)?)?;
    let (p1, p2) = (&t1.base, &t2.base);
    let (r1, r2) = (realize_tangent(model, t1)?, realize_tangent(model, t2)?);
    let x = &r2.x * &p1.v + &p2.v * &r1.x;
    let z = &r1.z * &p2.l + &p1.l * &r2.z;
    let worst = [(prod.x - x), (prod.y - r1.y), (prod.w - r2.w), (prod.z - z)]
        .iter()
        .map(|m| real_to_f64(m.camax()))
        .fold(0.0, f64::max);
    Ok(worst)
}

/// The `2n` chart directions at `p`: `w = e_i` first, then a basis of 𝔩.
pub fn chart_basis<S: Scalar>(model: &MatrixGroupModel<S>, p: &GroupoidPoint<S>) -> Vec<GroupoidTangent<S>> {
    let n = model.n();
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut w = DVector::zeros(n);
        w[i] = S::one();
        out.push(GroupoidTangent { base: p.clone(), w, z: DVector::zeros(2 * n) });
    }
    for z in model.l().algebra.basis_vectors() {
        out.push(GroupoidTangent { base: p.clone(), w: DVector::zeros(n), z });
    }
    out
}

pub fn random_tangent<S: Scalar, R: Rng + ?Sized>(
    model: &MatrixGroupModel<S>,
    p: &GroupoidPoint<S>,
    rng: &mut R,
    radius: f64,
) -> Result<GroupoidTangent<S>> {
    let n = model.n();
    let w = model.random_algebra_element(Tag::G, rng, radius)?.rows(0, n).into_owned();
    let z = model.random_algebra_element(Tag::L, rng, radius)?;
    GroupoidTangent::new(model, p.clone(), w, z)
}
