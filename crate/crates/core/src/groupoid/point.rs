use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{Mat, MatrixGroupModel, Tag};
use crate::scalar::{real_to_f64, Scalar};
use crate::tol;

/// `σ = (v, g₁, g₂, l)` with `v̄ḡ₁ = ḡ₂ l̄⁻¹`; `s(σ) = g₂`, `t(σ) = g₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupoidPoint<S: Scalar> {
    pub v: Mat<S>,
    pub g1: Mat<S>,
    pub g2: Mat<S>,
    pub l: Mat<S>,
    pub residual: f64,
}

fn max_abs<S: Scalar>(m: &Mat<S>) -> f64 {
    real_to_f64(m.camax())
}

/// `‖v g₁ − g₂ l⁻¹‖_max`.
pub fn constraint_residual<S: Scalar>(model: &MatrixGroupModel<S>, v: &Mat<S>, g1: &Mat<S>, g2: &Mat<S>, l: &Mat<S>) -> f64 {
    max_abs::<S>(&(v * g1 - g2 * model.inv(l)))
}

/// Validates subgroup membership of each component and the constraint.
pub fn make_point<S: Scalar>(
    model: &MatrixGroupModel<S>,
    v: Mat<S>,
    g1: Mat<S>,
    g2: Mat<S>,
    l: Mat<S>,
) -> Result<GroupoidPoint<S>> {
    let membership = model
        .membership(Tag::GStar, &v)
        .max(model.membership(Tag::G, &g1))
        .max(model.membership(Tag::G, &g2))
        .max(model.membership(Tag::L, &l));
    if membership > tol::POINT {
        return Err(Error::Constraint { residual: membership });
    }
    let residual = constraint_residual(model, &v, &g1, &g2, &l);
    if residual > tol::POINT {
        return Err(Error::Constraint { residual });
    }
    Ok(GroupoidPoint { v, g1, g2, l, residual })
}

/// The point with source `g₂` and `L`-component `l`, solving
/// `g₂ l⁻¹ = v g₁` with the factorization oracle.
pub fn point_from_chart<S: Scalar>(model: &MatrixGroupModel<S>, g2: &Mat<S>, l: &Mat<S>) -> Result<GroupoidPoint<S>> {
    let f = model.factorize(&(g2 * model.inv(l)))?;
    make_point(model, f.v, f.g, g2.clone(), l.clone())
}

pub fn unit<S: Scalar>(model: &MatrixGroupModel<S>, g: &Mat<S>) -> Result<GroupoidPoint<S>> {
    let e = Mat::<S>::identity(model.size(), model.size());
    make_point(model, e.clone(), g.clone(), g.clone(), e)
}

pub fn source<S: Scalar>(p: &GroupoidPoint<S>) -> &Mat<S> {
    &p.g2
}

pub fn target<S: Scalar>(p: &GroupoidPoint<S>) -> &Mat<S> {
    &p.g1
}

/// `(v⁻¹, g₂, g₁, l⁻¹)`.
pub fn inverse<S: Scalar>(model: &MatrixGroupModel<S>, p: &GroupoidPoint<S>) -> Result<GroupoidPoint<S>> {
    make_point(model, model.inv(&p.v), p.g2.clone(), p.g1.clone(), model.inv(&p.l))
}

/// `(v₁, g₁, g, l₁)·(v₂, g, g₂, l₂) = (v₂v₁, g₁, g₂, l₁l₂)`.
pub fn multiply<S: Scalar>(
    model: &MatrixGroupModel<S>,
    a: &GroupoidPoint<S>,
    b: &GroupoidPoint<S>,
) -> Result<GroupoidPoint<S>> {
    let mismatch = max_abs::<S>(&(source(a) - target(b)));
    if mismatch > tol::POINT {
        return Err(Error::NotComposable { residual: mismatch });
    }
    make_point(model, &b.v * &a.v, a.g1.clone(), b.g2.clone(), &a.l * &b.l)
}

/// Largest entrywise distance between two points.
pub fn distance<S: Scalar>(a: &GroupoidPoint<S>, b: &GroupoidPoint<S>) -> f64 {
    max_abs::<S>(&(&a.v - &b.v))
        .max(max_abs::<S>(&(&a.g1 - &b.g1)))
        .max(max_abs::<S>(&(&a.g2 - &b.g2)))
        .max(max_abs::<S>(&(&a.l - &b.l)))
}

/// `Ψ_G(h, g) = (e, gh⁻¹, g, h)`, the image of the action groupoid arrow.
pub fn psi<S: Scalar>(model: &MatrixGroupModel<S>, h: &Mat<S>, g: &Mat<S>) -> Result<GroupoidPoint<S>> {
    if model.h().is_none() {
        return Err(Error::Unsupported("Ψ_G without a subgroup H"));
    }
    let e = Mat::<S>::identity(model.size(), model.size());
    make_point(model, e, g * model.inv(h), g.clone(), h.clone())
}

/// Point with random source in `G` and random `l ∈ L`.
pub fn random_point<S: Scalar, R: Rng + ?Sized>(
    model: &MatrixGroupModel<S>,
    rng: &mut R,
    radius: f64,
) -> Result<GroupoidPoint<S>> {
    let g2 = model.random_element(Tag::G, rng, radius)?;
    let l = model.random_element(Tag::L, rng, radius)?;
    point_from_chart(model, &g2, &l)
}

/// Random point whose target is `s(p)`, so that `p·q` is defined.
pub fn random_composable<S: Scalar, R: Rng + ?Sized>(
    model: &MatrixGroupModel<S>,
    p: &GroupoidPoint<S>,
    rng: &mut R,
    radius: f64,
) -> Result<GroupoidPoint<S>> {
    let l = model.random_element(Tag::L, rng, radius)?;
    inverse(model, &point_from_chart(model, source(p), &l)?)
}
