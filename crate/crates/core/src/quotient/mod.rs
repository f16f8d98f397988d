//! The `H×H` action on `𝒢(L)` and residual checks for the quotient
//! symplectic groupoid over `G/H`. The quotient itself is never built: every
//! statement is tested on representatives, lifts and transported tangents.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::group::{Mat, MatrixGroupModel, Side, Subgroup, Tag};
use crate::groupoid::{
    chart_basis, distance, make_point, multiply, psi, random_point, random_tangent, realize_tangent, target,
    GroupoidPoint, GroupoidTangent,
};
use crate::linalg;
use crate::poisson::pushforward_pi_quotient;
use crate::presymp::{omega_eval, TwoFormValue};
use crate::scalar::{real_to_f64, Scalar};
use crate::tol;

fn absf<S: Scalar>(x: S) -> f64 {
    real_to_f64(x.modulus())
}

/// A model together with its subgroup `H ⊂ G ∩ L`.
#[derive(Clone, Copy, Debug)]
pub struct HHActionContext<'a, S: Scalar> {
    pub model: &'a MatrixGroupModel<S>,
    pub h: &'a Subgroup<S>,
}

impl<'a, S: Scalar> HHActionContext<'a, S> {
    pub fn new(model: &'a MatrixGroupModel<S>) -> Result<Self> {
        let h = model.h().ok_or(Error::Unsupported("H×H action without a subgroup H"))?;
        Ok(Self { model, h })
    }

    /// 𝔥 basis in 𝔤 coordinates.
    pub fn h_basis(&self) -> Vec<DVector<S>> {
        let n = self.model.n();
        self.h.algebra.basis_vectors().iter().map(|x| x.rows(0, n).into_owned()).collect()
    }
}

/// `(h₁, h₂)·(v, g₁, g₂, l) = (v, g₁h₁⁻¹, g₂h₂⁻¹, h₁ l h₂⁻¹)`.
pub fn hh_act<S: Scalar>(ctx: &HHActionContext<S>, h1: &Mat<S>, h2: &Mat<S>, p: &GroupoidPoint<S>) -> Result<GroupoidPoint<S>> {
    let m = ctx.model;
    make_point(m, p.v.clone(), &p.g1 * m.inv(h1), &p.g2 * m.inv(h2), h1 * &p.l * m.inv(h2))
}

/// Pushforward of a chart tangent: `w ↦ w`, `z ↦ Ad_{h₁}z`.
pub fn hh_push<S: Scalar>(
    ctx: &HHActionContext<S>,
    h1: &Mat<S>,
    h2: &Mat<S>,
    t: &GroupoidTangent<S>,
) -> Result<GroupoidTangent<S>> {
    let base = hh_act(ctx, h1, h2, &t.base)?;
    GroupoidTangent::new(ctx.model, base, t.w.clone(), ctx.model.adjoint(h1, &t.z)?)
}

/// Distance between the realized pushforward `(X, Y h₁⁻¹, W h₂⁻¹, h₁ Z h₂⁻¹)`
/// and the realization of [`hh_push`].
pub fn hh_push_mismatch<S: Scalar>(
    ctx: &HHActionContext<S>,
    h1: &Mat<S>,
    h2: &Mat<S>,
    t: &GroupoidTangent<S>,
) -> Result<f64> {
    let m = ctx.model;
    let r = realize_tangent(m, t)?;
    let q = realize_tangent(m, &hh_push(ctx, h1, h2, t)?)?;
    let (h1i, h2i) = (m.inv(h1), m.inv(h2));
    Ok([q.x - r.x, q.y - r.y * &h1i, q.w - r.w * &h2i, q.z - h1 * r.z * &h2i]
        .iter()
        .map(|x| real_to_f64(x.camax()))
        .fold(0.0, f64::max))
}

/// Optional constant perturbation `ε (e⁰_w ∧ eʲ_z)` of ω in the chart, with
/// `j` the last 𝔩 coordinate. Used to show the invariance check can fail.
fn omega_maybe_faulted<S: Scalar>(
    model: &MatrixGroupModel<S>,
    t1: &GroupoidTangent<S>,
    t2: &GroupoidTangent<S>,
    fault: Option<f64>,
) -> Result<S> {
    let value = omega_eval(model, t1, t2)?;
    Ok(match fault {
        None => value,
        Some(eps) => {
            let c1 = TwoFormValue::coordinates(model, t1);
            let c2 = TwoFormValue::coordinates(model, t2);
            let j = c1.len() - 1;
            value + (t1.w[0] * c2[j] - t2.w[0] * c1[j]) * S::lit(eps)
        }
    })
}

fn invariance_with<S: Scalar>(
    ctx: &HHActionContext<S>,
    h1: &Mat<S>,
    h2: &Mat<S>,
    t1: &GroupoidTangent<S>,
    t2: &GroupoidTangent<S>,
    fault: Option<f64>,
) -> Result<f64> {
    let m = ctx.model;
    let (p1, p2) = (hh_push(ctx, h1, h2, t1)?, hh_push(ctx, h1, h2, t2)?);
    Ok(absf(omega_maybe_faulted(m, &p1, &p2, fault)? - omega_maybe_faulted(m, t1, t2, fault)?))
}

/// `|ω_{Φ_h(σ)}(dΦ_h t₁, dΦ_h t₂) − ω_σ(t₁, t₂)|`.
pub fn invariance_residual<S: Scalar>(
    ctx: &HHActionContext<S>,
    h1: &Mat<S>,
    h2: &Mat<S>,
    t1: &GroupoidTangent<S>,
    t2: &GroupoidTangent<S>,
) -> Result<f64> {
    invariance_with(ctx, h1, h2, t1, t2, None)
}

/// Infinitesimal generators of the action at `σ`: for `(u, v) ∈ 𝔥×𝔥`,
/// `w = −Ad_{g₂}v` and `z = u − Ad_l v`. The `u`-directions come first.
pub fn orbit_directions<S: Scalar>(ctx: &HHActionContext<S>, p: &GroupoidPoint<S>) -> Result<Vec<GroupoidTangent<S>>> {
    let m = ctx.model;
    let d = m.double();
    let n = m.n();
    let mut out = Vec::new();
    for u in ctx.h_basis() {
        out.push(GroupoidTangent::new(m, p.clone(), DVector::zeros(n), d.embed_g(&u))?);
    }
    for v in ctx.h_basis() {
        let ev = d.embed_g(&v);
        let w = -m.adjoint(&p.g2, &ev)?.rows(0, n).into_owned();
        let z = -m.adjoint(&p.l, &ev)?;
        out.push(GroupoidTangent::new(m, p.clone(), w, z)?);
    }
    Ok(out)
}

/// Orbit directions as a subspace of chart coordinates.
pub fn orbit_subspace<S: Scalar>(ctx: &HHActionContext<S>, p: &GroupoidPoint<S>) -> Result<Subspace<S>> {
    let vectors: Vec<DVector<S>> =
        orbit_directions(ctx, p)?.iter().map(|t| TwoFormValue::coordinates(ctx.model, t)).collect();
    Ok(Subspace::span(2 * ctx.model.n(), &vectors))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KernelMatch {
    pub orbit_dim: usize,
    pub kernel_dim: usize,
    /// Two-sided containment distance between the two subspaces.
    pub distance: f64,
}

impl KernelMatch {
    pub fn pass(&self, tol: f64) -> bool {
        self.orbit_dim == self.kernel_dim && self.distance <= tol
    }
}

/// Compares the orbit directions with the numerical kernel of ω at `σ`.
pub fn orbit_kernel_match<S: Scalar>(ctx: &HHActionContext<S>, p: &GroupoidPoint<S>) -> Result<KernelMatch> {
    let orbit = orbit_subspace(ctx, p)?;
    let omega = TwoFormValue::at(ctx.model, p)?;
    let null: Vec<DVector<S>> =
        linalg::null_space(&omega.matrix, tol::RANK).column_iter().map(|c| c.into_owned()).collect();
    let kernel = Subspace::span(omega.matrix.nrows(), &null);
    Ok(KernelMatch { orbit_dim: orbit.dim(), kernel_dim: kernel.dim(), distance: orbit.distance(&kernel) })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuotientFormReport {
    pub value: f64,
    /// `|ω(t₁ + o₁, t₂ + o₂) − ω(t₁, t₂)|` for orbit directions `oᵢ`.
    pub lift_discrepancy: f64,
    /// `|ω_{Φ_h σ}(dΦ_h t₁, dΦ_h t₂) − ω_σ(t₁, t₂)|`.
    pub representative_discrepancy: f64,
    /// Rank of ω at `σ`, which should be `2·dim(G/H)`.
    pub rank: usize,
}

/// `ω̄([t₁], [t₂])` at `[σ]` with its well-definedness certificate. The
/// shifts are coefficient vectors over [`orbit_directions`].
pub fn quotient_form_eval<S: Scalar>(
    ctx: &HHActionContext<S>,
    t1: &GroupoidTangent<S>,
    t2: &GroupoidTangent<S>,
    shifts: (&DVector<S>, &DVector<S>),
    h: (&Mat<S>, &Mat<S>),
) -> Result<QuotientFormReport> {
    let m = ctx.model;
    let value = omega_eval(m, t1, t2)?;
    let orbit = orbit_directions(ctx, &t1.base)?;
    let shifted = |t: &GroupoidTangent<S>, c: &DVector<S>| -> Result<GroupoidTangent<S>> {
        let mut out = t.clone();
        if c.len() != orbit.len() {
            return Err(Error::DimensionMismatch { expected: orbit.len(), got: c.len() });
        }
        for (o, k) in orbit.iter().zip(c.iter()) {
            out.w += &o.w * *k;
            out.z += &o.z * *k;
        }
        Ok(out)
    };
    let lifted = omega_eval(m, &shifted(t1, shifts.0)?, &shifted(t2, shifts.1)?)?;
    let representative_discrepancy = invariance_residual(ctx, h.0, h.1, t1, t2)?;
    let omega = TwoFormValue::at(m, &t1.base)?;
    Ok(QuotientFormReport {
        value: absf(value),
        lift_discrepancy: absf(lifted - value),
        representative_discrepancy,
        rank: linalg::rank(&omega.matrix, tol::RANK),
    })
}

/// Left-trivialized `dt` on the chart: `θˡ_{g₁}(Y)` in 𝔤 coordinates.
fn dt_left<S: Scalar>(model: &MatrixGroupModel<S>, p: &GroupoidPoint<S>) -> Result<DMatrix<S>> {
    let n = model.n();
    let basis = chart_basis(model, p);
    let mut m = DMatrix::zeros(n, basis.len());
    for (j, t) in basis.iter().enumerate() {
        let y = realize_tangent(model, t)?.y;
        m.set_column(j, &model.maurer(&p.g1, &y, Side::Left)?.rows(0, n));
    }
    Ok(m)
}

/// `(ω̄⁻¹)(t̄*β₁, t̄*β₂)` at `[σ]`, with `π(α₁, α₂) = α₁ᵀ Ω_C⁻¹ α₂` on a
/// complement `C` of `Ker ω` (the convention `α = i_{π♯α} ω`), against
/// [`pushforward_pi_quotient`] at `t(σ)`. `βᵢ ∈ Ann(𝔥)` act on
/// left-trivialized tangents.
pub fn tbar_poisson_residual<S: Scalar>(
    ctx: &HHActionContext<S>,
    p: &GroupoidPoint<S>,
    beta1: &DVector<S>,
    beta2: &DVector<S>,
) -> Result<(S, f64)> {
    let m = ctx.model;
    let d = m.double();
    let omega = TwoFormValue::at(m, p)?;
    let c = linalg::column_space(&omega.matrix, tol::RANK);
    let reduced = c.transpose() * &omega.matrix * &c;
    let inv = reduced
        .clone()
        .try_inverse()
        .ok_or(Error::RankDeficient { rank: linalg::rank(&reduced, tol::RANK), expected: c.ncols() })?;
    let dt = dt_left(m, p)?;
    let covector = |beta: &DVector<S>| -> DVector<S> {
        let b = d.embed_gstar(beta);
        let pulled = DVector::from_fn(dt.ncols(), |j, _| d.pairing(&b, &d.embed_g(&dt.column(j).into_owned())));
        c.transpose() * pulled
    };
    let (a1, a2) = (covector(beta1), covector(beta2));
    let lifted = (a1.transpose() * inv * a2)[(0, 0)];
    let n = m.n();
    let h_g = Subspace::span(n, &ctx.h_basis());
    let direct = pushforward_pi_quotient(m, &m.l().algebra, &h_g, target(p), beta1, beta2)?;
    Ok((lifted, absf(lifted - direct)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    /// `Ψ_G` is defined (the model carries `H`).
    pub psi_exists: bool,
    /// Worst `‖Ψ(h₁, gh₂⁻¹)Ψ(h₂, g) − Ψ(h₁h₂, g)‖`.
    pub psi_morphism: f64,
    /// Worst invariance residual of ω.
    pub invariance: f64,
    pub samples: usize,
}

impl AdmissibilityReport {
    pub fn pass(&self) -> bool {
        self.psi_exists && self.psi_morphism <= tol::ALGEBRAIC && self.invariance <= tol::ALGEBRAIC
    }
}

/// Aggregates `Ψ_G` and `H×H`-invariance of ω over random samples. `fault`
/// perturbs ω by a constant chart entry of that size.
pub fn admissibility_report<S: Scalar, R: Rng + ?Sized>(
    model: &MatrixGroupModel<S>,
    rng: &mut R,
    samples: usize,
    fault: Option<f64>,
) -> Result<AdmissibilityReport> {
    let Ok(ctx) = HHActionContext::new(model) else {
        return Ok(AdmissibilityReport {
            psi_exists: false,
            psi_morphism: f64::INFINITY,
            invariance: f64::INFINITY,
            samples: 0,
        });
    };
    let mut psi_morphism = 0.0f64;
    let mut invariance = 0.0f64;
    for _ in 0..samples {
        let g = model.random_element(Tag::G, rng, 0.8)?;
        let h1 = model.random_element(Tag::H, rng, 0.8)?;
        let h2 = model.random_element(Tag::H, rng, 0.8)?;
        let second = psi(model, &h2, &g)?;
        let first = psi(model, &h1, target(&second))?;
        let both = psi(model, &(&h1 * &h2), &g)?;
        psi_morphism = psi_morphism.max(distance(&multiply(model, &first, &second)?, &both));

        let p = random_point(model, rng, 0.8)?;
        let t1 = random_tangent(model, &p, rng, 1.0)?;
        let t2 = random_tangent(model, &p, rng, 1.0)?;
        invariance = invariance.max(invariance_with(&ctx, &h1, &h2, &t1, &t2, fault)?);
    }
    Ok(AdmissibilityReport { psi_exists: true, psi_morphism, invariance, samples })
}
