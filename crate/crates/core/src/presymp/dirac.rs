use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Mat, MatrixGroupModel, Side};
use crate::groupoid::{chart_basis, multiply, realize_tangent, source, unit, GroupoidPoint, GroupoidTangent};
use crate::linalg;
use crate::poisson::{dressing, pi_gstar_at};
use crate::presymp::omega::{absf, omega_eval, TwoFormValue};
use crate::scalar::{real_to_f64, Scalar};
use crate::tol;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelReport {
    pub omega_rank: usize,
    pub kernel_dim: usize,
    /// `2·dim(𝔩∩𝔤)`.
    pub expected_kernel_dim: usize,
    /// `dim(Ker ω ∩ Ker ds ∩ Ker dt)`.
    pub triple_intersection_dim: usize,
    /// `σ_max/σ_min` of the chart matrix, when it is nondegenerate.
    pub condition_number: Option<f64>,
    pub asymmetry: f64,
}

impl KernelReport {
    pub fn pass(&self) -> bool {
        self.kernel_dim == self.expected_kernel_dim && self.triple_intersection_dim == 0
    }
}

/// Right-trivialized `dt` on the chart at a point: `θʳ(Y) = pr_𝔤(Ad_{v̄⁻¹}w − Ad_{ḡ₁}z)`.
pub fn dt_matrix<S: Scalar>(model: &MatrixGroupModel<S>, p: &GroupoidPoint<S>) -> Result<DMatrix<S>> {
    let n = model.n();
    let basis = chart_basis(model, p);
    let mut m = DMatrix::zeros(n, basis.len());
    for (j, t) in basis.iter().enumerate() {
        let y = realize_tangent(model, t)?.y;
        let theta = model.maurer(&p.g1, &y, Side::Right)?;
        m.set_column(j, &theta.rows(0, n));
    }
    Ok(m)
}

/// Kernel data of ω at `1_g` in the `(w, z)` chart. `ds` reads off `w`.
pub fn kernel_condition<S: Scalar>(model: &MatrixGroupModel<S>, g: &Mat<S>) -> Result<KernelReport> {
    let n = model.n();
    let p = unit(model, g)?;
    let omega = TwoFormValue::at(model, &p)?;
    let dt = dt_matrix(model, &p)?;
    let mut stacked = DMatrix::zeros(4 * n, 2 * n);
    stacked.view_mut((0, 0), (2 * n, 2 * n)).copy_from(&omega.matrix);
    for i in 0..n {
        stacked[(2 * n + i, i)] = S::one();
    }
    stacked.view_mut((3 * n, 0), (n, 2 * n)).copy_from(&dt);
    let omega_rank = linalg::rank(&omega.matrix, tol::RANK);
    let sv = linalg::singular_values(&omega.matrix);
    let condition_number = (omega_rank == 2 * n).then(|| {
        let max = sv.iter().cloned().fold(0.0, f64::max);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        max / min
    });
    let meet = model.l().algebra.intersection(&model.double().g_part());
    Ok(KernelReport {
        omega_rank,
        kernel_dim: 2 * n - omega_rank,
        expected_kernel_dim: 2 * meet.dim(),
        triple_intersection_dim: 2 * n - linalg::rank(&stacked, tol::RANK),
        condition_number,
        asymmetry: omega.asymmetry,
    })
}

/// `μ(u+ξ)|_g(Y) = −ξ(θˡ_g(Y))`.
pub fn mu_eval<S: Scalar>(model: &MatrixGroupModel<S>, z: &DVector<S>, g: &Mat<S>, y: &Mat<S>) -> Result<S> {
    let d = model.double();
    let (_, xi) = d.split(z);
    let theta = model.maurer(g, y, Side::Left)?;
    Ok(-d.pairing(&d.embed_gstar(&xi), &theta))
}

/// `max_t |ω(z̃, t) − μ(z)|_{g₁}(dt t)|` over the chart basis at `σ`.
pub fn target_dirac_residual<S: Scalar>(model: &MatrixGroupModel<S>, p: &GroupoidPoint<S>, z: &DVector<S>) -> Result<f64> {
    let zt = GroupoidTangent::new(model, p.clone(), DVector::zeros(model.n()), z.clone())?;
    let mut worst = 0.0f64;
    for t in chart_basis(model, p) {
        let lhs = omega_eval(model, &zt, &t)?;
        let rhs = mu_eval(model, z, &p.g1, realize_tangent(model, &t)?.dt())?;
        worst = worst.max(absf(lhs - rhs));
    }
    Ok(worst)
}

/// `c(σ)` on right-invariant frames at `s(σ)`: `c(σ)(w₁, w₂) = −πG*|_v(w₁ʳ, w₂ʳ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleValue<S: Scalar> {
    pub base: GroupoidPoint<S>,
    pub matrix: DMatrix<S>,
}

impl<S: Scalar> CocycleValue<S> {
    pub fn at(model: &MatrixGroupModel<S>, p: &GroupoidPoint<S>) -> Result<Self> {
        Ok(Self { base: p.clone(), matrix: cocycle_matrix(model, &p.v)? })
    }

    pub fn eval(&self, w1: &DVector<S>, w2: &DVector<S>) -> S {
        (w1.transpose() * &self.matrix * w2)[(0, 0)]
    }
}

/// The cocycle depends on `σ` only through `v`.
pub fn cocycle_matrix<S: Scalar>(model: &MatrixGroupModel<S>, v: &Mat<S>) -> Result<DMatrix<S>> {
    Ok(-pi_gstar_at(model, v)?.coeffs)
}

/// Matrix of `w ↦ Ad*_v w = pr_𝔤(Ad_{v̄⁻¹}w)` on 𝔤.
pub fn coadjoint_gstar_matrix<S: Scalar>(model: &MatrixGroupModel<S>, v: &Mat<S>) -> Result<DMatrix<S>> {
    let n = model.n();
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = DVector::zeros(n);
        e[j] = S::one();
        m.set_column(j, &model.coadjoint_gstar(v, &e)?);
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CocycleReport {
    /// `‖c(1_{s(σ′)})‖`.
    pub unit: f64,
    /// `‖c(σσ′) − (σ′)*c(σ) − c(σ′)‖`.
    pub law: f64,
}

impl CocycleReport {
    pub fn worst(&self) -> f64 {
        self.unit.max(self.law)
    }
}

/// Cocycle law `c(σσ′)(w₁,w₂) = c(σ)(Ad*_{v′}w₁, Ad*_{v′}w₂) + c(σ′)(w₁,w₂)`.
pub fn cocycle_checks<S: Scalar>(
    model: &MatrixGroupModel<S>,
    a: &GroupoidPoint<S>,
    b: &GroupoidPoint<S>,
) -> Result<CocycleReport> {
    let ab = multiply(model, a, b)?;
    let m = coadjoint_gstar_matrix(model, &b.v)?;
    let expected = m.transpose() * cocycle_matrix(model, &a.v)? * &m + cocycle_matrix(model, &b.v)?;
    let law = linalg::mat_norm_inf(&(cocycle_matrix(model, &ab.v)? - expected));
    let u = unit(model, source(b))?;
    let unit = linalg::mat_norm_inf(&cocycle_matrix(model, &u.v)?);
    Ok(CocycleReport { unit, law })
}

/// `c′(z)|_g` by central differences along `v_ε = exp(ε θˡ(X))`, where `X` is
/// the `G*`-component of `z̃` at `1_g`, compared with the closed form
/// `c′(u+ξ)(w₁, w₂) = ξ([Ad_{g⁻¹}w₁, Ad_{g⁻¹}w₂])` (matrix commutator).
pub fn cocycle_infinitesimal_residual<S: Scalar>(
    model: &MatrixGroupModel<S>,
    g: &Mat<S>,
    z: &DVector<S>,
    h: f64,
) -> Result<f64> {
    let d = model.double();
    let n = model.n();
    let p = unit(model, g)?;
    let t = GroupoidTangent::new(model, p, DVector::zeros(n), z.clone())?;
    let x = realize_tangent(model, &t)?.x;
    let a = model.maurer(&Mat::<S>::identity(model.size(), model.size()), &x, Side::Left)?;
    let c = |eps: f64| cocycle_matrix(model, &model.exp(&(&a * S::lit(eps))));
    let central = |h: f64| -> Result<DMatrix<S>> { Ok((c(h)? - c(-h)?) * S::lit(0.5 / h)) };
    let fd = central(h / 2.0)? * S::lit(4.0 / 3.0) - central(h)? * S::lit(1.0 / 3.0);
    let (_, xi) = d.split(z);
    let xi = d.embed_gstar(&xi);
    let gi = model.inv(g);
    let images = (0..n)
        .map(|j| {
            let mut e = DVector::zeros(n);
            e[j] = S::one();
            model.adjoint(&gi, &d.embed_g(&e))
        })
        .collect::<Result<Vec<_>>>()?;
    let closed = DMatrix::from_fn(n, n, |i, j| d.pairing(&xi, &d.bracket(&images[i], &images[j])));
    Ok(linalg::mat_norm_inf(&(fd - closed)))
}

/// Residuals of `ρ(Ad_l z)|_{g₁} = σ·ρ(z)|_{g₂}` and
/// `σ*μ(Ad_l z)|_{g₁} = (μ(z) + i_{ρ(z)}c(σ))|_{g₂}`, the latter tested on
/// the right-invariant frame at `g₂`.
pub fn conds_residual<S: Scalar>(model: &MatrixGroupModel<S>, p: &GroupoidPoint<S>, z: &DVector<S>) -> Result<(f64, f64)> {
    let d = model.double();
    let n = model.n();
    let r = model.l().algebra.projection_residual(z);
    if r > tol::MEMBERSHIP {
        return Err(Error::NotInSubspace { residual: r });
    }
    let lz = model.adjoint(&p.l, z)?;
    let rho_z = dressing(model, z, &p.g2)?;
    let w0 = model.maurer(&p.g2, &rho_z, Side::Right)?.rows(0, n).into_owned();
    let pushed = model.emb_g(&model.coadjoint_gstar(&p.v, &w0)?) * &p.g1;
    let first = real_to_f64((dressing(model, &lz, &p.g1)? - pushed).camax());

    let c = CocycleValue::at(model, p)?;
    let (_, xi) = d.split(z);
    let mut second = 0.0f64;
    for j in 0..n {
        let mut w = DVector::zeros(n);
        w[j] = S::one();
        let moved = model.emb_g(&model.coadjoint_gstar(&p.v, &w)?) * &p.g1;
        let lhs = mu_eval(model, &lz, &p.g1, &moved)?;
        let ad = model.adjoint(&model.inv(&p.g2), &d.embed_g(&w))?;
        let mu = -d.pairing(&d.embed_gstar(&xi), &ad);
        second = second.max(absf(lhs - mu - c.eval(&w0, &w)));
    }
    Ok((first, second))
}
