use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::group::{MatrixGroupModel, Side};
use crate::groupoid::{chart_basis, distance, realize_tangent, tangent_multiply, GroupoidPoint, GroupoidTangent};
use crate::linalg;
use crate::poisson::{pi_g_at, pi_gstar_at};
use crate::scalar::{real_to_f64, Scalar};
use crate::tol;

pub(crate) fn absf<S: Scalar>(x: S) -> f64 {
    real_to_f64(x.modulus())
}

/// `⟨ξ, u⟩` for `ξ ∈ 𝔤*`, `u ∈ 𝔤` in block coordinates.
pub(crate) fn pair_gstar_g<S: Scalar>(model: &MatrixGroupModel<S>, xi: &DVector<S>, u: &DVector<S>) -> S {
    let d = model.double();
    d.pairing(&d.embed_gstar(xi), &d.embed_g(u))
}

pub(crate) fn same_base<S: Scalar>(t1: &GroupoidTangent<S>, t2: &GroupoidTangent<S>) -> Result<()> {
    let r = distance(&t1.base, &t2.base);
    if r > tol::POINT {
        return Err(Error::Invalid(format!("tangents at different points ({r:.2e})")));
    }
    Ok(())
}

/// ω on the `(w, z)` chart:
/// `⟨ξ₁,u₂⟩ − πG|_{g₁}(ξ₁ˡ,ξ₂ˡ) − ⟨Ad*_{g₁⁻¹}ξ₁, Ad*_v w₂⟩
///  + ⟨Ad*_{g₁⁻¹}ξ₂, Ad*_v w₁⟩ − πG*|_v(w₁ʳ,w₂ʳ)`.
pub fn omega_eval<S: Scalar>(model: &MatrixGroupModel<S>, t1: &GroupoidTangent<S>, t2: &GroupoidTangent<S>) -> Result<S> {
    same_base(t1, t2)?;
    let d = model.double();
    let p = &t1.base;
    let (_, xi1) = d.split(&t1.z);
    let (u2, xi2) = d.split(&t2.z);
    let g1_inv = model.inv(&p.g1);
    let a1 = model.coadjoint_g(&g1_inv, &xi1)?;
    let a2 = model.coadjoint_g(&g1_inv, &xi2)?;
    let b1 = model.coadjoint_gstar(&p.v, &t1.w)?;
    let b2 = model.coadjoint_gstar(&p.v, &t2.w)?;
    let pg = pi_g_at(model, &p.g1)?;
    let pgs = pi_gstar_at(model, &p.v)?;
    Ok(pair_gstar_g(model, &xi1, &u2) - pg.eval(&xi1, &xi2) - pair_gstar_g(model, &a1, &b2)
        + pair_gstar_g(model, &a2, &b1)
        - pgs.eval(&t1.w, &t2.w))
}

struct MaurerParts<S: Scalar> {
    g1_left: DVector<S>,
    l_right: DVector<S>,
    gstar_right: DVector<S>,
    g2_right: DVector<S>,
}

fn maurer_parts<S: Scalar>(model: &MatrixGroupModel<S>, t: &GroupoidTangent<S>) -> Result<MaurerParts<S>> {
    let r = realize_tangent(model, t)?;
    let p = &t.base;
    Ok(MaurerParts {
        g1_left: model.maurer(&p.g1, &r.y, Side::Left)?,
        l_right: model.maurer(&p.l, &r.z, Side::Right)?,
        gstar_right: model.maurer(&p.v, &r.x, Side::Right)?,
        g2_right: model.maurer(&p.g2, &r.w, Side::Right)?,
    })
}

/// `½⟨θˡ_{G,1} ∧ θʳ_L⟩ + ½⟨θʳ_{G*} ∧ θʳ_{G,2}⟩` on realized tangents, with
/// `⟨α∧β⟩(X,Y) = ⟨αX, βY⟩ − ⟨αY, βX⟩`.
pub fn omega_severa_eval<S: Scalar>(
    model: &MatrixGroupModel<S>,
    t1: &GroupoidTangent<S>,
    t2: &GroupoidTangent<S>,
) -> Result<S> {
    same_base(t1, t2)?;
    let d = model.double();
    let m1 = maurer_parts(model, t1)?;
    let m2 = maurer_parts(model, t2)?;
    let wedge = |a1: &DVector<S>, b1: &DVector<S>, a2: &DVector<S>, b2: &DVector<S>| {
        d.pairing(a1, b2) - d.pairing(a2, b1)
    };
    let half = S::lit(0.5);
    Ok((wedge(&m1.g1_left, &m1.l_right, &m2.g1_left, &m2.l_right)
        + wedge(&m1.gstar_right, &m1.g2_right, &m2.gstar_right, &m2.g2_right))
        * half)
}

/// ω at a point as a matrix on [`chart_basis`], antisymmetrized.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoFormValue<S: Scalar> {
    pub base: GroupoidPoint<S>,
    pub matrix: DMatrix<S>,
    /// `max |Ω + Ωᵀ|` before antisymmetrization.
    pub asymmetry: f64,
}

impl<S: Scalar> TwoFormValue<S> {
    pub fn at(model: &MatrixGroupModel<S>, base: &GroupoidPoint<S>) -> Result<Self> {
        let basis = chart_basis(model, base);
        let k = basis.len();
        let mut raw = DMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                raw[(i, j)] = omega_eval(model, &basis[i], &basis[j])?;
            }
        }
        let asymmetry = linalg::mat_norm_inf(&(&raw + raw.transpose()));
        let matrix = (&raw - raw.transpose()) * S::lit(0.5);
        Ok(Self { base: base.clone(), matrix, asymmetry })
    }

    /// Chart coordinates: `w` followed by the coefficients of `z` in the 𝔩 basis.
    pub fn coordinates(model: &MatrixGroupModel<S>, t: &GroupoidTangent<S>) -> DVector<S> {
        let n = model.n();
        let c = model.l().algebra.coefficients(&t.z);
        DVector::from_fn(2 * n, |i, _| if i < n { t.w[i] } else { c[i - n] })
    }

    pub fn eval(&self, model: &MatrixGroupModel<S>, t1: &GroupoidTangent<S>, t2: &GroupoidTangent<S>) -> S {
        let (a, b) = (Self::coordinates(model, t1), Self::coordinates(model, t2));
        (a.transpose() * &self.matrix * b)[(0, 0)]
    }
}

/// `|ω_{σσ′}(t₁•t₁′, t₂•t₂′) − ω_σ(t₁,t₂) − ω_{σ′}(t₁′,t₂′)|`.
pub fn multiplicativity_residual_omega<S: Scalar>(
    model: &MatrixGroupModel<S>,
    t1: &GroupoidTangent<S>,
    t2: &GroupoidTangent<S>,
    t1p: &GroupoidTangent<S>,
    t2p: &GroupoidTangent<S>,
) -> Result<f64> {
    let p1 = tangent_multiply(model, t1, t1p)?;
    let p2 = tangent_multiply(model, t2, t2p)?;
    let lhs = omega_eval(model, &p1, &p2)?;
    Ok(absf(lhs - omega_eval(model, t1, t2)? - omega_eval(model, t1p, t2p)?))
}
