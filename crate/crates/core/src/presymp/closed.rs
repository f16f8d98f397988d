use nalgebra::DVector;

use crate::error::Result;
use crate::group::MatrixGroupModel;
use crate::groupoid::{point_from_chart, GroupoidPoint, GroupoidTangent};
use crate::presymp::omega::{absf, omega_eval, same_base};
use crate::scalar::Scalar;

/// `|Δ(σ)|` with `Δ = 2dω(x̃₁, x̃₂, x̃₃)` assembled from
/// `Ad_{ḡ₁}zᵢ = ûᵢ + ξ̂ᵢ` and `Ad_{v̄⁻¹}wᵢ = v̂ᵢ + η̂ᵢ` as
/// `⟨[v̂₁−û₁, v̂₂+ξ̂₂], û₃+ξ̂₃⟩ + ⟨[η̂₁−ξ̂₁, v̂₂+ξ̂₂], v̂₃+η̂₃⟩ + c.p.`
///
/// The bracket is the negated matrix commutator.
pub fn closedness_delta<S: Scalar>(model: &MatrixGroupModel<S>, xs: [&GroupoidTangent<S>; 3]) -> Result<f64> {
    same_base(xs[0], xs[1])?;
    same_base(xs[0], xs[2])?;
    let d = model.double();
    let p = &xs[0].base;
    let v_inv = model.inv(&p.v);
    let mut hat = Vec::with_capacity(3);
    for x in xs {
        let (u, xi) = d.split(&model.adjoint(&p.g1, &x.z)?);
        let (vh, eta) = d.split(&model.adjoint(&v_inv, &d.embed_g(&x.w))?);
        hat.push((u, xi, vh, eta));
    }
    let bracket = |a: &DVector<S>, b: &DVector<S>| -d.bracket(a, b);
    let mut delta = S::zero();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let (u1, xi1, v1, eta1) = &hat[i];
        let (_, xi2, v2, _) = &hat[j];
        let (u3, xi3, v3, eta3) = &hat[k];
        let mid = d.join(v2, xi2);
        let first = bracket(&d.embed_g(&(v1 - u1)), &mid);
        let second = bracket(&d.embed_gstar(&(eta1 - xi1)), &mid);
        delta += d.pairing(&first, &d.join(u3, xi3)) + d.pairing(&second, &d.join(v3, eta3));
    }
    Ok(absf(delta))
}

fn flow<S: Scalar>(model: &MatrixGroupModel<S>, p: &GroupoidPoint<S>, x: &GroupoidTangent<S>, t: f64) -> Result<GroupoidPoint<S>> {
    let d = model.double();
    let s = S::lit(t);
    let g2 = model.exp(&(d.embed_g(&x.w) * s)) * &p.g2;
    let l = model.exp(&(&x.z * s)) * &p.l;
    point_from_chart(model, &g2, &l)
}

/// Frame bracket `[w̃₁+z̃₁, w̃₂+z̃₂] = ([w₁,w₂] + [z₁,z₂])~` with the negated
/// matrix commutator; mixed brackets vanish.
pub fn frame_bracket<S: Scalar>(
    model: &MatrixGroupModel<S>,
    base: &GroupoidPoint<S>,
    x: &GroupoidTangent<S>,
    y: &GroupoidTangent<S>,
) -> Result<GroupoidTangent<S>> {
    let d = model.double();
    let n = model.n();
    let w = -d.bracket(&d.embed_g(&x.w), &d.embed_g(&y.w)).rows(0, n).into_owned();
    let z = -d.bracket(&x.z, &y.z);
    GroupoidTangent::new(model, base.clone(), w, z)
}

/// `dω(x̃₁, x̃₂, x̃₃)` by the Cartan formula. Derivatives of the frame
/// values `ω(x̃ⱼ, x̃ₖ)` are central differences with one Richardson level
/// along the exact flows `g₂ → exp(tw)g₂`, `l → exp(tz)l`; `(v, g₁)` is
/// re-solved by the factorization oracle at each step.
pub fn closedness_fd<S: Scalar>(model: &MatrixGroupModel<S>, xs: [&GroupoidTangent<S>; 3], h: f64) -> Result<f64> {
    same_base(xs[0], xs[1])?;
    same_base(xs[0], xs[2])?;
    let p = &xs[0].base;
    let value = |q: &GroupoidPoint<S>, j: usize, k: usize| -> Result<S> {
        let a = GroupoidTangent { base: q.clone(), ..xs[j].clone() };
        let b = GroupoidTangent { base: q.clone(), ..xs[k].clone() };
        omega_eval(model, &a, &b)
    };
    let derivative = |i: usize, j: usize, k: usize| -> Result<S> {
        let central = |h: f64| -> Result<S> {
            let plus = value(&flow(model, p, xs[i], h)?, j, k)?;
            let minus = value(&flow(model, p, xs[i], -h)?, j, k)?;
            Ok((plus - minus) * S::lit(0.5 / h))
        };
        Ok(central(h / 2.0)? * S::lit(4.0 / 3.0) - central(h)? * S::lit(1.0 / 3.0))
    };
    let at = |t: &GroupoidTangent<S>, k: usize| omega_eval(model, t, &GroupoidTangent { base: p.clone(), ..xs[k].clone() });
    let b01 = frame_bracket(model, p, xs[0], xs[1])?;
    let b02 = frame_bracket(model, p, xs[0], xs[2])?;
    let b12 = frame_bracket(model, p, xs[1], xs[2])?;
    let d_omega = derivative(0, 1, 2)? - derivative(1, 0, 2)? + derivative(2, 0, 1)? - at(&b01, 2)? + at(&b02, 1)?
        - at(&b12, 0)?;
    Ok(absf(d_omega))
}

/// `closedness_fd` at `h0, h0/2, …` (`levels` steps).
pub fn closedness_fd_convergence<S: Scalar>(
    model: &MatrixGroupModel<S>,
    xs: [&GroupoidTangent<S>; 3],
    h0: f64,
    levels: usize,
) -> Result<Vec<(f64, f64)>> {
    (0..levels)
        .map(|i| {
            let h = h0 / f64::powi(2.0, i as i32);
            Ok((h, closedness_fd(model, xs, h)?))
        })
        .collect()
}

/// True when every halving above `floor` shrinks the residual by `factor`.
pub fn converges(study: &[(f64, f64)], factor: f64, floor: f64) -> bool {
    study.windows(2).all(|w| w[0].1 <= floor || w[1].1 * factor <= w[0].1 || w[1].1 <= floor)
}
