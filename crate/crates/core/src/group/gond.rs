use nalgebra::DVector;

use crate::error::Result;
use crate::group::model::{Mat, MatrixGroupModel};
use crate::linalg;
use crate::poisson::pi_g_at;
use crate::scalar::Scalar;

/// Residual of `Ad_ḡ(u+ξ) = Ad_g u + i_α(r_{g⁻¹}πG|_g) + α` with
/// `α = ξ ∘ Ad_{g⁻¹}`, for `g ∈ G`.
///
/// The left side is the honest matrix conjugation on 𝔡; the right side is
/// assembled from the 𝔤-block of `Ad_g`, the coadjoint action and `πG` in
/// the right frame.
pub fn verify_gond1<S: Scalar>(
    model: &MatrixGroupModel<S>,
    g: &Mat<S>,
    u: &DVector<S>,
    xi: &DVector<S>,
) -> Result<f64> {
    let d = model.double();
    let lhs = model.adjoint(g, &d.join(u, xi))?;
    let ad_u = model.adjoint(g, &d.embed_g(u))?;
    let alpha = model.coadjoint_g(&model.inv(g), xi)?;
    let pi_right = pi_g_at(model, g)?.to_right(model)?;
    let rhs = ad_u + d.join(&pi_right.contract(&alpha), &alpha);
    Ok(linalg::vec_norm_inf(&(lhs - rhs)))
}
