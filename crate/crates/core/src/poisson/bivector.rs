use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Mat, MatrixGroupModel, Tag};
use crate::linalg;
use crate::scalar::Scalar;

/// Left frame: covectors `ξˡ` (`ξˡ(X) = ξ(x⁻¹X)`). Right frame: `ξʳ(X) = ξ(Xx⁻¹)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    Left,
    Right,
}

/// `coeffs[a][b] = π(α_a, α_b)` for the frame covectors `α_a` at `base`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivectorValue<S: Scalar> {
    pub tag: Tag,
    pub base: Mat<S>,
    pub frame: Frame,
    pub coeffs: DMatrix<S>,
    /// `max |c + cᵀ|` of the raw coefficients before antisymmetrization.
    pub asymmetry: f64,
}

/// `Ad_x` restricted to the Lie algebra of the group named by `tag`.
pub(crate) fn adjoint_block<S: Scalar>(model: &MatrixGroupModel<S>, tag: Tag, x: &Mat<S>) -> Result<DMatrix<S>> {
    let n = model.n();
    let a = model.adjoint_matrix(x)?;
    Ok(match tag {
        Tag::G => a.view((0, 0), (n, n)).into_owned(),
        Tag::GStar => a.view((n, n), (n, n)).into_owned(),
        Tag::D => a,
        Tag::L | Tag::H => return Err(Error::Unsupported("bivectors on L or H")),
    })
}

impl<S: Scalar> BivectorValue<S> {
    fn new(tag: Tag, base: &Mat<S>, frame: Frame, raw: DMatrix<S>) -> Self {
        let asymmetry = linalg::mat_norm_inf(&(&raw + raw.transpose()));
        let half = S::lit(0.5);
        let coeffs = (&raw - raw.transpose()) * half;
        Self { tag, base: base.clone(), frame, coeffs, asymmetry }
    }

    pub fn eval(&self, a: &nalgebra::DVector<S>, b: &nalgebra::DVector<S>) -> S {
        (a.transpose() * &self.coeffs * b)[(0, 0)]
    }

    /// Coefficients of `π(α, ·)` in the frame dual to the covector frame.
    pub fn contract(&self, a: &nalgebra::DVector<S>) -> nalgebra::DVector<S> {
        self.coeffs.transpose() * a
    }

    /// The same bivector in the right frame: `Π_r = A Π_l Aᵀ`, `A = Ad_x`.
    pub fn to_right(&self, model: &MatrixGroupModel<S>) -> Result<Self> {
        match self.frame {
            Frame::Right => Ok(self.clone()),
            Frame::Left => {
                let a = adjoint_block(model, self.tag, &self.base)?;
                Ok(Self { frame: Frame::Right, coeffs: &a * &self.coeffs * a.transpose(), ..self.clone() })
            }
        }
    }

    pub fn to_left(&self, model: &MatrixGroupModel<S>) -> Result<Self> {
        match self.frame {
            Frame::Left => Ok(self.clone()),
            Frame::Right => {
                let inv = model.inv(&self.base);
                let a = adjoint_block(model, self.tag, &inv)?;
                Ok(Self { frame: Frame::Left, coeffs: &a * &self.coeffs * a.transpose(), ..self.clone() })
            }
        }
    }
}

/// `πG|_g(ξ₁ˡ, ξ₂ˡ) = ⟨pr_𝔤 Ad_ḡ ξ₁, pr_𝔤* Ad_ḡ ξ₂⟩`, left frame.
pub fn pi_g_at<S: Scalar>(model: &MatrixGroupModel<S>, g: &Mat<S>) -> Result<BivectorValue<S>> {
    let n = model.n();
    let ad = model.adjoint_matrix(g)?;
    let to_g = ad.view((0, n), (n, n));
    let to_gstar = ad.view((n, n), (n, n));
    Ok(BivectorValue::new(Tag::G, g, Frame::Left, to_g.transpose() * to_gstar))
}

/// `πG*|_v(w₁ʳ, w₂ʳ) = ⟨pr_𝔤 Ad_{v̄⁻¹} w₁, pr_𝔤* Ad_{v̄⁻¹} w₂⟩`, right frame.
pub fn pi_gstar_at<S: Scalar>(model: &MatrixGroupModel<S>, v: &Mat<S>) -> Result<BivectorValue<S>> {
    let n = model.n();
    let ad = model.adjoint_matrix(&model.inv(v))?;
    let to_g = ad.view((0, 0), (n, n));
    let to_gstar = ad.view((n, 0), (n, n));
    Ok(BivectorValue::new(Tag::GStar, v, Frame::Right, to_g.transpose() * to_gstar))
}

/// `π♯_{G*}(wʳ)|_v = −(pr_𝔤* Ad_{v̄⁻¹} w)ˡ|_v` as a tangent matrix at `v`.
pub fn pi_gstar_sharp<S: Scalar>(
    model: &MatrixGroupModel<S>,
    v: &Mat<S>,
    w: &nalgebra::DVector<S>,
) -> Result<Mat<S>> {
    let d = model.double();
    let x = model.adjoint(&model.inv(v), &d.embed_g(w))?;
    let (_, eta) = d.split(&x);
    Ok(-(v * model.emb_gstar(&eta)))
}

/// `πD|_d = Rʳ − Rˡ` in the right frame: `r − Ad_d r Ad_dᵀ`.
pub fn pi_d_at<S: Scalar>(model: &MatrixGroupModel<S>, d: &Mat<S>) -> Result<BivectorValue<S>> {
    let r = model.double().r();
    let a = model.adjoint_matrix(d)?;
    let raw = r - &a * r * a.transpose();
    Ok(BivectorValue::new(Tag::D, d, Frame::Right, raw))
}

/// `‖π|_{gh} − l_g π|_h − r_h π|_g‖∞`, compared in the right frame, where
/// it reads `Π(gh) − Ad_g Π(h) Ad_gᵀ − Π(g)`.
pub fn multiplicativity_residual<S: Scalar, F>(
    model: &MatrixGroupModel<S>,
    pi: F,
    g: &Mat<S>,
    h: &Mat<S>,
) -> Result<f64>
where
    F: Fn(&MatrixGroupModel<S>, &Mat<S>) -> Result<BivectorValue<S>>,
{
    let at_g = pi(model, g)?.to_right(model)?;
    let at_h = pi(model, h)?.to_right(model)?;
    let at_gh = pi(model, &(g * h))?.to_right(model)?;
    let a = adjoint_block(model, at_g.tag, g)?;
    let diff = at_gh.coeffs - &a * at_h.coeffs * a.transpose() - at_g.coeffs;
    Ok(linalg::mat_norm_inf(&diff))
}
