use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_lagrangian_subalgebra, DoubleAlgebra, Subspace};
use crate::error::{Error, Result};
use crate::group::expm::expm;
use crate::group::factor::{factorization_residual, FactorizationOracle};
use crate::group::predicate::Predicate;
use crate::linalg;
use crate::scalar::{real_to_f64, Scalar};
use crate::tol;

/// Complex matrix over the real type underlying `S`.
pub type Mat<S> = DMatrix<Complex<<S as Scalar>::Real>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    D,
    G,
    GStar,
    L,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Invariant pairing on the matrix realization of 𝔡.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingKind {
    /// `Im tr(XY)`.
    ImTrace,
    /// `tr(XY)`.
    Trace,
    /// `tr(A₁B₂ + B₁A₂)` for `X = [[A₁, B₁], [0, A₁]]`.
    BlockTrace,
}

impl PairingKind {
    pub fn eval<R: nalgebra::RealField + Copy>(
        self,
        x: &DMatrix<Complex<R>>,
        y: &DMatrix<Complex<R>>,
    ) -> Complex<R> {
        match self {
            PairingKind::ImTrace => Complex::new((x * y).trace().im, R::zero()),
            PairingKind::Trace => (x * y).trace(),
            PairingKind::BlockTrace => {
                let k = x.nrows() / 2;
                let a1 = x.view((0, 0), (k, k));
                let b1 = x.view((0, k), (k, k));
                let a2 = y.view((0, 0), (k, k));
                let b2 = y.view((0, k), (k, k));
                (a1 * b2).trace() + (b1 * a2).trace()
            }
        }
    }
}

/// Connected subgroup: its Lie algebra (in 𝔡 coordinates) and a membership
/// predicate on matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Subgroup<S: Scalar> {
    pub tag: Tag,
    pub algebra: Subspace<S>,
    pub predicate: Predicate,
}

/// Inputs for [`MatrixGroupModel::new`]. `basis[i]` realizes the i-th basis
/// vector of `double` (𝔤-block first).
pub struct ModelParts<S: Scalar> {
    pub name: String,
    pub double: DoubleAlgebra<S>,
    pub basis: Vec<Mat<S>>,
    pub pairing: PairingKind,
    pub d_predicate: Predicate,
    pub g_predicate: Predicate,
    pub gstar_predicate: Predicate,
    pub oracle: Option<FactorizationOracle>,
}

/// `D ⊂ GL(N)` realizing a Drinfeld double, together with `G`, `G*` and a
/// designated lagrangian `L` (and optionally `H ⊂ G ∩ L`).
#[derive(Clone, Debug)]
pub struct MatrixGroupModel<S: Scalar> {
    name: String,
    size: usize,
    double: DoubleAlgebra<S>,
    basis: Vec<Mat<S>>,
    pairing: PairingKind,
    equations: DMatrix<S>,
    lift: DMatrix<S>,
    d_predicate: Predicate,
    g: Subgroup<S>,
    gstar: Subgroup<S>,
    l: Subgroup<S>,
    h: Option<Subgroup<S>>,
    oracle: Option<FactorizationOracle>,
}

/// `d = v·g` with its reconstruction residual.
#[derive(Clone, Debug)]
pub struct Factorization<S: Scalar> {
    pub v: Mat<S>,
    pub g: Mat<S>,
    pub residual: f64,
}

fn equations_of<S: Scalar>(m: &Mat<S>) -> Vec<S> {
    let mut out = Vec::with_capacity(m.len() * S::EQUATIONS_PER_ENTRY);
    for z in m.iter() {
        S::push_equations(*z, &mut out);
    }
    out
}

impl<S: Scalar> MatrixGroupModel<S> {
    /// Fails when the basis has the wrong length, mixed sizes, or is not
    /// linearly independent over the field of `S`. `L` starts out as `G*`.
    pub fn new(parts: ModelParts<S>) -> Result<Self> {
        let m = parts.double.dim();
        if parts.basis.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: parts.basis.len() });
        }
        let size = parts.basis.first().map_or(0, |b| b.nrows());
        for b in &parts.basis {
            if b.nrows() != size || b.ncols() != size {
                return Err(Error::DimensionMismatch { expected: size, got: b.nrows().max(b.ncols()) });
            }
        }
        let rows = size * size * S::EQUATIONS_PER_ENTRY;
        let mut equations = DMatrix::<S>::zeros(rows, m);
        for (i, b) in parts.basis.iter().enumerate() {
            equations.set_column(i, &DVector::from_vec(equations_of::<S>(b)));
        }
        let rank = linalg::rank(&equations, tol::RANK);
        if rank != m {
            return Err(Error::RankDeficient { rank, expected: m });
        }
        let lift = linalg::pinv(&equations);
        let g = Subgroup { tag: Tag::G, algebra: parts.double.g_part(), predicate: parts.g_predicate };
        let gstar = Subgroup {
            tag: Tag::GStar,
            algebra: parts.double.gstar_part(),
            predicate: parts.gstar_predicate,
        };
        let l = Subgroup { tag: Tag::L, ..gstar.clone() };
        Ok(Self {
            name: parts.name,
            size,
            double: parts.double,
            basis: parts.basis,
            pairing: parts.pairing,
            equations,
            lift,
            d_predicate: parts.d_predicate,
            g,
            gstar,
            l,
            h: None,
            oracle: parts.oracle,
        })
    }

    /// Copy with a different `L` and optional `H`. Checks that `𝔩` is a
    /// lagrangian subalgebra and that `𝔥 ⊂ 𝔤 ∩ 𝔩`.
    pub fn with_lagrangian(
        &self,
        l: Subspace<S>,
        l_predicate: Predicate,
        h: Option<(Subspace<S>, Predicate)>,
    ) -> Result<Self> {
        let report = is_lagrangian_subalgebra(&self.double, &l, tol::SUBSPACE)?;
        if !report.pass() {
            return Err(Error::Invalid(format!(
                "not a lagrangian subalgebra (isotropy {:.2e}, closure {:.2e})",
                report.isotropy_residual, report.closure_residual
            )));
        }
        let h = match h {
            Some((algebra, predicate)) => {
                let meet = l.intersection(&self.g.algebra);
                let worst = algebra
                    .basis_vectors()
                    .iter()
                    .map(|x| meet.projection_residual(x))
                    .fold(0.0, f64::max);
                if worst > tol::SUBSPACE {
                    return Err(Error::NotInSubspace { residual: worst });
                }
                Some(Subgroup { tag: Tag::H, algebra, predicate })
            }
            None => None,
        };
        Ok(Self { l: Subgroup { tag: Tag::L, algebra: l, predicate: l_predicate }, h, ..self.clone() })
    }

    /// Same matrices and subgroups, with `L = G*` and no `H`.
    pub fn dual_model(&self) -> Self {
        Self { l: Subgroup { tag: Tag::L, ..self.gstar.clone() }, h: None, ..self.clone() }
    }

    /// Copy whose abstract double has one structure constant shifted; the
    /// matrices are unchanged, so the realization stops being a homomorphism.
    pub fn with_perturbed_double(&self, i: usize, j: usize, k: usize, eps: S) -> Self {
        Self { double: self.double.perturbed(i, j, k, eps), ..self.clone() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Matrix size `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// `dim 𝔤`.
    pub fn n(&self) -> usize {
        self.double.n()
    }

    pub fn double(&self) -> &DoubleAlgebra<S> {
        &self.double
    }

    pub fn basis(&self) -> &[Mat<S>] {
        &self.basis
    }

    pub fn pairing_kind(&self) -> PairingKind {
        self.pairing
    }

    pub fn oracle(&self) -> Option<FactorizationOracle> {
        self.oracle
    }

    pub fn d_predicate(&self) -> Predicate {
        self.d_predicate
    }

    pub fn subgroup(&self, tag: Tag) -> Option<&Subgroup<S>> {
        match tag {
            Tag::D => None,
            Tag::G => Some(&self.g),
            Tag::GStar => Some(&self.gstar),
            Tag::L => Some(&self.l),
            Tag::H => self.h.as_ref(),
        }
    }

    pub fn l(&self) -> &Subgroup<S> {
        &self.l
    }

    pub fn h(&self) -> Option<&Subgroup<S>> {
        self.h.as_ref()
    }

    /// `Σ x_i B_i`.
    pub fn emb(&self, x: &DVector<S>) -> Mat<S> {
        let mut out = Mat::<S>::zeros(self.size, self.size);
        for (xi, b) in x.iter().zip(&self.basis) {
            out += b * xi.to_complex();
        }
        out
    }

    pub fn emb_g(&self, u: &DVector<S>) -> Mat<S> {
        self.emb(&self.double.embed_g(u))
    }

    pub fn emb_gstar(&self, xi: &DVector<S>) -> Mat<S> {
        self.emb(&self.double.embed_gstar(xi))
    }

    /// Least-squares coordinates of `m` and the relative residual of the fit.
    pub fn pullback(&self, m: &Mat<S>) -> (DVector<S>, f64) {
        let b = DVector::from_vec(equations_of::<S>(m));
        let x = &self.lift * &b;
        let r = linalg::vec_norm_inf(&(&self.equations * &x - &b));
        let scale = real_to_f64(m.camax()).max(1.0);
        (x, r / scale)
    }

    /// Coordinates of `m`, or an error if it is off the span of the basis.
    pub fn coords(&self, m: &Mat<S>) -> Result<DVector<S>> {
        let (x, r) = self.pullback(m);
        if r > tol::PULLBACK {
            return Err(Error::Pullback { residual: r });
        }
        Ok(x)
    }

    /// `max ‖[B_i, B_j] − emb([e_i, e_j])‖`.
    pub fn homomorphism_residual(&self) -> f64 {
        let m = self.double.dim();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in (i + 1)..m {
                let comm = &self.basis[i] * &self.basis[j] - &self.basis[j] * &self.basis[i];
                let e = self.double.bracket(&unit::<S>(m, i), &unit::<S>(m, j));
                worst = worst.max(real_to_f64((comm - self.emb(&e)).camax()));
            }
        }
        worst
    }

    /// `max |pairing(B_i, B_j) − ⟨e_i, e_j⟩|`.
    pub fn pairing_residual(&self) -> f64 {
        let m = self.double.dim();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                let matrix = self.pairing.eval(&self.basis[i], &self.basis[j]);
                let abstract_ = self.double.pairing_form().matrix()[(i, j)].to_complex();
                worst = worst.max(real_to_f64(nalgebra::ComplexField::modulus(matrix - abstract_)));
            }
        }
        worst
    }

    /// # Panics
    /// If `x` is singular; group elements never are.
    pub fn inv(&self, x: &Mat<S>) -> Mat<S> {
        x.clone().try_inverse().expect("group element is invertible")
    }

    pub fn exp(&self, x: &DVector<S>) -> Mat<S> {
        expm(&self.emb(x))
    }

    /// Matrix of `Ad_x` on 𝔡 (columns are the images of basis vectors).
    /// Fails if some `x B_i x⁻¹` leaves the span of the basis.
    pub fn adjoint_matrix(&self, x: &Mat<S>) -> Result<DMatrix<S>> {
        let xi = self.inv(x);
        let m = self.double.dim();
        let mut out = DMatrix::zeros(m, m);
        for (i, b) in self.basis.iter().enumerate() {
            out.set_column(i, &self.coords(&(x * b * &xi))?);
        }
        Ok(out)
    }

    pub fn adjoint(&self, x: &Mat<S>, y: &DVector<S>) -> Result<DVector<S>> {
        self.coords(&(x * self.emb(y) * self.inv(x)))
    }

    /// `ξ ∘ Ad_g` for `g ∈ G`, `ξ ∈ 𝔤*`.
    pub fn coadjoint_g(&self, g: &Mat<S>, xi: &DVector<S>) -> Result<DVector<S>> {
        let n = self.n();
        let a = self.adjoint_matrix(g)?;
        Ok(a.view((0, 0), (n, n)).transpose() * xi)
    }

    /// `w ∘ Ad_v` for `v ∈ G*`, `w ∈ 𝔤 = (𝔤*)*`.
    pub fn coadjoint_gstar(&self, v: &Mat<S>, w: &DVector<S>) -> Result<DVector<S>> {
        let n = self.n();
        let a = self.adjoint_matrix(v)?;
        Ok(a.view((n, n), (n, n)).transpose() * w)
    }

    /// Maurer–Cartan form: `x⁻¹X` (left) or `Xx⁻¹` (right) in 𝔡 coordinates.
    pub fn maurer(&self, x: &Mat<S>, tangent: &Mat<S>, side: Side) -> Result<DVector<S>> {
        let xi = self.inv(x);
        let m = match side {
            Side::Left => &xi * tangent,
            Side::Right => tangent * &xi,
        };
        self.coords(&m)
    }

    pub fn membership(&self, tag: Tag, x: &Mat<S>) -> f64 {
        match tag {
            Tag::D => self.d_predicate.residual_over(S::FIELD, x),
            _ => self.subgroup(tag).map_or(f64::INFINITY, |s| s.predicate.residual_over(S::FIELD, x)),
        }
    }

    /// Random element of the subalgebra: basis coefficients uniform in
    /// `[-radius, radius]`.
    pub fn random_algebra_element<R: Rng + ?Sized>(
        &self,
        tag: Tag,
        rng: &mut R,
        radius: f64,
    ) -> Result<DVector<S>> {
        let basis = match tag {
            Tag::D => DMatrix::identity(self.double.dim(), self.double.dim()),
            _ => self.subgroup(tag).ok_or(Error::Unsupported("subgroup H"))?.algebra.basis().clone(),
        };
        let coeffs = DVector::from_fn(basis.ncols(), |_, _| S::sample(rng, radius));
        Ok(basis * coeffs)
    }

    /// `exp` of a random algebra element; for `D`, a product `v·g`.
    pub fn random_element<R: Rng + ?Sized>(&self, tag: Tag, rng: &mut R, radius: f64) -> Result<Mat<S>> {
        match tag {
            Tag::D => {
                let v = self.random_element(Tag::GStar, rng, radius)?;
                let g = self.random_element(Tag::G, rng, radius)?;
                Ok(v * g)
            }
            _ => Ok(self.exp(&self.random_algebra_element(tag, rng, radius)?)),
        }
    }

    /// `d = v·g` from the model's oracle, checked for reconstruction and
    /// membership of both factors.
    pub fn factorize(&self, d: &Mat<S>) -> Result<Factorization<S>> {
        let oracle = self.oracle.ok_or(Error::Unsupported("global factorization"))?;
        let (v, g) = oracle.factorize(d)?;
        let residual = factorization_residual(d, &v, &g);
        let worst = residual.max(self.membership(Tag::GStar, &v)).max(self.membership(Tag::G, &g));
        if worst > tol::MEMBERSHIP {
            return Err(Error::Factorization(format!("factors off the subgroups by {worst:.3e}")));
        }
        Ok(Factorization { v, g, residual })
    }
}

pub fn unit<S: Scalar>(m: usize, i: usize) -> DVector<S> {
    let mut v = DVector::zeros(m);
    v[i] = S::one();
    v
}
