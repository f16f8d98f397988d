use nalgebra::{DMatrix, DVector};

use crate::algebra::bialgebra::LieBialgebra;
use crate::algebra::lie::LieAlgebra;
use crate::algebra::subspace::Subspace;
use crate::error::Result;
use crate::scalar::{Coefficient, Scalar};

/// Symmetric bilinear form `B[i][j] = ⟨e_i, e_j⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<F: Coefficient> {
    matrix: DMatrix<F>,
}

impl<F: Coefficient> BilinearForm<F> {
    pub fn new(matrix: DMatrix<F>) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &DMatrix<F> {
        &self.matrix
    }

    pub fn eval(&self, x: &DVector<F>, y: &DVector<F>) -> F {
        let n = self.matrix.nrows();
        let mut s = F::zero();
        for i in 0..n {
            if x[i] == F::zero() {
                continue;
            }
            for j in 0..n {
                s = s + x[i] * self.matrix[(i, j)] * y[j];
            }
        }
        s
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }

    /// Covector `⟨x, ·⟩` in dual coordinates.
    pub fn flat(&self, x: &DVector<F>) -> DVector<F> {
        let n = self.matrix.nrows();
        DVector::from_fn(n, |j, _| {
            (0..n).fold(F::zero(), |s, i| s + x[i] * self.matrix[(i, j)])
        })
    }
}

impl<S: Scalar> BilinearForm<S> {
    pub fn is_nondegenerate(&self) -> bool {
        crate::linalg::rank(&self.matrix, crate::tol::RANK) == self.matrix.nrows()
    }
}

/// Factor taking the Schouten expansion of [`DoubleAlgebra::schouten_rr`]
/// to the normalization where `⟨[R,R], a∧b∧c⟩ = 2⟨a,[b,c]⟩`.
pub const RR_NORMALIZATION: f64 = -4.0;

/// Drinfeld double `𝔡 = 𝔤 ⊕ 𝔤*`. Coordinates list the 𝔤-block first.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleAlgebra<F: Coefficient> {
    n: usize,
    g: LieAlgebra<F>,
    gstar: LieAlgebra<F>,
    d: LieAlgebra<F>,
    pairing: BilinearForm<F>,
    r: DMatrix<F>,
}

/// Builds the double with the mixed bracket assembled from coadjoint terms.
pub fn double_from_bialgebra<F: Coefficient>(b: &LieBialgebra<F>) -> Result<DoubleAlgebra<F>> {
    DoubleAlgebra::from_bialgebra(b)
}

impl<F: Coefficient> DoubleAlgebra<F> {
    pub fn from_bialgebra(b: &LieBialgebra<F>) -> Result<Self> {
        let n = b.g().dim();
        let mut pairing = DMatrix::from_element(2 * n, 2 * n, F::zero());
        let mut r = DMatrix::from_element(2 * n, 2 * n, F::zero());
        let half = F::one() / (F::one() + F::one());
        for i in 0..n {
            pairing[(i, n + i)] = F::one();
            pairing[(n + i, i)] = F::one();
            // R = ½ Σ ε_i ∧ e_i, stored as R(α, β) = αᵀ r β.
            r[(n + i, i)] = half;
            r[(i, n + i)] = -half;
        }
        let mut out = Self {
            n,
            g: b.g().clone(),
            gstar: b.dual().clone(),
            d: LieAlgebra::abelian(2 * n),
            pairing: BilinearForm::new(pairing),
            r,
        };
        let labels: Vec<String> =
            b.g().labels().iter().chain(b.dual().labels()).cloned().collect();
        let exact = b.g().is_exact() && b.dual().is_exact();
        let d = LieAlgebra::from_upper_brackets(2 * n, labels, exact, |i, j| {
            let x = out.d.basis_vector(i);
            let y = out.d.basis_vector(j);
            out.formula_bracket(&x, &y).iter().copied().collect()
        })?;
        out.d = d;
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn g(&self) -> &LieAlgebra<F> {
        &self.g
    }

    pub fn gstar(&self) -> &LieAlgebra<F> {
        &self.gstar
    }

    pub fn algebra(&self) -> &LieAlgebra<F> {
        &self.d
    }

    pub fn pairing_form(&self) -> &BilinearForm<F> {
        &self.pairing
    }

    /// Coefficients of `R ∈ ∧²𝔡` as a bilinear form on 𝔡*.
    pub fn r(&self) -> &DMatrix<F> {
        &self.r
    }

    pub fn bracket(&self, x: &DVector<F>, y: &DVector<F>) -> DVector<F> {
        self.d.bracket(x, y)
    }

    pub fn pairing(&self, x: &DVector<F>, y: &DVector<F>) -> F {
        self.pairing.eval(x, y)
    }

    pub fn split(&self, x: &DVector<F>) -> (DVector<F>, DVector<F>) {
        (x.rows(0, self.n).into_owned(), x.rows(self.n, self.n).into_owned())
    }

    pub fn join(&self, u: &DVector<F>, xi: &DVector<F>) -> DVector<F> {
        let mut x = DVector::from_element(2 * self.n, F::zero());
        x.rows_mut(0, self.n).copy_from(u);
        x.rows_mut(self.n, self.n).copy_from(xi);
        x
    }

    pub fn embed_g(&self, u: &DVector<F>) -> DVector<F> {
        self.join(u, &DVector::from_element(self.n, F::zero()))
    }

    pub fn embed_gstar(&self, xi: &DVector<F>) -> DVector<F> {
        self.join(&DVector::from_element(self.n, F::zero()), xi)
    }

    /// `ad*_u ξ ∈ 𝔤*`, defined by `(ad*_u ξ)(w) = ξ([w, u])`.
    pub fn ad_star_u_xi(&self, u: &DVector<F>, xi: &DVector<F>) -> DVector<F> {
        let n = self.n;
        DVector::from_fn(n, |k, _| {
            let mut s = F::zero();
            for i in 0..n {
                for j in 0..n {
                    s = s + u[i] * self.g.c(k, i, j) * xi[j];
                }
            }
            s
        })
    }

    /// `ad*_ξ u ∈ 𝔤`, defined by `η(ad*_ξ u) = [η, ξ]_{𝔤*}(u)`.
    pub fn ad_star_xi_u(&self, xi: &DVector<F>, u: &DVector<F>) -> DVector<F> {
        let n = self.n;
        DVector::from_fn(n, |k, _| {
            let mut s = F::zero();
            for a in 0..n {
                for i in 0..n {
                    s = s + xi[a] * self.gstar.c(k, a, i) * u[i];
                }
            }
            s
        })
    }

    /// The four coadjoint terms of the double bracket of `x = u+ξ`, `y = w+η`:
    /// `(ad*_ξ w − ad*_η u) + (ad*_u η − ad*_w ξ)`.
    pub fn ad_star_ops(&self, x: &DVector<F>, y: &DVector<F>) -> DVector<F> {
        let (u, xi) = self.split(x);
        let (w, eta) = self.split(y);
        let a = self.ad_star_xi_u(&xi, &w);
        let b = self.ad_star_xi_u(&eta, &u);
        let c = self.ad_star_u_xi(&u, &eta);
        let d = self.ad_star_u_xi(&w, &xi);
        let g_part = DVector::from_fn(self.n, |k, _| a[k] - b[k]);
        let s_part = DVector::from_fn(self.n, |k, _| c[k] - d[k]);
        self.join(&g_part, &s_part)
    }

    /// `[u,w]_𝔤 + ad*_ξ w − ad*_η u + [ξ,η]_{𝔤*} + ad*_u η − ad*_w ξ`.
    pub fn formula_bracket(&self, x: &DVector<F>, y: &DVector<F>) -> DVector<F> {
        let (u, xi) = self.split(x);
        let (w, eta) = self.split(y);
        let uw = self.g.bracket(&u, &w);
        let xe = self.gstar.bracket(&xi, &eta);
        let mixed = self.ad_star_ops(x, y);
        let pure = self.join(&uw, &xe);
        DVector::from_fn(2 * self.n, |k, _| pure[k] + mixed[k])
    }

    /// Largest deviation between the stored bracket and the bialgebra formula
    /// over basis pairs.
    pub fn reassembly_residual(&self) -> f64 {
        let m = self.dim();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                let (x, y) = (self.d.basis_vector(i), self.d.basis_vector(j));
                let a = self.bracket(&x, &y);
                let b = self.formula_bracket(&x, &y);
                for k in 0..m {
                    worst = worst.max((a[k] - b[k]).magnitude());
                }
            }
        }
        worst
    }

    /// Largest `|⟨[a,b],c⟩ + ⟨b,[a,c]⟩|` over basis triples.
    pub fn pairing_invariance_residual(&self) -> f64 {
        let m = self.dim();
        let mut worst = 0.0f64;
        for a in 0..m {
            let x = self.d.basis_vector(a);
            for b in 0..m {
                let y = self.d.basis_vector(b);
                let xy = self.bracket(&x, &y);
                for c in 0..m {
                    let z = self.d.basis_vector(c);
                    let s = self.pairing(&xy, &z) + self.pairing(&y, &self.bracket(&x, &z));
                    worst = worst.max(s.magnitude());
                }
            }
        }
        worst
    }

    /// `[R, R]` as a totally antisymmetric tensor `T[p][q][r]` on 𝔡*,
    /// from the Schouten expansion
    /// `[x∧y, z∧w] = [x,z]∧y∧w − [x,w]∧y∧z − [y,z]∧x∧w + [y,w]∧x∧z`.
    /// With `R = ½ Σ r^{ab} e_a∧e_b` the four terms coincide and
    /// `[R,R] = Σ r^{ab} r^{cd} [e_a,e_c]∧e_b∧e_d`.
    pub fn schouten_rr(&self) -> Vec<F> {
        let m = self.dim();
        let idx = |p: usize, q: usize, r: usize| (p * m + q) * m + r;
        // u[k][b][d] = Σ_{a,c} r^{ab} r^{cd} c[a][c][k]
        let mut u = vec![F::zero(); m * m * m];
        for a in 0..m {
            for b in 0..m {
                let rab = self.r[(a, b)];
                if rab == F::zero() {
                    continue;
                }
                for c in 0..m {
                    for d in 0..m {
                        let rcd = self.r[(c, d)];
                        if rcd == F::zero() {
                            continue;
                        }
                        for k in 0..m {
                            let ck = self.d.c(a, c, k);
                            if ck != F::zero() {
                                u[idx(k, b, d)] = u[idx(k, b, d)] + rab * rcd * ck;
                            }
                        }
                    }
                }
            }
        }
        let mut t = vec![F::zero(); m * m * m];
        for p in 0..m {
            for q in 0..m {
                for r in 0..m {
                    t[idx(p, q, r)] = u[idx(p, q, r)] + u[idx(q, r, p)] + u[idx(r, p, q)]
                        - u[idx(q, p, r)]
                        - u[idx(p, r, q)]
                        - u[idx(r, q, p)];
                }
            }
        }
        t
    }

    /// Largest `|⟨[R,R], a∧b∧c⟩ − 2⟨a,[b,c]⟩|` over basis triples, where the
    /// trivector is paired with `a∧b∧c` through `⟨,⟩`.
    ///
    /// The expansion in [`Self::schouten_rr`] gives `−½⟨a,[b,c]⟩`; the
    /// comparison rescales it by [`RR_NORMALIZATION`].
    pub fn rr_residual(&self) -> f64 {
        let m = self.dim();
        let t = self.schouten_rr();
        let two = F::one() + F::one();
        let scale = -(two + two);
        let flats: Vec<DVector<F>> =
            (0..m).map(|i| self.pairing.flat(&self.d.basis_vector(i))).collect();
        let mut worst = 0.0f64;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let mut lhs = F::zero();
                    for p in 0..m {
                        if flats[a][p] == F::zero() {
                            continue;
                        }
                        for q in 0..m {
                            if flats[b][q] == F::zero() {
                                continue;
                            }
                            for r in 0..m {
                                lhs = lhs
                                    + t[(p * m + q) * m + r] * flats[a][p] * flats[b][q] * flats[c][r];
                            }
                        }
                    }
                    let lhs = scale * lhs;
                    let bc = self.bracket(&self.d.basis_vector(b), &self.d.basis_vector(c));
                    let rhs = two * self.pairing(&self.d.basis_vector(a), &bc);
                    worst = worst.max((lhs - rhs).magnitude());
                }
            }
        }
        worst
    }

    /// Copy with one structure constant of 𝔡 shifted by `eps`; 𝔤 and 𝔤* are
    /// left as they were, so the bracket formula no longer reproduces 𝔡.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, eps: F) -> Self {
        Self { d: self.d.perturbed(i, j, k, eps), ..self.clone() }
    }
}

impl<S: Scalar> DoubleAlgebra<S> {
    pub fn g_part(&self) -> Subspace<S> {
        Subspace::coordinate(self.dim(), &(0..self.n).collect::<Vec<_>>()).expect("axes")
    }

    pub fn gstar_part(&self) -> Subspace<S> {
        Subspace::coordinate(self.dim(), &(self.n..2 * self.n).collect::<Vec<_>>()).expect("axes")
    }

    /// `R = ½ Σ ε'_i ∧ e'_i` recomputed from the basis `e'_i = Σ_j m[j][i] e_j`
    /// of 𝔤 and its dual basis.
    pub fn r_from_basis(&self, m: &DMatrix<S>) -> Option<DMatrix<S>> {
        let n = self.n;
        let inv_t = m.clone().try_inverse()?.transpose();
        let half = S::lit(0.5);
        let mut r = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            let e = self.embed_g(&m.column(i).into_owned());
            let eps = self.embed_gstar(&inv_t.column(i).into_owned());
            // ε ∧ e as a form on 𝔡*: α(ε)β(e) − α(e)β(ε)
            r += (&eps * e.transpose() - &e * eps.transpose()) * half;
        }
        Some(r)
    }
}
