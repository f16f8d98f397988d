use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::{Coefficient, Field};

/// Finite-dimensional Lie algebra given by structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<F: Coefficient> {
    dim: usize,
    structure: Vec<F>,
    labels: Vec<String>,
    exact: bool,
}

impl<F: Coefficient> LieAlgebra<F> {
    /// Builds an algebra from a flat `dim³` array, rejecting any entry that
    /// breaks antisymmetry. The comparison is exact.
    pub fn new(dim: usize, structure: Vec<F>, labels: Vec<String>, exact: bool) -> Result<Self> {
        if structure.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                got: structure.len(),
            });
        }
        if labels.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: labels.len() });
        }
        let a = Self { dim, structure, labels, exact };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if a.c(i, j, k) != -a.c(j, i, k) {
                        return Err(Error::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            structure: vec![F::zero(); dim * dim * dim],
            labels: default_labels("e", dim),
            exact: true,
        }
    }

    /// Builds an algebra from the brackets `[e_i, e_j]` with `i < j`; the
    /// remaining entries follow by antisymmetry.
    pub fn from_upper_brackets(
        dim: usize,
        labels: Vec<String>,
        exact: bool,
        mut bracket: impl FnMut(usize, usize) -> Vec<F>,
    ) -> Result<Self> {
        let mut structure = vec![F::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let v = bracket(i, j);
                if v.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
                }
                for (k, x) in v.into_iter().enumerate() {
                    structure[(i * dim + j) * dim + k] = x;
                    structure[(j * dim + i) * dim + k] = -x;
                }
            }
        }
        Self::new(dim, structure, labels, exact)
    }

    /// Builds an algebra from nonzero `(i, j, k, value)` triples. Each triple
    /// also sets its antisymmetric partner; conflicting triples are rejected.
    pub fn from_triples(
        dim: usize,
        labels: Vec<String>,
        exact: bool,
        triples: &[(usize, usize, usize, F)],
    ) -> Result<Self> {
        let mut structure = vec![F::zero(); dim * dim * dim];
        let mut set = vec![false; dim * dim * dim];
        for &(i, j, k, v) in triples {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Invalid(format!("triple index ({i},{j},{k}) out of range")));
            }
            for (idx, val) in [((i * dim + j) * dim + k, v), ((j * dim + i) * dim + k, -v)] {
                if set[idx] && structure[idx] != val {
                    return Err(Error::NotAntisymmetric { i, j, k });
                }
                structure[idx] = val;
                set[idx] = true;
            }
        }
        Self::new(dim, structure, labels, exact)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        F::FIELD
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// True when the constants are known integers or rationals.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> F {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure(&self) -> &[F] {
        &self.structure
    }

    /// Nonzero constants as `(i, j, k, value)`.
    pub fn triples(&self) -> Vec<(usize, usize, usize, F)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.c(i, j, k);
                    if v != F::zero() {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &DVector<F>, y: &DVector<F>) -> DVector<F> {
        let n = self.dim;
        let mut out = DVector::from_element(n, F::zero());
        for i in 0..n {
            if x[i] == F::zero() {
                continue;
            }
            for j in 0..n {
                if y[j] == F::zero() {
                    continue;
                }
                let xy = x[i] * y[j];
                for k in 0..n {
                    out[k] = out[k] + xy * self.c(i, j, k);
                }
            }
        }
        out
    }

    /// Matrix of `ad_x = [x, ·]`.
    pub fn ad(&self, x: &DVector<F>) -> DMatrix<F> {
        let n = self.dim;
        let mut m = DMatrix::from_element(n, n, F::zero());
        for j in 0..n {
            for k in 0..n {
                let mut s = F::zero();
                for i in 0..n {
                    s = s + x[i] * self.c(i, j, k);
                }
                m[(k, j)] = s;
            }
        }
        m
    }

    pub fn basis_vector(&self, i: usize) -> DVector<F> {
        let mut v = DVector::from_element(self.dim, F::zero());
        v[i] = F::one();
        v
    }

    /// Largest component of `[[e_i,e_j],e_k] + cyclic` over all basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut s = F::zero();
                        for p in 0..n {
                            s = s + self.c(i, j, p) * self.c(p, k, m)
                                + self.c(j, k, p) * self.c(p, i, m)
                                + self.c(k, i, p) * self.c(p, j, m);
                        }
                        worst = worst.max(s.magnitude());
                    }
                }
            }
        }
        worst
    }

    /// Same algebra with `c[i][j][k]` shifted by `eps` (and `c[j][i][k]` by
    /// `-eps`). Used by fault-injection runs.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, eps: F) -> Self {
        let mut out = self.clone();
        let n = self.dim;
        out.structure[(i * n + j) * n + k] = out.structure[(i * n + j) * n + k] + eps;
        out.structure[(j * n + i) * n + k] = out.structure[(j * n + i) * n + k] - eps;
        out.exact = false;
        out
    }

    pub fn map<G: Coefficient>(&self, f: impl Fn(F) -> G) -> LieAlgebra<G> {
        LieAlgebra {
            dim: self.dim,
            structure: self.structure.iter().map(|x| f(*x)).collect(),
            labels: self.labels.clone(),
            exact: self.exact,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }
}

pub(crate) fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// 𝔰𝔩₂ in the basis (h, e, f) with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2<F: Coefficient>() -> LieAlgebra<F> {
    let two = F::one() + F::one();
    LieAlgebra::from_triples(
        3,
        vec!["h".into(), "e".into(), "f".into()],
        true,
        &[(0, 1, 1, two), (0, 2, 2, -two), (1, 2, 0, F::one())],
    )
    .expect("sl2 constants are antisymmetric")
}
