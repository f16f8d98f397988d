use crate::algebra::lie::LieAlgebra;
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// Lie bialgebra `(𝔤, δ*)` with `δ*(e_i) = Σ_{j<k} d[i][j][k] e_j ∧ e_k`.
///
/// The dual bracket is `[ε_a, ε_b]_{𝔤*}(e_i) = -δ*(e_i)(ε_a, ε_b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieBialgebra<F: Coefficient> {
    g: LieAlgebra<F>,
    cobracket: Vec<F>,
    dual: LieAlgebra<F>,
}

impl<F: Coefficient> LieBialgebra<F> {
    /// `cobracket` is a flat `n³` array. Entries with `j < k` define δ*;
    /// entries with `j ≥ k` must be zero or the antisymmetric partner.
    pub fn new(g: LieAlgebra<F>, cobracket: Vec<F>) -> Result<Self> {
        let n = g.dim();
        if cobracket.len() != n * n * n {
            return Err(Error::DimensionMismatch { expected: n * n * n, got: cobracket.len() });
        }
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        let mut full = vec![F::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let given = cobracket[idx(i, j, k)];
                    if j < k {
                        full[idx(i, j, k)] = given;
                        full[idx(i, k, j)] = -given;
                    } else if given != F::zero() && (j == k || given != -cobracket[idx(i, k, j)]) {
                        return Err(Error::NotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        let labels: Vec<String> = g.labels().iter().map(|l| format!("{l}*")).collect();
        let mut dual = vec![F::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                for i in 0..n {
                    dual[idx(a, b, i)] = -full[idx(i, a, b)];
                }
            }
        }
        let dual = LieAlgebra::new(n, dual, labels, g.is_exact())?;
        Ok(Self { g, cobracket: full, dual })
    }

    /// Bialgebra whose dual bracket is the given algebra on the dual basis.
    pub fn from_dual_bracket(g: LieAlgebra<F>, dual: &LieAlgebra<F>) -> Result<Self> {
        let n = g.dim();
        if dual.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: dual.dim() });
        }
        let mut cob = vec![F::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in (j + 1)..n {
                    cob[(i * n + j) * n + k] = -dual.c(j, k, i);
                }
            }
        }
        let out = Self::new(g, cob)?;
        Ok(Self { dual: out.dual.clone().with_labels(dual.labels().to_vec()), ..out })
    }

    /// Bialgebra with zero cobracket.
    pub fn trivial(g: LieAlgebra<F>) -> Self {
        let n = g.dim();
        Self::new(g, vec![F::zero(); n * n * n]).expect("zero cobracket is antisymmetric")
    }

    pub fn g(&self) -> &LieAlgebra<F> {
        &self.g
    }

    pub fn dual(&self) -> &LieAlgebra<F> {
        &self.dual
    }

    /// `δ*(e_i)(ε_j, ε_k)`, antisymmetric in `(j, k)`.
    pub fn delta(&self, i: usize, j: usize, k: usize) -> F {
        let n = self.g.dim();
        self.cobracket[(i * n + j) * n + k]
    }

    pub fn dual_jacobi_residual(&self) -> f64 {
        self.dual.jacobi_residual()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lie::sl2;

    #[test]
    fn dual_bracket_sign_convention() {
        // δ*(e_1) = e_1 ∧ e_2 gives [ε_1, ε_2]_{𝔤*} = -ε_1.
        let g = LieAlgebra::<f64>::abelian(2);
        let mut cob = vec![0.0; 8];
        cob[1] = 1.0; // d[0][0][1]
        let b = LieBialgebra::new(g, cob).unwrap();
        assert_eq!(b.dual().c(0, 1, 0), -1.0);
        assert_eq!(b.dual().c(1, 0, 0), 1.0);
        assert_eq!(b.delta(0, 1, 0), -1.0);
    }

    #[test]
    fn inconsistent_lower_entries_rejected() {
        let g = LieAlgebra::<f64>::abelian(2);
        let mut cob = vec![0.0; 8];
        cob[1] = 1.0; // d[0][0][1]
        cob[2] = 1.0; // d[0][1][0] should be -1 or 0
        assert!(LieBialgebra::new(g, cob).is_err());
    }

    #[test]
    fn dual_round_trip() {
        let dual = sl2::<f64>();
        let b = LieBialgebra::from_dual_bracket(LieAlgebra::abelian(3), &dual).unwrap();
        assert_eq!(b.dual().structure(), dual.structure());
        assert_eq!(b.dual_jacobi_residual(), 0.0);
    }
}
