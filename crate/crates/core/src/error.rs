use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("structure constants are not antisymmetric at ({i}, {j}, {k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("basis vectors are linearly dependent (rank {rank} < {expected})")]
    RankDeficient { rank: usize, expected: usize },
    #[error("matrix does not lie in the span of the embedding (residual {residual:.3e})")]
    Pullback { residual: f64 },
    #[error("vector is not in the subspace (residual {residual:.3e})")]
    NotInSubspace { residual: f64 },
    #[error("constraint violated (residual {residual:.3e})")]
    Constraint { residual: f64 },
    #[error("not composable (residual {residual:.3e})")]
    NotComposable { residual: f64 },
    #[error("{0} is not available for this model")]
    Unsupported(&'static str),
    #[error("factorization broke down: {0}")]
    Factorization(String),
    #[error("{0}")]
    Invalid(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
