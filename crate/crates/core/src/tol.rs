//! Tolerances and finite-difference steps shared by every check.
//!
//! Two error sources drive the split: purely algebraic evaluations only see
//! rounding (1e-9 leaves ample room on O(1)-scaled matrices), while derivative
//! checks carry a truncation term on top of rounding amplified by 1/h.

/// Identities of structure constants (Jacobi, ad-invariance, `[R,R]`).
pub const EXACT: f64 = 1e-12;
/// Algebraic identities evaluated through group elements.
pub const ALGEBRAIC: f64 = 1e-9;
/// Checks involving finite differences.
pub const FINITE_DIFFERENCE: f64 = 1e-6;
/// Orthogonal-projection residual for subspace membership.
pub const SUBSPACE: f64 = 1e-10;
/// Matrix residual for groupoid points and s/t composability.
pub const POINT: f64 = 1e-8;
/// Pullback of a matrix to 𝔡-coordinates.
pub const PULLBACK: f64 = 1e-9;
/// Singular values below this count as zero in rank decisions.
pub const RANK: f64 = 1e-8;
/// Subgroup membership predicates.
pub const MEMBERSHIP: f64 = 1e-9;

/// Central-difference step. With one Richardson level the truncation error is
/// O(h⁴) ≈ 1e-20, so the result is rounding-dominated at roughly eps/h.
pub const FD_STEP: f64 = 1e-5;
/// Tolerance for the diagnostic re-derivation of frame brackets.
pub const FD_DIAGNOSTIC: f64 = 1e-5;
