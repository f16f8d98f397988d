//! Membership tests for the matrix subgroups used by the models.

use nalgebra::{DMatrix, RealField};
use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};

use crate::scalar::{real_to_f64, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    /// `det = 1`.
    SpecialLinear,
    /// `g*g = I`, `det = 1`.
    SpecialUnitary,
    /// Upper triangular, positive real diagonal, `det = 1`.
    UpperPositive,
    /// Upper triangular, unimodular diagonal, `det = 1`.
    UpperUnitaryDiagonal,
    /// Diagonal, unimodular, `det = 1`.
    DiagonalUnitary,
    /// Real `[[A, B], [0, A]]` with `det A = 1` and `tr(BA⁻¹) = 0`.
    BlockSemidirect,
    /// Real `diag(A, A)` with `det A = 1`.
    BlockDiagonal,
    /// Real `[[I, Y], [0, I]]` with `tr Y = 0`.
    BlockUnipotent,
    /// `diag(A, A)` with `A` positive diagonal of determinant one.
    BlockSplitTorus,
    /// `[[A, YA], [0, A]]` with `A` positive diagonal, `det A = 1` and `Y`
    /// off-diagonal.
    BlockSplitTorusOffDiagonal,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::SpecialLinear => "special_linear",
            Predicate::SpecialUnitary => "special_unitary",
            Predicate::UpperPositive => "upper_positive",
            Predicate::UpperUnitaryDiagonal => "upper_unitary_diagonal",
            Predicate::DiagonalUnitary => "diagonal_unitary",
            Predicate::BlockSemidirect => "block_semidirect",
            Predicate::BlockDiagonal => "block_diagonal",
            Predicate::BlockUnipotent => "block_unipotent",
            Predicate::BlockSplitTorus => "block_split_torus",
            Predicate::BlockSplitTorusOffDiagonal => "block_split_torus_off_diagonal",
        }
    }

    /// Largest violation of the defining conditions; zero on members.
    pub fn residual<R: RealField + Copy>(self, m: &DMatrix<Complex<R>>) -> f64 {
        self.residual_over(Field::Real, m)
    }

    /// Over `Field::Complex` the block predicates drop their realness condition.
    pub fn residual_over<R: RealField + Copy>(self, field: Field, m: &DMatrix<Complex<R>>) -> f64 {
        let m: DMatrix<Complex64> =
            m.map(|z| Complex64::new(real_to_f64(z.re), real_to_f64(z.im)));
        if !m.is_square() {
            return f64::INFINITY;
        }
        let det1 = (m.determinant() - 1.0).norm();
        match self {
            Predicate::SpecialLinear => det1,
            Predicate::SpecialUnitary => {
                let id = DMatrix::<Complex64>::identity(m.nrows(), m.nrows());
                (m.adjoint() * &m - id).camax().max(det1)
            }
            Predicate::UpperPositive => lower(&m).max(positive_diagonal(&m)).max(det1),
            Predicate::UpperUnitaryDiagonal => lower(&m).max(unimodular_diagonal(&m)).max(det1),
            Predicate::DiagonalUnitary => {
                lower(&m).max(lower(&m.transpose())).max(unimodular_diagonal(&m)).max(det1)
            }
            Predicate::BlockSemidirect => match blocks(&m, field) {
                Some(b) => b.base().max(b.trace_y()),
                None => f64::INFINITY,
            },
            Predicate::BlockDiagonal => match blocks(&m, field) {
                Some(b) => b.base().max(b.b.camax()),
                None => f64::INFINITY,
            },
            Predicate::BlockUnipotent => match blocks(&m, field) {
                Some(b) => {
                    let id = DMatrix::<Complex64>::identity(b.a.nrows(), b.a.nrows());
                    b.base().max((&b.a - id).camax()).max(b.trace_y())
                }
                None => f64::INFINITY,
            },
            Predicate::BlockSplitTorus => match blocks(&m, field) {
                Some(b) => b
                    .base()
                    .max(b.b.camax())
                    .max(lower(&b.a))
                    .max(lower(&b.a.transpose()))
                    .max(positive_diagonal(&b.a)),
                None => f64::INFINITY,
            },
            Predicate::BlockSplitTorusOffDiagonal => match blocks(&m, field) {
                Some(b) => {
                    let mut r = b
                        .base()
                        .max(lower(&b.a))
                        .max(lower(&b.a.transpose()))
                        .max(positive_diagonal(&b.a));
                    if let Some(y) = b.y() {
                        r = r.max(y.diagonal().camax());
                    }
                    r
                }
                None => f64::INFINITY,
            },
        }
    }
}

fn lower(m: &DMatrix<Complex64>) -> f64 {
    let mut r = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..i.min(m.ncols()) {
            r = r.max(m[(i, j)].norm());
        }
    }
    r
}

fn positive_diagonal(m: &DMatrix<Complex64>) -> f64 {
    m.diagonal()
        .iter()
        .map(|z| z.im.abs().max((-z.re).max(0.0)))
        .fold(0.0, f64::max)
}

fn unimodular_diagonal(m: &DMatrix<Complex64>) -> f64 {
    m.diagonal().iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max)
}

struct Blocks {
    a: DMatrix<Complex64>,
    a2: DMatrix<Complex64>,
    b: DMatrix<Complex64>,
    c: DMatrix<Complex64>,
    imag: f64,
}

impl Blocks {
    /// Realness (real field only), zero lower-left block, equal diagonal blocks, `det A = 1`.
    fn base(&self) -> f64 {
        self.imag
            .max(self.c.camax())
            .max((&self.a - &self.a2).camax())
            .max((self.a.determinant() - 1.0).norm())
    }

    fn y(&self) -> Option<DMatrix<Complex64>> {
        self.a.clone().try_inverse().map(|inv| &self.b * inv)
    }

    fn trace_y(&self) -> f64 {
        self.y().map_or(f64::INFINITY, |y| y.trace().norm())
    }
}

fn blocks(m: &DMatrix<Complex64>, field: Field) -> Option<Blocks> {
    if !m.nrows().is_multiple_of(2) {
        return None;
    }
    let k = m.nrows() / 2;
    Some(Blocks {
        a: m.view((0, 0), (k, k)).into_owned(),
        a2: m.view((k, k), (k, k)).into_owned(),
        b: m.view((0, k), (k, k)).into_owned(),
        c: m.view((k, 0), (k, k)).into_owned(),
        imag: match field {
            Field::Real => m.iter().map(|z| z.im.abs()).fold(0.0, f64::max),
            Field::Complex => 0.0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn m2(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(2, 2, &[a, b, cc, d])
    }

    #[test]
    fn su2_member_and_non_member() {
        let (a, b) = (c(0.6, 0.0), c(0.0, 0.8));
        let g = m2(a, b, -b.conj(), a.conj());
        assert!(Predicate::SpecialUnitary.residual(&g) < 1e-15);
        let not = m2(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0));
        assert!(Predicate::SpecialUnitary.residual(&not) > 1.0);
        assert!(Predicate::SpecialLinear.residual(&not) < 1e-15);
    }

    #[test]
    fn triangular_families() {
        let an = m2(c(2.0, 0.0), c(1.0, -3.0), c(0.0, 0.0), c(0.5, 0.0));
        assert_eq!(Predicate::UpperPositive.residual(&an), 0.0);
        assert!(Predicate::UpperUnitaryDiagonal.residual(&an) > 0.5);
        let theta: f64 = 0.7;
        let tn = m2(c(theta.cos(), theta.sin()), c(4.0, 1.0), c(0.0, 0.0), c(theta.cos(), -theta.sin()));
        assert!(Predicate::UpperUnitaryDiagonal.residual(&tn) < 1e-15);
        assert!(Predicate::UpperPositive.residual(&tn) > 0.5);
        assert!(Predicate::DiagonalUnitary.residual(&tn) >= 4.0);
    }

    #[test]
    fn block_families() {
        let a = DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
        let y = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.5, 0.0), c(-2.0, 0.0), c(0.0, 0.0)]);
        let mut m = DMatrix::zeros(4, 4);
        m.view_mut((0, 0), (2, 2)).copy_from(&a);
        m.view_mut((2, 2), (2, 2)).copy_from(&a);
        m.view_mut((0, 2), (2, 2)).copy_from(&(&y * &a));
        assert!(Predicate::BlockSemidirect.residual(&m) < 1e-15);
        assert!(Predicate::BlockSplitTorusOffDiagonal.residual(&m) < 1e-15);
        assert!(Predicate::BlockDiagonal.residual(&m) > 1.0);
        assert!(Predicate::BlockUnipotent.residual(&m) > 0.5);
        m[(2, 0)] = c(1e-3, 0.0);
        assert!((Predicate::BlockSemidirect.residual(&m) - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn names_match_serde() {
        for p in [Predicate::SpecialLinear, Predicate::BlockSplitTorusOffDiagonal] {
            let json = serde_json::to_string(&p).unwrap();
            assert_eq!(json, format!("\"{}\"", p.name()));
        }
    }
}
