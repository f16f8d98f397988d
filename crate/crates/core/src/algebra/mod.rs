//! Lie algebras, bialgebras, Drinfeld doubles and lagrangian subalgebras,
//! independent of any group realization.

mod bialgebra;
mod double;
pub mod io;
mod lagrangian;
mod lie;
mod subspace;

pub use bialgebra::LieBialgebra;
pub use double::{double_from_bialgebra, BilinearForm, DoubleAlgebra, RR_NORMALIZATION};
pub use lagrangian::{
    drinfeld_subalgebra, is_lagrangian_splitting, is_lagrangian_subalgebra, LagrangianReport,
    QuotientFrame, SplittingReport,
};
pub use lie::{sl2, LieAlgebra};
pub use subspace::Subspace;


