//! Matrix realizations of the double `D` and its subgroups `G`, `G*`, `L`,
//! `H`, with exponential, (co)adjoint actions, Maurer–Cartan forms and global
//! factorization `D = G*·G`.

pub mod expm;
pub mod factor;
mod gond;
pub mod io;
mod model;
pub mod models;
mod predicate;

pub use factor::FactorizationOracle;
pub use model::{Factorization, Mat, MatrixGroupModel, ModelParts, PairingKind, Side, Subgroup, Tag};
pub use gond::verify_gond1;
pub use predicate::Predicate;

