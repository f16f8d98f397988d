//! The Poisson Lie structures `πD`, `πG`, `πG*`, the dressing action and the
//! affine Dirac structures `E = {(ρ_𝔡(z), −ξˡ) : z ∈ 𝔩}` on `G`.

mod bivector;
mod dressing;
mod quotient;

pub use bivector::{
    multiplicativity_residual, pi_d_at, pi_g_at, pi_gstar_at, pi_gstar_sharp, BivectorValue, Frame,
};
pub use dressing::{
    dirac_e_at, dirac_frame, dirac_isotropy_residual, dirac_rank, dressing, dressing_bracket_fd,
    dressing_projected, kernel_e_at, richardson, DiracElement,
};
pub use quotient::{
    coisotropy_residual, orthogonal, pi_dq_at, pushforward_pi_quotient, quotient_pi_invariance,
};
