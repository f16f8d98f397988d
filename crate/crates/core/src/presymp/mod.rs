//! The multiplicative 2-form ω on `𝒢(L)` and the checks that make
//! `(𝒢(L), ω)` a pre-symplectic groupoid: two evaluators of ω, closedness
//! (algebraic and by finite differences), multiplicativity, the kernel
//! condition at units, the cocycle `c`, the action of `𝒢(G*)` and the map `F`.

mod action;
mod closed;
mod dirac;
mod omega;

pub use action::{
    double_action_kappa, f_map, f_morphism_residual, f_psi_residual, fibered_tangent, gstar_multiply,
    gstar_source, gstar_target, gstar_unit, j_dirac_residuals, j_map, kappa_axioms_residual, kappa_pushforward,
    omegacond_residual, FiberedTangent,
};
pub use closed::{closedness_delta, closedness_fd, closedness_fd_convergence, converges, frame_bracket};
pub use dirac::{
    coadjoint_gstar_matrix, cocycle_checks, cocycle_infinitesimal_residual, cocycle_matrix, conds_residual, dt_matrix,
    kernel_condition, mu_eval, target_dirac_residual, CocycleReport, CocycleValue, KernelReport,
};
pub use omega::{multiplicativity_residual_omega, omega_eval, omega_severa_eval, TwoFormValue};
