//! The groupoid `𝒢(L) ⇉ G` of quadruples `(v, g₁, g₂, l)` with
//! `v̄ḡ₁ = ḡ₂l̄⁻¹`, and its `(w, z)` tangent chart.

mod point;
mod tangent;

pub use point::{
    constraint_residual, distance, inverse, make_point, multiply, point_from_chart, psi,
    random_composable, random_point, source, target, unit, GroupoidPoint,
};
pub use tangent::{
    chart_basis, matching_w, random_tangent, realize_tangent, tangency_residual, tangent_multiply,
    tangent_multiply_residual, GroupoidTangent, RealizedTangent,
};
