//! Exact arithmetic kernel.
//!
//! [`BiPoly`] is a sparse bivariate polynomial with arbitrary-precision rational
//! coefficients. Resultants are computed with a subresultant remainder sequence
//! over `Z[x]`, and local intersection multiplicities at the origin are read off
//! from the x-order of those resultants.

mod bipoly;
mod intersection;
mod resultant;
mod zpoly;

pub use bipoly::{BiPoly, Var};
pub use intersection::{
    fulton_intersection, intersection_multiplicity, milnor_number, Multiplicity,
};
pub use resultant::resultant_y;
pub use zpoly::ZPoly;

/// `jac(g, f) = ∂g/∂x · ∂f/∂y − ∂g/∂y · ∂f/∂x`.
pub fn jacobian_det(g: &BiPoly, f: &BiPoly) -> BiPoly {
    let gx = g.derivative(Var::X);
    let gy = g.derivative(Var::Y);
    let fx = f.derivative(Var::X);
    let fy = f.derivative(Var::Y);
    &(&gx * &fy) - &(&gy * &fx)
}
