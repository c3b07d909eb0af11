//! Blunt power-law indenters `Phi(r) = A r^lambda`, the cone and paraboloid
//! special cases, and the flat cylindrical punch as the `lambda -> oo` limit.

mod coeffs;
mod model;
mod shape;

pub use coeffs::{
    displacement_bracket, expansion_coeffs, force_coeffs, kappa_coeffs, kappa_inf_coeffs,
    radius_coeffs, reversion_coeffs, stiffness_expansion, stiffness_ratio_parts, varpi_coeffs,
    ExpansionCoeffs, Reduced,
};
pub use model::{
    bash_stiffness, flat_punch_force, kappa, kappa_inf, Exponent, IndentationState,
    PowerLawModel, Stiffness, ValidityWarning, VALIDITY_LIMIT,
};
pub use shape::{shape_factors, PowerLawShape, ShapeFactors};
