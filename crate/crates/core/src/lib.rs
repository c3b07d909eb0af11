//! Force, displacement and contact radius for a rigid axisymmetric indenter
//! pressed into a transversely isotropic layer bonded to a substrate, using a
//! fourth-order asymptotic model in the relative contact radius `a/h`.
//!
//! The pipeline runs
//! [`materials`] → [`kernel`] → [`powerlaw`] / [`hemisphere`], with
//! [`oracle`] providing independent quadrature and root-finding checks.
//!
//! All numerical code is generic over [`Real`] (`f32`, `f64`); coefficient
//! algebra is generic over [`Field`] and also runs in exact `BigRational`.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hemisphere;
pub mod kernel;
pub mod materials;
pub mod oracle;
pub mod powerlaw;
pub mod quadrature;
pub mod roots;
pub mod scalar;
pub mod series;
pub mod special;
pub mod validate;

pub use error::{Error, Result, Which};
pub use scalar::{Field, Real};

/// Exact rational scalar.
pub type Exact = num_rational::BigRational;

pub type LayerSystemF64 = materials::LayerSystem<f64>;
pub type KernelF64 = kernel::Kernel<f64>;
pub type AsymptoticConstantsF64 = kernel::AsymptoticConstants<f64>;
pub type PowerLawModelF64 = powerlaw::PowerLawModel<f64>;
pub type HemisphereModelF64 = hemisphere::HemisphereModel<f64>;
pub type ExpansionCoeffsF64 = powerlaw::ExpansionCoeffs<f64>;
pub type ExpansionCoeffsExact = powerlaw::ExpansionCoeffs<Exact>;

pub type LayerSystemF32 = materials::LayerSystem<f32>;
pub type PowerLawModelF32 = powerlaw::PowerLawModel<f32>;
