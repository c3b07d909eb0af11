use std::fmt;

use thiserror::Error;

/// Which half of a layer/substrate pair an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Layer,
    Substrate,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::Layer => "layer",
            Which::Substrate => "substrate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("stability violated: 1 - nu - 2 (E/E_axial) nu_axial^2 = {denominator} is not positive")]
    StabilityViolation { denominator: f64 },
    #[error("characteristic roots are not real and distinct (discriminant {discriminant}); use the isotropic path")]
    DegenerateRoots { discriminant: f64 },
    #[error("{which} material: {source}")]
    Material {
        which: Which,
        source: Box<Error>,
    },
    #[error("kernel denominator Z = {z} is numerically singular against its largest term {scale}")]
    SingularZ { z: f64, scale: f64 },
    #[error("kernel has a pole (denominator {denominator}) near u = {u}")]
    KernelPole { u: f64, denominator: f64 },
    #[error("quadrature did not converge: estimate {estimate}, error estimate {error}")]
    QuadratureNotConverged { estimate: f64, error: f64 },
    #[error("target {target} is not bracketed by f({lo}) and f({hi})")]
    NoBracket { target: f64, lo: f64, hi: f64 },
    #[error("{what} = {value} outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },
}

impl Error {
    /// Wraps the error with the material it came from.
    pub fn in_material(self, which: Which) -> Self {
        Error::Material {
            which,
            source: Box::new(self),
        }
    }

    /// True for failures of an iterative numerical method rather than bad input.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::QuadratureNotConverged { .. } | Error::NoBracket { .. } => true,
            Error::Material { source, .. } => source.is_numeric(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
