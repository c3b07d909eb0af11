use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::ln_gamma;

/// `Phi(r) = amplitude * r^lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawShape<T> {
    pub lambda: T,
    /// Units of length^(1 - lambda).
    pub amplitude: T,
}

impl<T: Real> PowerLawShape<T> {
    pub fn new(lambda: T, amplitude: T) -> Result<Self> {
        if !(lambda >= T::one()) || !lambda.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda.as_f64(),
                reason: "power-law exponent must be finite and at least 1",
            });
        }
        if !(amplitude > T::zero()) || !amplitude.is_finite() {
            return Err(Error::InvalidParameter {
                name: "A",
                value: amplitude.as_f64(),
                reason: "amplitude must be positive",
            });
        }
        Ok(PowerLawShape { lambda, amplitude })
    }

    /// Paraboloid of tip radius `r`: `lambda = 2`, `A = 1/(2r)`.
    pub fn paraboloid(r: T) -> Result<Self> {
        Self::new(T::lit(2.0), (T::lit(2.0) * r).recip())
    }

    /// Cone whose flank makes `angle` (radians) with the undeformed surface:
    /// `lambda = 1`, `A = tan(angle)`.
    pub fn cone(angle: T) -> Result<Self> {
        if !(angle > T::zero() && angle < T::FRAC_PI_2()) {
            return Err(Error::InvalidParameter {
                name: "angle",
                value: angle.as_f64(),
                reason: "cone angle must lie in (0, pi/2)",
            });
        }
        Self::new(T::one(), angle.tan())
    }

    pub fn profile(&self, r: T) -> T {
        self.amplitude * r.powf(self.lambda)
    }
}

/// The three shape factors of a power-law indenter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeFactors<T> {
    pub f1: T,
    pub f2: T,
    pub f3: T,
}

/// Shape factors evaluated through logarithms so that large `lambda` does not
/// overflow the gamma functions.
pub fn shape_factors<T: Real>(lambda: T) -> ShapeFactors<T> {
    let two = T::lit(2.0);
    let ln2 = two.ln();
    let ln_l = lambda.ln();
    let ln_l1 = (lambda + T::one()).ln();
    let ratio = two * ln_gamma(lambda / two) - ln_gamma(lambda);
    let f1 = (two * ln_l + lambda * ln2 - ln_l1 + ratio).exp();
    let f2 = (ln_l + (lambda - two) * ln2 + ratio).exp();
    let f3 = ((lambda - T::one()) / lambda * ln_l + (lambda + two) / lambda * ln2 - ln_l1
        - ratio / lambda)
        .exp();
    ShapeFactors { f1, f2, f3 }
}
