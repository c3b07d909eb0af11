//! Hemispherically ended indenter of tip radius `R`, described through
//! `alpha = a/R` and `mu = R/h`.

use crate::error::{Error, Result};
use crate::kernel::AsymptoticConstants;
use crate::materials::LayerSystem;
use crate::roots::solve_bracketed;
use crate::scalar::Real;

/// Largest admissible `alpha`; the logarithm diverges at the equator.
pub const ALPHA_MAX: f64 = 1.0 - 1e-9;

/// Below this `alpha` the closed forms lose digits to cancellation and the
/// Taylor series take over.
const SERIES_BELOW: f64 = 0.25;

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if alpha >= T::zero() && alpha <= T::lit(ALPHA_MAX) {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "alpha",
            value: alpha.as_f64(),
            domain: "[0, 1 - 1e-9]",
        })
    }
}

/// `ln((1 + alpha)/(1 - alpha))`.
pub fn log_ratio<T: Real>(alpha: T) -> T {
    T::lit(2.0) * alpha.atanh()
}

/// Sums `sum_{k >= k0} coef(k) alpha^(2k+1)` until the terms stop mattering.
fn odd_series<T: Real>(alpha: T, k0: i32, coef: impl Fn(f64) -> f64) -> T {
    let a2 = alpha * alpha;
    let mut p = alpha.powi(2 * k0 + 1);
    let mut sum = T::zero();
    for k in k0..k0 + 80 {
        let term = T::lit(coef(k as f64)) * p;
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() * T::lit(0.01) {
            break;
        }
        p = p * a2;
    }
    sum
}

/// `(1 + alpha^2) ln((1+alpha)/(1-alpha)) - 2 alpha`, the force function.
pub fn force_function<T: Real>(alpha: T) -> T {
    if alpha < T::lit(SERIES_BELOW) {
        T::lit(4.0) * odd_series(alpha, 1, |k| 2.0 * k / (4.0 * k * k - 1.0))
    } else {
        (T::one() + alpha * alpha) * log_ratio(alpha) - T::lit(2.0) * alpha
    }
}

/// The three shape integrals in units of `1`, `R^2`, `R^4`.
pub fn hemi_shape_integrals<T: Real>(alpha: T) -> Result<(T, T, T)> {
    check_alpha(alpha)?;
    let i1 = alpha.atanh();
    let i2 = force_function(alpha) / T::lit(4.0);
    let i3 = if alpha < T::lit(SERIES_BELOW) {
        odd_series(alpha, 2, |k| 1.0 / ((2.0 * k + 1.0) * (2.0 * k - 3.0)))
    } else {
        let a2 = alpha * alpha;
        alpha / T::lit(4.0) + alpha * a2 / T::lit(12.0)
            - (T::one() - a2 * a2) / T::lit(8.0) * log_ratio(alpha)
    };
    Ok((i1, i2, i3))
}

/// Solves `P/(theta R^2) = force_function(alpha0)` for `alpha0`.
pub fn alpha0_from_force<T: Real>(p: T, theta: T, r: T) -> Result<T> {
    if !(p > T::zero()) {
        return Err(Error::Domain {
            what: "P",
            value: p.as_f64(),
            domain: "(0, oo)",
        });
    }
    let target = p / (theta * r * r);
    let hi = T::lit(ALPHA_MAX);
    if target > force_function(hi) {
        return Err(Error::NoBracket {
            target: target.as_f64(),
            lo: 0.0,
            hi: ALPHA_MAX,
        });
    }
    solve_bracketed(force_function, target, T::zero(), hi, T::lit(1e-13))
}

/// Perturbation solution in `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HemisphereState<T> {
    pub r: T,
    /// `a / R` to order `mu^4`.
    pub alpha: T,
    pub mu: T,
    pub alpha0: T,
    /// Coefficient of `mu^3` in `a / R`.
    pub alpha3: T,
}

/// Hemispherical tip on a layer system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HemisphereModel<T> {
    pub r: T,
    pub theta: T,
    pub h: T,
    pub a0: T,
    pub a1: T,
}

impl<T: Real> HemisphereModel<T> {
    pub fn new(r: T, theta: T, h: T, a0: T, a1: T) -> Self {
        HemisphereModel { r, theta, h, a0, a1 }
    }

    pub fn from_system(r: T, sys: &LayerSystem<T>, consts: &AsymptoticConstants<T>) -> Self {
        Self::new(r, sys.theta, sys.h, consts.a0(), consts.a1())
    }

    pub fn mu(&self) -> T {
        self.r / self.h
    }

    /// `(P, w)` at `alpha = a/R`.
    pub fn parametric(&self, alpha: T) -> Result<(T, T)> {
        check_alpha(alpha)?;
        let pi = T::PI();
        let mu = self.mu();
        let lg = log_ratio(alpha);
        let ff = force_function(alpha);
        let a2 = alpha * alpha;
        let t = T::lit(8.0) * self.a1 / (T::lit(3.0) * pi);
        let p = self.theta * self.r * self.r * ff * (T::one() - (mu * alpha).powi(3) * t);
        let cubic = T::lit(2.0) * alpha * (T::lit(7.0) * a2 + T::lit(3.0))
            - (T::lit(7.0) * a2 * a2 + T::lit(6.0) * a2 + T::lit(3.0)) * lg;
        let w = alpha / T::lit(2.0) * lg - mu * self.a0 / (T::lit(2.0) * pi) * ff
            + mu.powi(3) * self.a1 / (T::lit(6.0) * pi) * cubic
            + mu.powi(4) * T::lit(4.0) * self.a0 * self.a1 / (T::lit(3.0) * pi * pi) * alpha.powi(3) * ff;
        Ok((p, self.r * w))
    }

    /// `dP/dw` at `alpha`, from the derivatives of the parametric relations.
    pub fn stiffness(&self, alpha: T) -> Result<T> {
        check_alpha(alpha)?;
        let pi = T::PI();
        let (one, two) = (T::one(), T::lit(2.0));
        let mu = self.mu();
        let a2 = alpha * alpha;
        let lg = log_ratio(alpha);
        let dlg = two / (one - a2);
        let ff = force_function(alpha);
        let dff = two * alpha * lg + T::lit(4.0) * a2 / (one - a2);
        let t = T::lit(8.0) * self.a1 / (T::lit(3.0) * pi);
        let m3 = mu.powi(3);
        let dp = self.theta * self.r * self.r * (dff * (one - m3 * a2 * alpha * t) - ff * T::lit(3.0) * m3 * a2 * t);
        let dcubic = T::lit(42.0) * a2 + T::lit(6.0)
            - (T::lit(28.0) * a2 * alpha + T::lit(12.0) * alpha) * lg
            - (T::lit(7.0) * a2 * a2 + T::lit(6.0) * a2 + T::lit(3.0)) * dlg;
        let dw = lg / two + alpha * dlg / two - mu * self.a0 / (two * pi) * dff
            + m3 * self.a1 / (T::lit(6.0) * pi) * dcubic
            + mu.powi(4) * T::lit(4.0) * self.a0 * self.a1 / (T::lit(3.0) * pi * pi)
                * (T::lit(3.0) * a2 * ff + a2 * alpha * dff);
        Ok(dp / (self.r * dw))
    }

    /// Perturbation expansion from the leading root `alpha0`; returns the
    /// state together with `(a, w)`.
    pub fn england_expansion(&self, alpha0: T) -> Result<(HemisphereState<T>, T, T)> {
        if !(alpha0 > T::zero() && alpha0 < T::one()) {
            return Err(Error::Domain {
                what: "alpha0",
                value: alpha0.as_f64(),
                domain: "(0, 1)",
            });
        }
        let pi = T::PI();
        let mu = self.mu();
        let lg = log_ratio(alpha0);
        let ff = force_function(alpha0);
        let a2 = alpha0 * alpha0;
        let alpha3 = T::lit(4.0) * self.a1 / (T::lit(3.0) * pi) * a2 * (T::one() - a2) * ff
            / ((T::one() - a2) * lg + T::lit(2.0) * alpha0);
        let alpha = alpha0 + mu.powi(3) * alpha3;
        let cubic = (T::lit(3.0) * a2 * a2 + T::lit(2.0) * a2 + T::lit(3.0)) * lg
            - T::lit(6.0) * alpha0 * (T::one() + a2);
        let w = alpha0 / T::lit(2.0) * lg - mu * self.a0 / (T::lit(2.0) * pi) * ff
            - mu.powi(3) * self.a1 / (T::lit(6.0) * pi) * cubic;
        let state = HemisphereState {
            r: self.r,
            alpha,
            mu,
            alpha0,
            alpha3,
        };
        Ok((state, self.r * alpha, self.r * w))
    }

    /// Force-driven evaluation via the leading root and the perturbation expansion.
    pub fn from_force(&self, p: T) -> Result<(HemisphereState<T>, T, T)> {
        let alpha0 = alpha0_from_force(p, self.theta, self.r)?;
        self.england_expansion(alpha0)
    }

    /// Solves `component(parametric(alpha)) = target` for `alpha`.
    pub fn invert(&self, target: T, use_force: bool) -> Result<T> {
        let f = |al: T| {
            self.parametric(al)
                .map(|(p, w)| if use_force { p } else { w })
                .unwrap_or_else(|_| T::nan())
        };
        solve_bracketed(f, target, T::zero(), T::lit(ALPHA_MAX), T::lit(1e-13))
    }
}
