//! Independent numerical checks: direct quadrature of the transform
//! integrals and of the general-profile relations, bracketing inversion,
//! Newton reversion of truncated series and finite-difference stiffness.
//!
//! Nothing here is used by the production path.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{fit_tail_bound, AsymptoticConstants, KernelFn, TailBound};
use crate::materials::LayerSystem;
use crate::quadrature::{integrate, trapezoid_halving, QuadratureReport};
use crate::roots::bisect;
use crate::scalar::{Field, Real};
use crate::series::Series;
use crate::special::bessel_j0;

/// Default absolute tolerance of the transform quadratures.
pub const ORACLE_TOL: f64 = 1e-9;

/// Point beyond which the bounded tail of `int |1 - L|` is below `tol`.
fn cutoff<T: Real>(tail: &TailBound<T>, tol: T) -> T {
    let mut u = T::lit(20.0);
    while u < T::lit(4000.0) && tail.tail_integral(u, T::zero()) > tol {
        u = u + T::one();
    }
    u
}

/// Breakpoints: doubling points from 0.5, plus every half period of the
/// oscillating weight.
fn breakpoints<T: Real>(umax: T, freq: T) -> Vec<T> {
    let mut pts = vec![T::zero()];
    let mut b = T::lit(0.5);
    while b < umax {
        pts.push(b);
        b = b * T::lit(2.0);
    }
    if freq > T::zero() {
        let step = T::PI() / freq;
        let n = (umax / step).to_usize().unwrap_or(0).min(4000);
        pts.extend((1..=n).map(|i| step * T::lit(i as f64)).filter(|&u| u < umax));
    }
    pts.push(umax);
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    pts.dedup_by(|a, b| (*a - *b).abs() <= T::epsilon() * *b);
    pts
}

/// `int_0^oo (1 - L(u)) weight(u) du` for a weight bounded by one whose
/// oscillation frequency is at most `freq`.
pub fn weighted_transform<T: Real, K: KernelFn<T> + ?Sized>(
    k: &K,
    weight: impl Fn(T) -> T,
    freq: T,
    tol: T,
) -> Result<QuadratureReport<T>> {
    let tail = fit_tail_bound(k);
    let umax = cutoff(&tail, tol * T::lit(0.1));
    let pts = breakpoints(umax, freq);
    let f = |u: T| k.one_minus_l(u) * weight(u);
    let r = integrate(&f, &pts, tol * T::lit(0.1), T::zero(), 20_000);
    if !r.converged {
        return Err(Error::QuadratureNotConverged {
            estimate: r.value.as_f64(),
            error: r.est_error.as_f64(),
        });
    }
    Ok(r)
}

fn check_args<T: Real>(args: &[(&'static str, T)]) -> Result<()> {
    for &(name, v) in args {
        if !(v >= T::zero()) || !v.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                value: v.as_f64(),
                reason: "must be finite and non-negative",
            });
        }
    }
    Ok(())
}

/// `sin x / x - cos x`, by its series below `x = 0.5`.
fn sinc_minus_cos<T: Real>(x: T) -> T {
    if x.abs() < T::lit(0.5) {
        // sum_{j>=1} (-1)^(j+1) 2j x^(2j) / (2j+1)!
        let x2 = x * x;
        let mut p = x2;
        let mut fact = 6.0;
        let mut sum = T::zero();
        for j in 1..12 {
            let jf = j as f64;
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            sum = sum + T::lit(sign * 2.0 * jf / fact) * p;
            p = p * x2;
            fact *= (2.0 * jf + 2.0) * (2.0 * jf + 3.0);
        }
        sum
    } else {
        x.sin() / x - x.cos()
    }
}

/// `sin x / x - (2/x^2)(sin x / x - cos x)`, tending to `1/3`.
pub fn s4_weight<T: Real>(x: T) -> T {
    if x.abs() < T::lit(0.5) {
        // sum_j (-1)^j (2j+2)(2j+1) x^(2j) / (2j+3)!
        let x2 = x * x;
        let mut p = T::one();
        let mut fact = 6.0;
        let mut sum = T::zero();
        for j in 0..12 {
            let jf = j as f64;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sum = sum + T::lit(sign * (2.0 * jf + 2.0) * (2.0 * jf + 1.0) / fact) * p;
            p = p * x2;
            fact *= (2.0 * jf + 4.0) * (2.0 * jf + 5.0);
        }
        sum
    } else {
        x.sin() / x - T::lit(2.0) / (x * x) * sinc_minus_cos(x)
    }
}

/// `int (1 - L) J0(t u) du`.
pub fn quad_f<T: Real, K: KernelFn<T> + ?Sized>(t: T, k: &K, tol: T) -> Result<T> {
    check_args(&[("t", t)])?;
    Ok(weighted_transform(k, |u| bessel_j0(t * u), t, tol)?.value)
}

/// `int (1 - L) J0(sigma u) J0(tau u) du`.
pub fn quad_f2<T: Real, K: KernelFn<T> + ?Sized>(sigma: T, tau: T, k: &K, tol: T) -> Result<T> {
    check_args(&[("sigma", sigma), ("tau", tau)])?;
    let w = |u: T| bessel_j0(sigma * u) * bessel_j0(tau * u);
    Ok(weighted_transform(k, w, sigma + tau, tol)?.value)
}

/// `int (1 - L) J0(sigma u) cos(alpha u) du`.
pub fn quad_s0<T: Real, K: KernelFn<T> + ?Sized>(sigma: T, alpha: T, k: &K, tol: T) -> Result<T> {
    check_args(&[("sigma", sigma), ("alpha", alpha)])?;
    let w = |u: T| bessel_j0(sigma * u) * (alpha * u).cos();
    Ok(weighted_transform(k, w, sigma + alpha, tol)?.value)
}

/// `int (1 - L) J0(sigma u) sin(alpha u) / u du`.
pub fn quad_s2<T: Real, K: KernelFn<T> + ?Sized>(sigma: T, alpha: T, k: &K, tol: T) -> Result<T> {
    check_args(&[("sigma", sigma), ("alpha", alpha)])?;
    let w = |u: T| {
        let s = if u > T::zero() { (alpha * u).sin() / u } else { alpha };
        bessel_j0(sigma * u) * s
    };
    Ok(weighted_transform(k, w, sigma + alpha, tol)?.value)
}

/// `int (1 - L) J0(sigma u) (sin(alpha u)/u - alpha cos(alpha u)) du`.
pub fn quad_s2tilde<T: Real, K: KernelFn<T> + ?Sized>(
    sigma: T,
    alpha: T,
    k: &K,
    tol: T,
) -> Result<T> {
    check_args(&[("sigma", sigma), ("alpha", alpha)])?;
    let w = |u: T| bessel_j0(sigma * u) * alpha * sinc_minus_cos(alpha * u);
    Ok(weighted_transform(k, w, sigma + alpha, tol)?.value)
}

/// `int (1 - L) J0(sigma u) s4_weight(alpha u) du`.
pub fn quad_s4<T: Real, K: KernelFn<T> + ?Sized>(sigma: T, alpha: T, k: &K, tol: T) -> Result<T> {
    check_args(&[("sigma", sigma), ("alpha", alpha)])?;
    let w = |u: T| bessel_j0(sigma * u) * s4_weight(alpha * u);
    Ok(weighted_transform(k, w, sigma + alpha, tol)?.value)
}

/// Which profile a [`ShapeFunction`] describes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeKind<T> {
    PowerLaw { lambda: T, amplitude: T },
    Hemisphere { r: T },
    Zero,
    Custom,
}

type Profile<T> = Box<dyn Fn(T) -> T + Send + Sync>;

/// Indenter profile `Phi(r)` with its derivative.
pub struct ShapeFunction<T> {
    pub kind: ShapeKind<T>,
    phi: Profile<T>,
    dphi: Profile<T>,
}

impl<T> fmt::Debug for ShapeFunction<T>
where
    T: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ShapeFunction").field("kind", &self.kind).finish()
    }
}

impl<T: Real> ShapeFunction<T> {
    pub fn power_law(lambda: T, amplitude: T) -> Self {
        ShapeFunction {
            kind: ShapeKind::PowerLaw { lambda, amplitude },
            phi: Box::new(move |r: T| amplitude * r.powf(lambda)),
            dphi: Box::new(move |r: T| lambda * amplitude * r.powf(lambda - T::one())),
        }
    }

    /// `R - sqrt(R^2 - r^2)`.
    pub fn hemisphere(r: T) -> Self {
        ShapeFunction {
            kind: ShapeKind::Hemisphere { r },
            phi: Box::new(move |x: T| {
                // written without cancellation
                x * x / (r + (r * r - x * x).sqrt())
            }),
            dphi: Box::new(move |x: T| x / (r * r - x * x).sqrt()),
        }
    }

    pub fn zero() -> Self {
        ShapeFunction {
            kind: ShapeKind::Zero,
            phi: Box::new(|_| T::zero()),
            dphi: Box::new(|_| T::zero()),
        }
    }

    pub fn custom(
        phi: impl Fn(T) -> T + Send + Sync + 'static,
        dphi: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        ShapeFunction {
            kind: ShapeKind::Custom,
            phi: Box::new(phi),
            dphi: Box::new(dphi),
        }
    }

    pub fn phi(&self, r: T) -> T {
        (self.phi)(r)
    }

    pub fn dphi(&self, r: T) -> T {
        (self.dphi)(r)
    }
}

fn quarter_circle<T: Real>(f: impl Fn(T) -> T, tol: T) -> Result<T> {
    let pts: Vec<T> = (0..=4).map(|i| T::FRAC_PI_2() * T::lit(i as f64 / 4.0)).collect();
    let r = integrate(&f, &pts, T::min_positive_value(), tol, 4000);
    if !r.converged {
        return Err(Error::QuadratureNotConverged {
            estimate: r.value.as_f64(),
            error: r.est_error.as_f64(),
        });
    }
    Ok(r.value)
}

/// Force and displacement of an arbitrary convex profile at contact radius
/// `a`, by quadrature over `rho = a sin(phi)`.
pub fn exact_general_relations_with<T: Real>(
    a: T,
    shape: &ShapeFunction<T>,
    theta: T,
    h: T,
    a0: T,
    a1: T,
) -> Result<(T, T)> {
    if !(a > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a.as_f64(),
            reason: "contact radius must be positive",
        });
    }
    let tol = T::lit(1e-12);
    let pi = T::PI();
    let eps = a / h;
    let i1 = quarter_circle(|p: T| shape.dphi(a * p.sin()), tol)?;
    let i2 = quarter_circle(
        |p: T| {
            let s = p.sin();
            shape.dphi(a * s) * a * a * s * s
        },
        tol,
    )?;
    let i3 = quarter_circle(
        |p: T| {
            let s = p.sin();
            shape.phi(a * s) * (T::lit(2.0) * s * s - T::one()) * a * a * a * s
        },
        tol,
    )?;
    let t = T::lit(8.0) * a1 / (T::lit(3.0) * pi);
    let p = (T::one() - t * eps.powi(3)) * T::lit(4.0) * theta * i2;
    let w = (T::one() - T::lit(4.0) * a1 / (T::lit(3.0) * pi) * eps.powi(3)) * a * i1
        + T::lit(4.0) * a1 / (pi * h.powi(3)) * i3
        - T::lit(2.0) / (pi * h)
            * (a0 + T::lit(2.0) * a1 * eps * eps
                - T::lit(8.0) * a0 * a1 / (T::lit(3.0) * pi) * eps.powi(3))
            * i2;
    Ok((p, w))
}

/// [`exact_general_relations_with`] on a layer system.
pub fn exact_general_relations<T: Real>(
    a: T,
    shape: &ShapeFunction<T>,
    sys: &LayerSystem<T>,
    consts: &AsymptoticConstants<T>,
) -> Result<(T, T)> {
    exact_general_relations_with(a, shape, sys.theta, sys.h, consts.a0(), consts.a1())
}

/// Bisection for a monotone map; the residual bound is `1e-12 max(1, |target|)`.
pub fn bracket_invert<T: Real>(f: impl Fn(T) -> T, target: T, lo: T, hi: T) -> Result<T> {
    bisect(f, target, lo, hi, T::lit(1e-12))
}

/// Reverts `y = x (1 + c1 x + ... + c4 x^4)` by Newton iteration on
/// truncated polynomials.
pub fn series_revert<T: Field>(c: &[T; 4]) -> [T; 4] {
    let n = 5;
    let mut fc = vec![T::zero(), T::one()];
    fc.extend(c.iter().cloned());
    let f = Series::new(fc, n);
    let df = f.derivative();
    let y = Series::var(n);
    let mut x = y.clone();
    for _ in 0..4 {
        let resid = f.compose(&x).sub(&y);
        let slope = Series::new(df.compose(&x).coeffs().to_vec(), n);
        x = x.sub(&resid.mul(&slope.recip()));
    }
    [x.coeff(2), x.coeff(3), x.coeff(4), x.coeff(5)]
}

/// Reverts `y = x (1 + c1 x + ... + c4 x^4)^p`.
pub fn series_revert_power<T: Field>(c: &[T; 4], p: &T) -> [T; 4] {
    let mut b = vec![T::one()];
    b.extend(c.iter().cloned());
    let br = Series::new(b, 4).pow(p);
    series_revert(&[br.coeff(1), br.coeff(2), br.coeff(3), br.coeff(4)])
}

/// Richardson-extrapolated difference quotient with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteDifference<T> {
    pub value: T,
    pub est_error: T,
}

/// `dP/dw` of a curve `a -> (P, w)` from central differences at `delta`
/// and `delta/2`.
pub fn finite_diff_stiffness<T: Real>(
    curve: impl Fn(T) -> (T, T),
    a: T,
    delta: T,
) -> FiniteDifference<T> {
    let quotient = |d: T| {
        let (p1, w1) = curve(a + d);
        let (p0, w0) = curve(a - d);
        (p1 - p0) / (w1 - w0)
    };
    let coarse = quotient(delta);
    let fine = quotient(delta / T::lit(2.0));
    let value = fine + (fine - coarse) / T::lit(3.0);
    FiniteDifference {
        value,
        est_error: ((fine - coarse) / T::lit(3.0)).abs(),
    }
}

/// `int_0^oo (1 - L) du` by the trapezoid rule with step halving.
pub fn brute_force_a0<T: Real, K: KernelFn<T> + ?Sized>(k: &K, tol: T) -> Result<T> {
    let tail = fit_tail_bound(k);
    let umax = cutoff(&tail, tol * T::lit(0.1));
    let r = trapezoid_halving(&|u: T| k.one_minus_l(u), T::zero(), umax, tol, 30);
    if !r.converged {
        return Err(Error::QuadratureNotConverged {
            estimate: r.value.as_f64(),
            error: r.est_error.as_f64(),
        });
    }
    Ok(r.value)
}
