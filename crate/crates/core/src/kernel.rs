//! The kernel `L(u)` of a layer/substrate pair, its asymptotic constants
//! `a_m`, and the double-index coefficient families built from them.
//!
//! `L -> 1` as `u -> oo` for every pair and `L == 1` for a homogeneous
//! half-space. Everything downstream only sees `1 - L(u)`, which is evaluated
//! directly so that no cancellation happens in the tail.

use crate::error::{Error, Result};
use crate::materials::{LayerSystem, MaterialParams, Medium};
use crate::quadrature::{integrate, romberg};
use crate::scalar::{horner, Field, Real};

/// Anything that can produce `1 - L(u)` for `u >= 0`.
pub trait KernelFn<T: Real>: Sync {
    fn one_minus_l(&self, u: T) -> T;

    fn eval(&self, u: T) -> T {
        T::one() - self.one_minus_l(u)
    }

    /// Expected tail shape `(rate, power)`: `|1 - L| ~ (1 + u)^power exp(-rate u)`.
    fn tail_shape(&self) -> (T, T);
}

/// Closed-form kernel of two bonded transversely isotropic materials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelModel<T> {
    pub a11: T,
    pub a12: T,
    pub a21: T,
    pub a22: T,
    pub z: T,
    /// `(gamma1 - gamma2)` of the layer over that of the substrate.
    pub g: T,
    /// `H2 (m1_layer - 1) / (H1 (m1_substrate - 1))`.
    pub h_ratio: T,
    /// `1 / gamma1` of the layer.
    pub decay1: T,
    /// `1 / gamma2` of the layer.
    pub decay2: T,
    layer_g1: T,
    layer_g2: T,
}

impl<T: Real> KernelModel<T> {
    /// The numerator `M` and denominator `N` at `(x, y)`.
    pub fn m_n(&self, x: T, y: T) -> (T, T) {
        let cross = self.layer_g1 * self.a12 - self.layer_g2 * self.a21;
        let det = self.a12 * self.a21 - self.a11 * self.a22;
        let (xx, yy, xy) = (x * x, y * y, x * y);
        let m = -cross * xy - self.layer_g1 * self.a11 * xx + self.layer_g2 * self.a22 * yy - det * xx * yy;
        let n = T::one()
            + T::lit(2.0) * cross * xy
            + (self.layer_g1 + self.layer_g2) * (self.a11 * xx - self.a22 * yy)
            + det * xx * yy;
        (m, n)
    }

    fn xy(&self, u: T) -> (T, T) {
        ((-u * self.decay1).exp(), (-u * self.decay2).exp())
    }
}

impl<T: Real> KernelFn<T> for KernelModel<T> {
    fn one_minus_l(&self, u: T) -> T {
        let (x, y) = self.xy(u);
        let (m, n) = self.m_n(x, y);
        -T::lit(2.0) * m / n
    }

    fn tail_shape(&self) -> (T, T) {
        (T::lit(2.0) * self.decay1, T::zero())
    }
}

fn params_of<T: Real>(m: &Medium<T>) -> Result<MaterialParams<T>> {
    match m {
        Medium::Transverse(p) => Ok(*p),
        Medium::Isotropic { e, .. } => Err(Error::InvalidParameter {
            name: "medium",
            value: e.as_f64(),
            reason: "the closed-form kernel needs real distinct roots in both materials",
        }),
    }
}

/// Builds the closed-form kernel for a pair of transversely isotropic media.
pub fn build_kernel_ti<T: Real>(sys: &LayerSystem<T>) -> Result<KernelModel<T>> {
    let l = params_of(&sys.layer)?;
    let s = params_of(&sys.substrate)?;
    let one = T::one();
    let two = T::lit(2.0);
    if (s.m1 - one).abs() <= T::epsilon() * T::lit(16.0) {
        return Err(Error::InvalidParameter {
            name: "m1 (substrate)",
            value: s.m1.as_f64(),
            reason: "must differ from 1",
        });
    }
    let (c11, c12, m11) = (l.gamma1, l.gamma2, l.m1);
    let (c21, c22, m21) = (s.gamma1, s.gamma2, s.m1);
    let (sg1, sg2) = (s.g1, s.g2);
    let hr = s.h * (m11 - one) / (l.h * (m21 - one));
    let g = (c11 - c12) / (c21 - c22);
    let dsub = c21 - c22;

    let t1 = hr * hr * ((c11 - c12) * (sg1 - m21 * m21 * sg2));
    let t2 = g * hr / dsub
        * ((m11 - one) * (m21 - one) * (c11 * c12 + c21 * c22)
            + two * (c21 - m21 * c22) * (c11 - m11 * c12));
    let t3 = g * g * (c11 - m11 * m11 * c12);
    let z = t1 - t2 + t3;
    let scale = t1.abs().max(t2.abs()).max(t3.abs());
    if z.abs() < T::lit(1e-14) * scale || z == T::zero() {
        return Err(Error::SingularZ {
            z: z.as_f64(),
            scale: scale.as_f64(),
        });
    }

    let a11 = one
        + two * c11 / z
            * ((-hr * hr * (c21 - m21 * m21 * c22)
                + g * hr * (two * (c21 - m21 * c22) + (m11 - one) * (m21 - one) * c12))
                / dsub
                - g * g);
    let brace = g * g * m11 - g * hr * (sg1 - m21 * sg2) * (m11 + one)
        + hr * hr * (sg1 - m21 * m21 * sg2);
    let a12 = two * c12 / z * brace;
    let a21 = two * c11 / z * brace;
    let a22 = one
        + two * c12 / z
            * ((hr * hr * (c21 - m21 * m21 * c22)
                - g * hr * (two * m11 * (c21 - m21 * c22) - (m11 - one) * (m21 - one) * c11))
                / dsub
                + g * g * m11 * m11);

    let k = KernelModel {
        a11,
        a12,
        a21,
        a22,
        z,
        g,
        h_ratio: hr,
        decay1: c11.recip(),
        decay2: c12.recip(),
        layer_g1: l.g1,
        layer_g2: l.g2,
    };
    let (rate, _) = k.tail_shape();
    check_no_pole(|u| k.m_n(k.xy(u).0, k.xy(u).1).1, T::lit(40.0) / rate)?;
    Ok(k)
}

/// Scans a denominator on `[0, u_end]` and rejects sign changes or near-zeros.
fn check_no_pole<T: Real, F: Fn(T) -> T>(den: F, u_end: T) -> Result<()> {
    let steps = 4000;
    for i in 0..=steps {
        let u = u_end * T::lit(i as f64 / steps as f64);
        let d = den(u);
        if !(d > T::lit(1e-10)) {
            return Err(Error::KernelPole {
                u: u.as_f64(),
                denominator: d.as_f64(),
            });
        }
    }
    Ok(())
}

/// Coefficients of the isotropic kernel
/// `1 - L = 2 e^{-2u} (d1 + d2 e^{-2u}) / (1 + d3 e^{-2u} + d2 e^{-4u})`,
/// each `d` a quadratic polynomial in `u` stored lowest degree first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicKernelCoeffs<T> {
    pub d1: [T; 3],
    pub d2: [T; 3],
    pub d3: [T; 3],
}

impl<T: Real> IsotropicKernelCoeffs<T> {
    /// Constant coefficients.
    pub fn constant(d1: T, d2: T, d3: T) -> Self {
        let z = T::zero();
        IsotropicKernelCoeffs {
            d1: [d1, z, z],
            d2: [d2, z, z],
            d3: [d3, z, z],
        }
    }

    /// The homogeneous half-space, `L == 1`.
    pub fn homogeneous() -> Self {
        Self::constant(T::zero(), T::zero(), T::zero())
    }

    /// Bonded isotropic layer (`e1`, `nu1`) on an isotropic half-space (`e2`, `nu2`).
    pub fn bonded_layer(e1: T, nu1: T, e2: T, nu2: T) -> Self {
        let two = T::lit(2.0);
        let four = T::lit(4.0);
        let mu1 = e1 / (two * (T::one() + nu1));
        let mu2 = e2 / (two * (T::one() + nu2));
        let k1 = T::lit(3.0) - four * nu1;
        let k2 = T::lit(3.0) - four * nu2;
        let gam = mu1 / mu2;
        let l = (gam * k2 - k1) / (T::one() + gam * k2);
        let m = (gam - T::one()) / (gam + k1);
        let z = T::zero();
        IsotropicKernelCoeffs {
            d1: [-(l + m) / two, -two * m, -two * m],
            d2: [l * m, z, z],
            d3: [-(l + m), z, -four * m],
        }
    }

    fn at(&self, u: T) -> (T, T, T) {
        (horner(&self.d1, &u), horner(&self.d2, &u), horner(&self.d3, &u))
    }

    fn denominator(&self, u: T) -> T {
        let (_, d2, d3) = self.at(u);
        let e = (-T::lit(2.0) * u).exp();
        T::one() + d3 * e + d2 * e * e
    }

    pub fn validate(&self) -> Result<()> {
        check_no_pole(|u| self.denominator(u), T::lit(40.0))
    }

    fn degree(p: &[T; 3]) -> usize {
        p.iter().rposition(|c| *c != T::zero()).unwrap_or(0)
    }
}

impl<T: Real> KernelFn<T> for IsotropicKernelCoeffs<T> {
    fn one_minus_l(&self, u: T) -> T {
        let (d1, d2, d3) = self.at(u);
        let e = (-T::lit(2.0) * u).exp();
        T::lit(2.0) * e * (d1 + d2 * e) / (T::one() + d3 * e + d2 * e * e)
    }

    fn tail_shape(&self) -> (T, T) {
        if self.d1.iter().any(|c| *c != T::zero()) {
            (T::lit(2.0), T::lit(Self::degree(&self.d1) as f64))
        } else {
            (T::lit(4.0), T::lit(Self::degree(&self.d2) as f64))
        }
    }
}

/// Either kernel form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel<T> {
    Transverse(KernelModel<T>),
    Isotropic(IsotropicKernelCoeffs<T>),
}

impl<T: Real> KernelFn<T> for Kernel<T> {
    fn one_minus_l(&self, u: T) -> T {
        match self {
            Kernel::Transverse(k) => k.one_minus_l(u),
            Kernel::Isotropic(k) => k.one_minus_l(u),
        }
    }

    fn tail_shape(&self) -> (T, T) {
        match self {
            Kernel::Transverse(k) => k.tail_shape(),
            Kernel::Isotropic(k) => k.tail_shape(),
        }
    }
}

/// A kernel given as a closure for `1 - L(u)` with a declared tail shape.
pub struct FnKernel<T, F> {
    f: F,
    rate: T,
    power: T,
}

impl<T: Real, F: Fn(T) -> T + Sync> FnKernel<T, F> {
    pub fn new(f: F, rate: T, power: T) -> Self {
        FnKernel { f, rate, power }
    }
}

impl<T: Real, F: Fn(T) -> T + Sync> KernelFn<T> for FnKernel<T, F> {
    fn one_minus_l(&self, u: T) -> T {
        (self.f)(u)
    }

    fn tail_shape(&self) -> (T, T) {
        (self.rate, self.power)
    }
}

/// Picks the kernel for a layer system. Two isotropic media use the bonded
/// layer coefficients unless `iso` overrides them; a mixed pair needs `iso`.
pub fn build_kernel<T: Real>(
    sys: &LayerSystem<T>,
    iso: Option<IsotropicKernelCoeffs<T>>,
) -> Result<Kernel<T>> {
    match (&sys.layer, &sys.substrate, iso) {
        (_, _, Some(c)) => {
            c.validate()?;
            Ok(Kernel::Isotropic(c))
        }
        (Medium::Transverse(_), Medium::Transverse(_), None) => {
            Ok(Kernel::Transverse(build_kernel_ti(sys)?))
        }
        (Medium::Isotropic { e: e1, nu: n1 }, Medium::Isotropic { e: e2, nu: n2 }, None) => {
            let c = IsotropicKernelCoeffs::bonded_layer(*e1, *n1, *e2, *n2);
            c.validate()?;
            Ok(Kernel::Isotropic(c))
        }
        _ => Err(Error::InvalidParameter {
            name: "d-coefficients",
            value: f64::NAN,
            reason: "a mixed isotropic / transversely isotropic pair needs explicit d1, d2, d3",
        }),
    }
}

/// Empirical tail bound `|1 - L(u)| <= c (1 + u)^power exp(-rate u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound<T> {
    pub c: T,
    pub rate: T,
    pub power: T,
    /// Largest relative excess of the samples over the least-squares fit,
    /// before `c` was inflated to cover them.
    pub violation: T,
}

impl<T: Real> TailBound<T> {
    pub fn at(&self, u: T) -> T {
        self.c * (T::one() + u).powf(self.power) * (-self.rate * u).exp()
    }

    /// Upper estimate of `int_U^oo bound(u) u^extra du`.
    pub fn tail_integral(&self, from: T, extra: T) -> T {
        let q = self.power + extra;
        let slope = self.rate - q / (T::one() + from);
        if slope <= T::zero() {
            return T::infinity();
        }
        self.at(from) * (T::one() + from).powf(extra) / slope
    }
}

/// Kernels whose `1 - L` never exceeds this are treated as homogeneous.
const NULL_KERNEL: f64 = 1e-14;

/// Fits the tail bound on `u in [2, 20]` against the running upper envelope of
/// `|1 - L|`, with the power fixed by the kernel's tail shape.
pub fn fit_tail_bound<T: Real, K: KernelFn<T> + ?Sized>(k: &K) -> TailBound<T> {
    let (rate_hint, power) = k.tail_shape();
    let n = 181;
    let us: Vec<T> = (0..n)
        .map(|i| T::lit(2.0) + T::lit(18.0) * T::lit(i as f64 / (n - 1) as f64))
        .collect();
    let mut env: Vec<T> = us.iter().map(|&u| k.one_minus_l(u).abs()).collect();
    for i in (0..n - 1).rev() {
        env[i] = env[i].max(env[i + 1]);
    }
    let peak = (0..=40)
        .map(|i| k.one_minus_l(T::lit(i as f64 * 0.05)).abs())
        .fold(env[0], T::max);
    if peak < T::lit(NULL_KERNEL) {
        return TailBound {
            c: peak,
            rate: rate_hint,
            power,
            violation: T::zero(),
        };
    }
    // least squares of ln(env) - power ln(1+u) = ln c - rate u over positive samples
    let pts: Vec<(T, T)> = us
        .iter()
        .zip(&env)
        .filter(|(_, e)| **e > T::min_positive_value())
        .map(|(&u, &e)| (u, e.ln() - power * (T::one() + u).ln()))
        .collect();
    let m = T::lit(pts.len() as f64);
    let (sx, sy) = pts.iter().fold((T::zero(), T::zero()), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / m, sy / m);
    let (sxy, sxx) = pts.iter().fold((T::zero(), T::zero()), |(a, b), p| {
        (a + (p.0 - mx) * (p.1 - my), b + (p.0 - mx) * (p.0 - mx))
    });
    let slope = sxy / sxx;
    let rate = -slope;
    let c = (my - slope * mx).exp();
    let mut fit = TailBound {
        c,
        rate,
        power,
        violation: T::zero(),
    };
    let violation = us
        .iter()
        .zip(&env)
        .map(|(&u, &e)| e / fit.at(u) - T::one())
        .fold(T::zero(), T::max);
    fit.violation = violation;
    fit.c = c * (T::one() + violation);
    fit
}

/// `a_m` for `m = 0..=order`, with England's `K0`, `K1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticConstants<T> {
    pub a: Vec<T>,
    pub k0: T,
    pub k1: T,
    /// Absolute error estimate for each `a_m` (quadrature plus truncated tail).
    pub est_error: Vec<T>,
    /// Truncation point used for `a_0`.
    pub u_max: T,
}

impl<T: Real> AsymptoticConstants<T> {
    /// Constants supplied directly rather than integrated.
    pub fn from_values(a0: T, a1: T) -> Self {
        AsymptoticConstants {
            a: vec![a0, a1],
            k0: -T::lit(2.0) * a0 / T::PI(),
            k1: -T::lit(4.0) * a1 / T::PI(),
            est_error: vec![T::zero(), T::zero()],
            u_max: T::zero(),
        }
    }

    pub fn a0(&self) -> T {
        self.a[0]
    }

    pub fn a1(&self) -> T {
        self.a.get(1).copied().unwrap_or_else(T::zero)
    }
}

/// `(2m)!! = 2 4 ... 2m`, with `0!! = 1`.
fn double_factorial_even(m: usize) -> f64 {
    (1..=m).map(|j| 2.0 * j as f64).product()
}

/// Truncation point where the bound on the neglected tail of
/// `int (1 - L) u^{2m}` drops below `1e-13`.
fn truncation_point<T: Real>(tail: &TailBound<T>, m: usize) -> T {
    let extra = T::lit(2.0 * m as f64);
    let mut u = T::lit(20.0);
    while u < T::lit(4000.0) && tail.tail_integral(u, extra) > T::lit(1e-13) {
        u = u + T::one();
    }
    u
}

/// `a_m = ((-1)^m / [(2m)!!]^2) int_0^oo (1 - L(u)) u^{2m} du` for `m <= order`.
///
/// Each integral runs adaptive Gauss-Kronrod on `[0, u_max]` to `tol` and is
/// cross-checked by Romberg extrapolation; disagreement above `1e-9` is an error.
pub fn asymptotic_constants<T: Real, K: KernelFn<T> + ?Sized>(
    k: &K,
    order: usize,
    tol: T,
) -> Result<AsymptoticConstants<T>> {
    let tail = fit_tail_bound(k);
    let mut a = Vec::with_capacity(order + 1);
    let mut est = Vec::with_capacity(order + 1);
    let mut u0 = T::zero();
    for m in 0..=order {
        let umax = truncation_point(&tail, m);
        if m == 0 {
            u0 = umax;
        }
        let p = 2 * m as i32;
        let f = |u: T| k.one_minus_l(u) * u.powi(p);
        let mut points = vec![T::zero()];
        let mut b = T::lit(0.5);
        while b < umax {
            points.push(b);
            b = b * T::lit(2.0);
        }
        points.push(umax);
        let gk = integrate(&f, &points, tol * T::lit(0.01), T::zero(), 4000);
        let check = romberg(&f, T::zero(), umax, T::lit(1e-11), 22);
        let disagreement = (gk.value - check.value).abs();
        if !gk.converged || disagreement > T::lit(1e-9) {
            return Err(Error::QuadratureNotConverged {
                estimate: gk.value.as_f64(),
                error: gk.est_error.max(disagreement).as_f64(),
            });
        }
        let sign = if m % 2 == 0 { T::one() } else { -T::one() };
        let df = T::lit(double_factorial_even(m));
        a.push(sign * gk.value / (df * df));
        let tail_err = tail.tail_integral(umax, T::lit(2.0 * m as f64));
        est.push((gk.est_error + tail_err) / (df * df));
    }
    let a0 = a[0];
    let a1 = a.get(1).copied().unwrap_or_else(T::zero);
    Ok(AsymptoticConstants {
        k0: -T::lit(2.0) * a0 / T::PI(),
        k1: -T::lit(4.0) * a1 / T::PI(),
        a,
        est_error: est,
        u_max: u0,
    })
}

/// Triangular double-index coefficient arrays; entry `[i][j]` exists for
/// `i + j <= order` and is proportional to `a_{i+j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients<T> {
    pub order: usize,
    pub b: Vec<Vec<T>>,
    pub b0: Vec<Vec<T>>,
    pub b2t: Vec<Vec<T>>,
}

fn factorial<T: Field>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::int(k as i64))
}

/// Builds the `b`, `b0` and `b2t` families from `a_0..=a_order`.
pub fn series_coefficients<T: Field>(a: &[T], order: usize) -> SeriesCoefficients<T> {
    assert!(a.len() > order, "need a_m up to m = order");
    let mut b = Vec::new();
    let mut b0 = Vec::new();
    let mut b2t = Vec::new();
    for i in 0..=order {
        let (mut rb, mut rb0, mut rb2t) = (Vec::new(), Vec::new(), Vec::new());
        for j in 0..=(order - i) {
            let m = i + j;
            let mf2 = factorial::<T>(m) * factorial::<T>(m);
            let if2 = factorial::<T>(i) * factorial::<T>(i);
            let jf2 = factorial::<T>(j) * factorial::<T>(j);
            let am = a[m].clone();
            let four_j = (0..j).fold(T::one(), |acc, _| acc * T::int(4));
            rb.push(mf2.clone() / (if2.clone() * jf2) * am.clone());
            rb0.push(four_j.clone() * mf2.clone() / (if2.clone() * factorial::<T>(2 * j)) * am.clone());
            rb2t.push(
                -(four_j * T::int(2) * T::int(j as i64)) * mf2 / (if2 * factorial::<T>(2 * j + 1)) * am,
            );
        }
        b.push(rb);
        b0.push(rb0);
        b2t.push(rb2t);
    }
    SeriesCoefficients { order, b, b0, b2t }
}
