//! Self-consistency suite run by `layerdent validate`: truncation of the
//! transform integrals, round trips through the inversions, convergence
//! orders and hemisphere identities.

use std::fmt;

use crate::error::Result;
use crate::hemisphere::{alpha0_from_force, force_function, HemisphereModel};
use crate::kernel::{AsymptoticConstants, KernelFn};
use crate::oracle::{finite_diff_stiffness, quad_s0, quad_s2tilde, quad_s4};
use crate::powerlaw::{PowerLawModel, PowerLawShape};

/// Residuals below this are treated as exact and pass any order check.
pub const NOISE_FLOOR: f64 = 1e-13;

/// Ratio windows for halving the small parameter.
pub const ORDER2_WINDOW: (f64, f64) = (2.5, 6.0);
pub const ORDER4_WINDOW: (f64, f64) = (10.0, 25.0);
pub const ORDER5_WINDOW: (f64, f64) = (20.0, 45.0);
pub const ORDER6_WINDOW: (f64, f64) = (40.0, 90.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationOptions {
    /// Relative change applied to `a1` in the forward force relation only.
    /// Nonzero values break the round trip on purpose.
    pub a1_perturbation: f64,
    /// Quadrature tolerance of the transform checks.
    pub tol: f64,
    pub lambdas: Vec<f64>,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            a1_perturbation: 0.0,
            tol: 1e-12,
            lambdas: vec![1.0, 1.5, 2.0, 3.0],
        }
    }
}

/// `coarse / fine` with both residuals under the noise floor counted as a pass.
pub fn order_ratio(coarse: f64, fine: f64, window: (f64, f64)) -> (bool, String) {
    if coarse.abs() < NOISE_FLOOR && fine.abs() < NOISE_FLOOR {
        return (true, format!("residuals {coarse:.3e}, {fine:.3e} below noise floor"));
    }
    let ratio = coarse.abs() / fine.abs();
    let ok = ratio >= window.0 && ratio <= window.1;
    (
        ok,
        format!(
            "residuals {coarse:.3e} -> {fine:.3e}, ratio {ratio:.2} (window [{}, {}])",
            window.0, window.1
        ),
    )
}

fn transform_checks<K: KernelFn<f64> + ?Sized>(
    k: &K,
    consts: &AsymptoticConstants<f64>,
    tol: f64,
    report: &mut ValidationReport,
) -> Result<()> {
    let (a0, a1) = (consts.a0(), consts.a1());
    let s0 = |x: f64| -> Result<f64> { Ok(quad_s0(x, x, k, tol)? - (a0 + a1 * 3.0 * x * x)) };
    let s2t = |x: f64| -> Result<f64> { Ok(quad_s2tilde(x, x, k, tol)? + 4.0 / 3.0 * a1 * x.powi(3)) };
    let s4 = |x: f64| -> Result<f64> { Ok(quad_s4(x, x, k, tol)? - a0 / 3.0) };
    let (ok, d) = order_ratio(s0(0.1)?, s0(0.05)?, ORDER4_WINDOW);
    report.push("S0 truncation", ok, d);
    let (ok, d) = order_ratio(s2t(0.1)?, s2t(0.05)?, ORDER5_WINDOW);
    report.push("S2tilde truncation", ok, d);
    let (ok, d) = order_ratio(s4(0.1)?, s4(0.05)?, ORDER2_WINDOW);
    report.push("S4 truncation", ok, d);
    Ok(())
}

fn round_trip_checks(
    theta: f64,
    h: f64,
    consts: &AsymptoticConstants<f64>,
    opts: &ValidationOptions,
    report: &mut ValidationReport,
) -> Result<()> {
    let (a0, a1) = (consts.a0(), consts.a1());
    for &lambda in &opts.lambdas {
        let shape = PowerLawShape::new(lambda, 1.0)?;
        let model = PowerLawModel::new(shape, theta, h, a0, a1);
        let forward = PowerLawModel::new(shape, theta, h, a0, a1 * (1.0 + opts.a1_perturbation));
        let residuals = |eps: f64| {
            let w = model.parametric_state(eps * h).w;
            let p = forward.force_from_displacement(w);
            let wp = model.displacement_from_force(p);
            let a = model.radius_from_displacement(w);
            let wa = model.displacement_at_radius(a);
            (wp / w - 1.0, wa / w - 1.0)
        };
        let (c, f) = (residuals(0.1), residuals(0.05));
        let (ok, d) = order_ratio(c.0, f.0, ORDER5_WINDOW);
        report.push(format!("round trip w->P->w, lambda={lambda}"), ok, d);
        let (ok, d) = order_ratio(c.1, f.1, ORDER5_WINDOW);
        report.push(format!("round trip w->a->w, lambda={lambda}"), ok, d);

        let a = 0.1 * h;
        let fd = finite_diff_stiffness(
            |x| {
                let s = model.parametric_state(x);
                (s.p, s.w)
            },
            a,
            1e-4 * a,
        );
        let exact = model.stiffness(a).rational;
        let err = (fd.value / exact - 1.0).abs();
        report.push(
            format!("finite-difference stiffness, lambda={lambda}"),
            err < 1e-8 && fd.est_error < 1e-8 * exact.abs(),
            format!("relative difference {err:.3e}, Richardson estimate {:.3e}", fd.est_error),
        );
    }
    Ok(())
}

fn hemisphere_checks(
    theta: f64,
    consts: &AsymptoticConstants<f64>,
    report: &mut ValidationReport,
) -> Result<()> {
    let r = 1.0;
    let mut worst: f64 = 0.0;
    for i in 0..=40 {
        let load = 1e-4 * (2e4f64).powf(i as f64 / 40.0);
        let alpha0 = alpha0_from_force(load * theta * r * r, theta, r)?;
        worst = worst.max((force_function(alpha0) - load).abs() / load.max(1.0));
    }
    report.push(
        "hemisphere leading root residual",
        worst < 1e-12,
        format!("max residual {worst:.3e} over P/(theta R^2) in [1e-4, 2]"),
    );

    let load = 0.5 * theta * r * r;
    let residual = |mu: f64| -> Result<f64> {
        let m = HemisphereModel::new(r, theta, r / mu, consts.a0(), consts.a1());
        let (_, _, w_exp) = m.from_force(load)?;
        let alpha = m.invert(load, true)?;
        let (_, w_num) = m.parametric(alpha)?;
        Ok((w_exp - w_num) / r)
    };
    let (ok, d) = order_ratio(residual(0.2)?, residual(0.1)?, ORDER6_WINDOW);
    report.push("hemisphere perturbation vs numeric inversion", ok, d);
    Ok(())
}

/// Runs every check; only numeric failures inside a check abort the suite.
pub fn validate_suite<K: KernelFn<f64> + ?Sized>(
    k: &K,
    theta: f64,
    h: f64,
    consts: &AsymptoticConstants<f64>,
    opts: &ValidationOptions,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    transform_checks(k, consts, opts.tol, &mut report)?;
    round_trip_checks(theta, h, consts, opts, &mut report)?;
    hemisphere_checks(theta, consts, &mut report)?;
    Ok(report)
}
