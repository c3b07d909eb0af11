use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use layerdent_core::hemisphere::{force_function, log_ratio, HemisphereModel, ALPHA_MAX};
use layerdent_core::kernel::{Kernel, KernelFn};
use layerdent_core::materials::Medium;
use layerdent_core::powerlaw::{kappa_inf, PowerLawModel, VALIDITY_LIMIT};
use layerdent_core::roots::solve_bracketed;
use layerdent_core::validate::{validate_suite, ValidationOptions};
use layerdent_core::Error;

use crate::config::{Format, RunConfig, SweepVar};
use crate::error::CliError;
use crate::output::{emit_json, emit_text, Cell, Row, Table};
use crate::setup::{Indenter, Setup};

pub const CURVE_HEADER: &[&str] = &["a", "w", "P", "eps", "varpi", "kappa", "dPdw", "valid"];
pub const INVERT_HEADER: &[&str] = &[
    "a_series", "w_series", "P_series", "a_numeric", "w_numeric", "P_numeric", "rel_diff_a",
    "rel_diff_w", "rel_diff_P", "valid",
];
pub const STIFFNESS_HEADER: &[&str] = &["a", "area", "eps", "kappa_inf", "dPdw", "dPdw_halfspace", "valid"];

/// Settings shared by every command.
pub struct Run<'a> {
    pub cfg: &'a RunConfig,
    pub format: Format,
    pub out: Option<&'a Path>,
    pub tol: f64,
}

fn valid(eps: f64) -> bool {
    eps <= VALIDITY_LIMIT
}

fn failed_row(width: usize, e: &Error) -> Row {
    let mut cells = vec![Cell::Num(f64::NAN); width - 1];
    cells.push(Cell::Flag(false));
    Row {
        cells,
        note: Some(e.to_string()),
    }
}

fn rows_in_order(points: &[f64], width: usize, f: impl Fn(f64) -> Result<Vec<Cell>, Error> + Sync) -> Vec<Row> {
    points
        .par_iter()
        .map(|&x| match f(x) {
            Ok(cells) => Row { cells, note: None },
            Err(e) => failed_row(width, &e),
        })
        .collect()
}

/// Half-space force on the sphere at displacement `w`.
fn hemisphere_halfspace_force(m: &HemisphereModel<f64>, w: f64, tol: f64) -> Result<f64, Error> {
    let disp = |al: f64| m.r * al * log_ratio(al) / 2.0;
    let al = solve_bracketed(disp, w, 0.0, ALPHA_MAX, tol)?;
    Ok(m.theta * m.r * m.r * force_function(al))
}

/// `(a, w, P, alpha)` for one sweep value.
fn hemisphere_point(m: &HemisphereModel<f64>, var: SweepVar, x: f64, tol: f64) -> Result<(f64, f64, f64, f64), Error> {
    match var {
        SweepVar::A => {
            let al = x / m.r;
            let (p, w) = m.parametric(al)?;
            Ok((x, w, p, al))
        }
        SweepVar::P => {
            let (s, a, w) = m.from_force(x)?;
            Ok((a, w, x, s.alpha))
        }
        SweepVar::W => {
            let al = solve_bracketed(|al| m.parametric(al).map_or(f64::NAN, |v| v.1), x, 0.0, ALPHA_MAX, tol)?;
            let (p, w) = m.parametric(al)?;
            Ok((m.r * al, w, p, al))
        }
    }
}

fn curve_cells(ind: &Indenter, var: SweepVar, x: f64, tol: f64) -> Result<Vec<Cell>, Error> {
    use Cell::{Flag, Num};
    match ind {
        Indenter::PowerLaw(m) => {
            let s = match var {
                SweepVar::A => m.parametric_state(x),
                SweepVar::W => m.state_from_displacement(x),
                SweepVar::P => m.state_from_force(x),
            };
            let kappa = m.kappa(s.eps);
            let dpdw = m.stiffness(s.a).rational;
            Ok(vec![Num(s.a), Num(s.w), Num(s.p), Num(s.eps), Num(s.varpi), Num(kappa), Num(dpdw), Flag(s.is_valid())])
        }
        Indenter::Hemisphere(m) => {
            let (a, w, p, al) = hemisphere_point(m, var, x, tol)?;
            let eps = a / m.h;
            let varpi = (w * m.r).sqrt() / m.h;
            let kappa = p / hemisphere_halfspace_force(m, w, tol)?;
            let dpdw = m.stiffness(al)?;
            let ok = valid(eps) && al < ALPHA_MAX;
            Ok(vec![Num(a), Num(w), Num(p), Num(eps), Num(varpi), Num(kappa), Num(dpdw), Flag(ok)])
        }
        Indenter::FlatPunch { a, theta, h, reduced } => {
            let eps = a / h;
            let k = kappa_inf(eps, reduced);
            let dpdw = 4.0 * theta * a * k;
            let (w, p) = match var {
                SweepVar::W => (x, dpdw * x),
                SweepVar::P => (x / dpdw, x),
                SweepVar::A => unreachable!("rejected before the sweep"),
            };
            Ok(vec![Num(*a), Num(w), Num(p), Num(eps), Num(eps), Num(k), Num(dpdw), Flag(valid(eps))])
        }
    }
}

fn indenter_and_sweep(run: &Run, setup: &Setup) -> Result<(Indenter, SweepVar, Vec<f64>), CliError> {
    let ind = Indenter::new(run.cfg.indenter()?, setup)?;
    let sweep = run.cfg.sweep()?;
    if matches!(ind, Indenter::FlatPunch { .. }) && sweep.variable == SweepVar::A {
        return Err(CliError::config(
            "a flat punch has a fixed radius; sweep over w or P instead of a",
        ));
    }
    Ok((ind, sweep.variable, sweep.points()))
}

pub fn curve(run: &Run) -> Result<(), CliError> {
    let setup = Setup::new(run.cfg, 1, run.tol)?;
    let (ind, var, points) = indenter_and_sweep(run, &setup)?;
    let root_tol = run.cfg.tolerances.root;
    let rows = rows_in_order(&points, CURVE_HEADER.len(), |x| curve_cells(&ind, var, x, root_tol));
    Table { header: CURVE_HEADER, rows }.emit(run.format, run.out)
}

/// Smallest power-of-two multiple of `start` at which `f` reaches `target`.
fn grow_bracket(f: &impl Fn(f64) -> f64, target: f64, start: f64, limit: f64) -> Result<f64, Error> {
    let mut hi = start;
    while f(hi) < target {
        hi *= 2.0;
        if hi > limit {
            return Err(Error::NoBracket { target, lo: 0.0, hi });
        }
    }
    Ok(hi)
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

fn powerlaw_invert(m: &PowerLawModel<f64>, var: SweepVar, x: f64, tol: f64) -> Result<Vec<Cell>, Error> {
    let (series, numeric) = match var {
        SweepVar::P => {
            let series = (m.radius_from_force(x), m.displacement_from_force(x), x);
            let f = |a: f64| m.force_at_radius(a);
            let hi = grow_bracket(&f, x, 0.05 * m.h, 64.0 * m.h)?;
            let a = solve_bracketed(f, x, 0.0, hi, tol)?;
            (series, (a, m.displacement_at_radius(a), x))
        }
        SweepVar::W => {
            let series = (m.radius_from_displacement(x), x, m.force_from_displacement(x));
            let f = |a: f64| m.displacement_at_radius(a);
            let hi = grow_bracket(&f, x, 0.05 * m.h, 64.0 * m.h)?;
            let a = solve_bracketed(f, x, 0.0, hi, tol)?;
            (series, (a, x, m.force_at_radius(a)))
        }
        SweepVar::A => unreachable!("rejected before the sweep"),
    };
    Ok(invert_cells(series, numeric, valid(series.0 / m.h)))
}

fn invert_cells(s: (f64, f64, f64), n: (f64, f64, f64), ok: bool) -> Vec<Cell> {
    use Cell::{Flag, Num};
    vec![
        Num(s.0),
        Num(s.1),
        Num(s.2),
        Num(n.0),
        Num(n.1),
        Num(n.2),
        Num(rel(s.0, n.0)),
        Num(rel(s.1, n.1)),
        Num(rel(s.2, n.2)),
        Flag(ok),
    ]
}

/// Force- or displacement-driven series against numeric inversion of the
/// parametric relations.
pub fn invert(run: &Run) -> Result<(), CliError> {
    let setup = Setup::new(run.cfg, 1, run.tol)?;
    let (ind, var, points) = indenter_and_sweep(run, &setup)?;
    if var == SweepVar::A {
        return Err(CliError::config("invert sweeps over w or P; a sweep over a needs no inversion"));
    }
    let tol = run.cfg.tolerances.root;
    let rows = match &ind {
        Indenter::PowerLaw(m) => rows_in_order(&points, INVERT_HEADER.len(), |x| powerlaw_invert(m, var, x, tol)),
        Indenter::Hemisphere(m) => {
            if var != SweepVar::P {
                return Err(CliError::config("hemisphere inversion is force driven; use sweep.variable = \"P\""));
            }
            rows_in_order(&points, INVERT_HEADER.len(), |p| {
                let (_, a, w) = m.from_force(p)?;
                let al = m.invert(p, true)?;
                let (_, wn) = m.parametric(al)?;
                Ok(invert_cells((a, w, p), (m.r * al, wn, p), valid(a / m.h)))
            })
        }
        Indenter::FlatPunch { .. } => {
            return Err(CliError::config("a flat punch has closed-form relations; nothing to invert"));
        }
    };
    Table { header: INVERT_HEADER, rows }.emit(run.format, run.out)
}

/// BASh stiffness with and without the layer correction.
pub fn stiffness(run: &Run) -> Result<(), CliError> {
    let setup = Setup::new(run.cfg, 1, run.tol)?;
    let sweep = run.cfg.sweep()?;
    let (theta, h) = (setup.sys.theta, setup.sys.h);
    let reduced = setup.reduced();
    let ind = match (&run.cfg.indenter, sweep.variable) {
        (_, SweepVar::A) => None,
        (Some(_), _) => Some(indenter_and_sweep(run, &setup)?.0),
        (None, _) => return Err(CliError::config("a sweep over w or P needs an [indenter] block")),
    };
    let root_tol = run.cfg.tolerances.root;
    let rows = rows_in_order(&sweep.points(), STIFFNESS_HEADER.len(), |x| {
        let a = match &ind {
            None => x,
            Some(i) => match curve_cells(i, sweep.variable, x, root_tol)?[0] {
                Cell::Num(a) => a,
                Cell::Flag(_) => unreachable!(),
            },
        };
        let eps = a / h;
        let k = kappa_inf(eps, &reduced);
        let half = 4.0 * theta * a;
        Ok(vec![
            Cell::Num(a),
            Cell::Num(std::f64::consts::PI * a * a),
            Cell::Num(eps),
            Cell::Num(k),
            Cell::Num(half * k),
            Cell::Num(half),
            Cell::Flag(valid(eps)),
        ])
    });
    Table { header: STIFFNESS_HEADER, rows }.emit(run.format, run.out)
}

fn medium_json(m: &Medium<f64>) -> Value {
    match m {
        Medium::Transverse(p) => json!({
            "kind": "transverse",
            "gamma1": p.gamma1,
            "gamma2": p.gamma2,
            "m1": p.m1,
            "m2": p.m2,
            "H": p.h,
            "theta": p.theta(),
        }),
        Medium::Isotropic { e, nu } => json!({
            "kind": "isotropic",
            "E": e,
            "nu": nu,
            "theta": m.theta(),
        }),
    }
}

/// Material, kernel and asymptotic-constant report.
pub fn coeffs(run: &Run) -> Result<(), CliError> {
    let setup = Setup::new(run.cfg, run.cfg.coeffs.order, run.tol)?;
    let c = &setup.consts;
    let form = match setup.kernel {
        Kernel::Transverse(_) => "transverse",
        Kernel::Isotropic(_) => "isotropic",
    };
    let report = json!({
        "h": setup.sys.h,
        "theta": setup.sys.theta,
        "a": c.a,
        "a_error": c.est_error,
        "K0": c.k0,
        "K1": c.k1,
        "u_max": c.u_max,
        "kernel": {
            "form": form,
            "L0": setup.kernel.eval(0.0),
            "theta_ratio": setup.sys.substrate.theta() / setup.sys.theta,
        },
        "layer": medium_json(&setup.sys.layer),
        "substrate": medium_json(&setup.sys.substrate),
    });
    match run.format {
        Format::Json => emit_json(&report, run.out),
        Format::Csv => {
            let mut text = String::from("key,value\n");
            flatten("", &report, &mut text);
            emit_text(&text, run.out)
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        Value::Number(n) => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            out.push_str(&format!("{prefix},{}\n", crate::output::sci(x)));
        }
        other => out.push_str(&format!("{prefix},{}\n", other.as_str().map_or(other.to_string(), str::to_string))),
    }
}

/// Self-consistency suite; fails with exit status 1 when any check fails.
pub fn validate(run: &Run, a1_perturbation: f64) -> Result<(), CliError> {
    let setup = Setup::new(run.cfg, 1, run.tol)?;
    let opts = ValidationOptions {
        a1_perturbation,
        ..ValidationOptions::default()
    };
    let report = validate_suite(&setup.kernel, setup.sys.theta, setup.sys.h, &setup.consts, &opts)?;
    match run.format {
        Format::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            emit_json(&json!({"passed": report.passed(), "checks": checks}), run.out)?;
        }
        Format::Csv => {
            let text: String = report.checks.iter().map(|c| format!("{c}\n")).collect();
            emit_text(&text, run.out)?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::ValidationFailed)
    }
}
