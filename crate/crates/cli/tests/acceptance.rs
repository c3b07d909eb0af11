//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use layerdent_core::hemisphere::{alpha0_from_force, force_function, hemi_shape_integrals, HemisphereModel};
use layerdent_core::kernel::{asymptotic_constants, build_kernel_ti, AsymptoticConstants, KernelModel};
use layerdent_core::materials::{
    build_layer_system, isotropic_theta, material_params, stiffness_from_engineering,
    EngineeringConstants, LayerSystem,
};
use layerdent_core::oracle::{
    brute_force_a0, exact_general_relations_with, finite_diff_stiffness, quad_s0, quad_s2tilde,
    quad_s4, ShapeFunction,
};
use layerdent_core::powerlaw::{
    force_coeffs, kappa_coeffs, kappa_inf_coeffs, radius_coeffs, shape_factors, stiffness_expansion,
    PowerLawModel, PowerLawShape, Reduced,
};
use layerdent_core::quadrature::integrate;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;

fn fixture_system() -> LayerSystem<f64> {
    let layer = EngineeringConstants::new(10.0, 20.0, 0.2, 0.25, 5.0).unwrap();
    let sub = EngineeringConstants::new(30.0, 15.0, 0.3, 0.2, 8.0).unwrap();
    build_layer_system(&layer, &sub, 1.0).unwrap()
}

fn fixture() -> (LayerSystem<f64>, KernelModel<f64>, AsymptoticConstants<f64>) {
    let sys = fixture_system();
    let k = build_kernel_ti(&sys).unwrap();
    let c = asymptotic_constants(&k, 1, 1e-11).unwrap();
    (sys, k, c)
}

fn rel(x: f64, y: f64) -> f64 {
    let scale = x.abs().max(y.abs());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).abs() / scale
    }
}

/// Tracks the worst relative error and the first comparison that broke `tol`.
struct Worst {
    tol: f64,
    max: f64,
    first_bad: Option<String>,
}

impl Worst {
    fn new(tol: f64) -> Self {
        Worst { tol, max: 0.0, first_bad: None }
    }

    fn see(&mut self, what: impl FnOnce() -> String, got: f64, want: f64) {
        let e = rel(got, want);
        self.max = self.max.max(e);
        if (e.is_nan() || e > self.tol) && self.first_bad.is_none() {
            self.first_bad = Some(format!("{}: got {got:e}, want {want:e}", what()));
        }
    }

    fn finish(self, label: &str) -> Outcome {
        match self.first_bad {
            None => Ok(format!("{label}: max relative error {:.2e} (tol {:e})", self.max, self.tol)),
            Some(b) => Err(format!("{label}: {b}; max relative error {:.2e} (tol {:e})", self.max, self.tol)),
        }
    }
}

/// `coarse/fine` inside `window`.
fn ratio_in(name: &str, coarse: f64, fine: f64, window: (f64, f64)) -> (bool, String) {
    let r = coarse.abs() / fine.abs();
    let ok = r >= window.0 && r <= window.1;
    (ok, format!("{name} {coarse:.3e} -> {fine:.3e}, ratio {r:.2} (window [{}, {}])", window.0, window.1))
}

fn join(parts: Vec<(bool, String)>) -> Outcome {
    let ok = parts.iter().all(|p| p.0);
    let text = parts.into_iter().map(|p| p.1).collect::<Vec<_>>().join("; ");
    if ok {
        Ok(text)
    } else {
        Err(text)
    }
}

// Printed expressions as functions of (a0, a1).

fn printed_b2(a0: f64, a1: f64) -> [f64; 4] {
    [
        2.0 * a0 / (3.0 * PI),
        10.0 * a0.powi(2) / (9.0 * PI.powi(2)),
        64.0 * a0.powi(3) / (27.0 * PI.powi(3)) + 8.0 * a1 / (5.0 * PI),
        154.0 * a0.powi(4) / (27.0 * PI.powi(4)) + 256.0 * a0 * a1 / (45.0 * PI.powi(2)),
    ]
}

fn printed_c2(a0: f64, a1: f64) -> [f64; 4] {
    [
        2.0 * a0 / PI,
        14.0 * a0.powi(2) / (3.0 * PI.powi(2)),
        320.0 * a0.powi(3) / (27.0 * PI.powi(3)) + 32.0 * a1 / (15.0 * PI),
        286.0 * a0.powi(4) / (9.0 * PI.powi(4)) + 64.0 * a0 * a1 / (5.0 * PI.powi(2)),
    ]
}

fn printed_b1(a0: f64, a1: f64) -> [f64; 4] {
    [
        a0 / PI,
        2.0 * a0.powi(2) / PI.powi(2),
        5.0 * a0.powi(3) / PI.powi(3) + 7.0 * a1 / (3.0 * PI),
        14.0 * a0.powi(4) / PI.powi(4) + 34.0 * a0 * a1 / (3.0 * PI.powi(2)),
    ]
}

fn printed_c1(a0: f64, a1: f64) -> [f64; 4] {
    [
        2.0 * a0 / PI,
        5.0 * a0.powi(2) / PI.powi(2),
        14.0 * a0.powi(3) / PI.powi(3) + 2.0 * a1 / PI,
        42.0 * a0.powi(4) / PI.powi(4) + 14.0 * a0 * a1 / PI.powi(2),
    ]
}

fn printed_kappa2(a0: f64, a1: f64) -> [f64; 4] {
    [
        2.0 * a0 / PI,
        10.0 * a0.powi(2) / (3.0 * PI.powi(2)),
        140.0 * a0.powi(3) / (27.0 * PI.powi(3)) + 32.0 * a1 / (15.0 * PI),
        70.0 * a0.powi(4) / (9.0 * PI.powi(4)) + 16.0 * a0 * a1 / (3.0 * PI.powi(2)),
    ]
}

fn printed_kappa_inf(a0: f64, a1: f64) -> [f64; 4] {
    let s = 2.0 * a0 / PI;
    [s, s * s, s.powi(3) + 8.0 * a1 / (3.0 * PI), s.powi(4) + 32.0 * a0 * a1 / (3.0 * PI.powi(2))]
}

/// Cone radius expansion: coefficients of `(cot g w/h)^k`.
fn printed_cone_radius(a0: f64, a1: f64) -> [f64; 4] {
    [
        2.0 * a0 / PI.powi(2),
        8.0 * a0.powi(2) / PI.powi(4),
        40.0 * a0.powi(3) / PI.powi(6) + 56.0 * a1 / (3.0 * PI.powi(4)),
        224.0 * a0.powi(4) / PI.powi(8) + 544.0 * a0 * a1 / (3.0 * PI.powi(6)),
    ]
}

/// Cone force expansion: coefficients of `(cot g w/h)^k`.
fn printed_cone_force(a0: f64, a1: f64) -> [f64; 4] {
    [
        4.0 * a0 / PI.powi(2),
        20.0 * a0.powi(2) / PI.powi(4),
        112.0 * a0.powi(3) / PI.powi(6) + 16.0 * a1 / PI.powi(4),
        672.0 * a0.powi(4) / PI.powi(8) + 224.0 * a0 * a1 / PI.powi(6),
    ]
}

fn poly(c: &[f64; 4], x: f64) -> f64 {
    1.0 + x * (c[0] + x * (c[1] + x * (c[2] + x * c[3])))
}

fn criterion_1() -> Outcome {
    let mut w = Worst::new(1e-12);
    let probes = [(1.0, 0.0), (0.0, 1.0)];
    type Computed = fn(&f64, &Reduced<f64>) -> [f64; 4];
    type Printed = fn(f64, f64) -> [f64; 4];
    let families: [(&str, f64, Computed, Printed); 5] = [
        ("B, lambda=2", 2.0, radius_coeffs, printed_b2),
        ("C, lambda=2", 2.0, force_coeffs, printed_c2),
        ("B, lambda=1", 1.0, radius_coeffs, printed_b1),
        ("C, lambda=1", 1.0, force_coeffs, printed_c1),
        ("kappa_2", 2.0, kappa_coeffs, printed_kappa2),
    ];
    for (a0, a1) in probes {
        let r = Reduced::from_constants(a0, a1);
        for (name, l, got, want) in &families {
            let (g, p) = (got(l, &r), want(a0, a1));
            for k in 0..4 {
                w.see(|| format!("{name} #{} at probe ({a0}, {a1})", k + 1), g[k], p[k]);
            }
        }
        let (g, p) = (kappa_inf_coeffs(&r), printed_kappa_inf(a0, a1));
        for k in 0..4 {
            w.see(|| format!("kappa_inf #{} at probe ({a0}, {a1})", k + 1), g[k], p[k]);
        }
        // Cone expansions: varpi = (2/pi) cot g w/h.
        let (b, c) = (radius_coeffs(&1.0, &r), force_coeffs(&1.0, &r));
        let (pr, pf) = (printed_cone_radius(a0, a1), printed_cone_force(a0, a1));
        for k in 0..4 {
            let scale = (2.0 / PI).powi(k as i32 + 1);
            w.see(|| format!("cone radius #{}", k + 1), b[k] * scale, pr[k]);
            w.see(|| format!("cone force #{}", k + 1), c[k] * scale, pf[k]);
        }
    }
    let f2 = shape_factors(2.0);
    let f1 = shape_factors(1.0);
    for (name, got, want) in [
        ("F1(2)", f2.f1, 16.0 / 3.0),
        ("F2(2)", f2.f2, 2.0),
        ("F3(2)", f2.f3, 4.0 * 2f64.sqrt() / 3.0),
        ("F1(1)", f1.f1, PI),
        ("F2(1)", f1.f2, PI / 2.0),
        ("F3(1)", f1.f3, 4.0 / PI),
    ] {
        w.see(|| name.to_string(), got, want);
    }
    // Cone curves through the model against the expanded closed forms.
    let (a0, a1, theta, h) = (0.67, -0.24, 1.3, 2.0);
    let gamma: f64 = 0.4;
    let cot = 1.0 / gamma.tan();
    let m = PowerLawModel::new(PowerLawShape::cone(gamma).unwrap(), theta, h, a0, a1);
    for &disp in &[0.01, 0.05, 0.1] {
        let x = cot * disp / h;
        let a = 2.0 * cot / PI * disp * poly(&printed_cone_radius(a0, a1), x);
        let p = 4.0 * theta * cot / PI * disp * disp * poly(&printed_cone_force(a0, a1), x);
        w.see(|| format!("cone a(w) at w={disp}"), m.radius_from_displacement(disp), a);
        w.see(|| format!("cone P(w) at w={disp}"), m.force_from_displacement(disp), p);
    }
    w.finish("printed coefficients")
}

fn criterion_2(consts: &AsymptoticConstants<f64>, theta: f64, h: f64) -> Outcome {
    let mut parts = Vec::new();
    for lambda in [1.0, 1.5, 2.0, 3.0] {
        let m = PowerLawModel::new(PowerLawShape::new(lambda, 1.0).unwrap(), theta, h, consts.a0(), consts.a1());
        let res = |eps: f64| {
            let w = m.parametric_state(eps * h).w;
            let wp = m.displacement_from_force(m.force_from_displacement(w));
            let wa = m.displacement_at_radius(m.radius_from_displacement(w));
            (wp / w - 1.0, wa / w - 1.0)
        };
        let (c, f) = (res(0.1), res(0.05));
        parts.push(ratio_in(&format!("lambda={lambda} w->P->w"), c.0, f.0, (20.0, 45.0)));
        parts.push(ratio_in(&format!("lambda={lambda} w->a->w"), c.1, f.1, (20.0, 45.0)));
    }
    join(parts)
}

fn criterion_3(consts: &AsymptoticConstants<f64>, theta: f64, h: f64) -> Outcome {
    let mut w = Worst::new(1e-12);
    for (a0, a1) in [(1.0, 0.0), (0.0, 1.0), (consts.a0(), consts.a1())] {
        let r = Reduced::from_constants(a0, a1);
        let printed = printed_kappa_inf(a0, a1);
        for lambda in [1.0, 2.0, 5.0, 50.0] {
            let e = stiffness_expansion(&lambda, &r);
            for k in 0..4 {
                w.see(|| format!("stiffness #{} at lambda={lambda}", k + 1), e[k], printed[k]);
            }
        }
    }
    let coeffs = w.finish("expansion equals kappa_inf");
    let mut fd_worst: f64 = 0.0;
    let mut fd_est: f64 = 0.0;
    for lambda in [1.0, 2.0, 5.0, 50.0] {
        let m = PowerLawModel::new(PowerLawShape::new(lambda, 1.0).unwrap(), theta, h, consts.a0(), consts.a1());
        let a = 0.1 * h;
        // step shrinks with lambda so the a^lambda curvature stays resolved
        let step = 1e-4 * a / lambda;
        let fd = finite_diff_stiffness(|x| { let s = m.parametric_state(x); (s.p, s.w) }, a, step);
        let exact = m.stiffness(a).rational;
        fd_worst = fd_worst.max(rel(fd.value, exact));
        fd_est = fd_est.max(fd.est_error / exact.abs());
    }
    let fd_ok = fd_worst < 1e-8 && fd_est < 1e-8;
    let fd_text = format!("finite difference at eps=0.1: max relative error {fd_worst:.2e}, Richardson estimate {fd_est:.2e}");
    match (coeffs, fd_ok) {
        (Ok(c), true) => Ok(format!("{c}; {fd_text}")),
        (Ok(c), false) | (Err(c), _) => Err(format!("{c}; {fd_text}")),
    }
}

/// The three hemisphere integrals in units of `R`, by quadrature in `t = a sin(phi)/a`
/// after `t = 1 - s^2`, which removes the inverse square root at `t = 1`.
fn hemisphere_integrals_by_quadrature(alpha: f64) -> (f64, f64, f64) {
    let dphi = |x: f64| x / (1.0 - x * x).sqrt();
    let phi = |x: f64| x * x / (1.0 + (1.0 - x * x).sqrt());
    let q = |g: &dyn Fn(f64) -> f64| {
        // int_0^1 g(t)/sqrt(1-t^2) dt = int_0^1 2 g(1-s^2)/sqrt(2-s^2) ds
        let f = |s: f64| 2.0 * g(1.0 - s * s) / (2.0 - s * s).sqrt();
        let r = integrate(&f, &[0.0, 0.25, 0.5, 0.75, 1.0], 1e-15, 1e-14, 5000);
        assert!(r.converged, "quadrature did not converge at alpha {alpha}");
        r.value
    };
    let i1 = q(&|t| dphi(alpha * t));
    let i2 = alpha * alpha * q(&|t| dphi(alpha * t) * t * t);
    let i3 = alpha.powi(3) * q(&|t| phi(alpha * t) * (2.0 * t * t - 1.0) * t);
    (i1, i2, i3)
}

fn criterion_4(consts: &AsymptoticConstants<f64>, theta: f64) -> Outcome {
    let r = 1.0;
    let mut worst: f64 = 0.0;
    for i in 0..=40 {
        let load = 1e-4 * (2e4f64).powf(i as f64 / 40.0);
        let alpha0 = alpha0_from_force(load * theta * r * r, theta, r).map_err(|e| e.to_string())?;
        worst = worst.max((force_function(alpha0) - load).abs() / load.max(1.0));
    }
    let root = (worst < 1e-12, format!("root residual {worst:.2e} over P/(theta R^2) in [1e-4, 2]"));

    let mut iw = Worst::new(1e-10);
    for k in 1..=9 {
        let alpha = k as f64 / 10.0;
        let (c1, c2, c3) = hemi_shape_integrals(alpha).unwrap();
        let (q1, q2, q3) = hemisphere_integrals_by_quadrature(alpha);
        iw.see(|| format!("I1({alpha})"), c1, q1);
        iw.see(|| format!("I2({alpha})"), c2, q2);
        iw.see(|| format!("I3({alpha})"), c3, q3);
    }
    let integrals = match iw.finish("closed-form integrals") {
        Ok(t) => (true, t),
        Err(t) => (false, t),
    };

    let load = 0.5 * theta * r * r;
    let residual = |mu: f64| -> Result<f64, String> {
        let m = HemisphereModel::new(r, theta, r / mu, consts.a0(), consts.a1());
        let (_, _, w_exp) = m.from_force(load).map_err(|e| e.to_string())?;
        let alpha = m.invert(load, true).map_err(|e| e.to_string())?;
        let (_, w_num) = m.parametric(alpha).map_err(|e| e.to_string())?;
        Ok((w_exp - w_num) / r)
    };
    let england = ratio_in("expansion vs numeric inversion, mu 0.2 -> 0.1", residual(0.2)?, residual(0.1)?, (20.0, 45.0));
    join(vec![root, integrals, england])
}

fn criterion_5(k: &KernelModel<f64>, consts: &AsymptoticConstants<f64>) -> Outcome {
    let same = EngineeringConstants::new(10.0, 20.0, 0.2, 0.25, 5.0).unwrap();
    let sys = build_layer_system(&same, &same, 1.0_f64).map_err(|e| e.to_string())?;
    let null = build_kernel_ti(&sys).map_err(|e| e.to_string())?;
    let nc: AsymptoticConstants<f64> = asymptotic_constants(&null, 1, 1e-11).map_err(|e| e.to_string())?;
    let null_ok = nc.a0().abs() < 1e-10 && nc.a1().abs() < 1e-10;
    let null_part = (null_ok, format!("identical materials |a0| {:.1e}, |a1| {:.1e}", nc.a0().abs(), nc.a1().abs()));

    let brute = brute_force_a0(k, 1e-10).map_err(|e| e.to_string())?;
    let d = (brute - consts.a0()).abs();
    let brute_part = (d < 1e-9, format!("trapezoid a0 differs by {d:.2e}"));

    let (a0, a1, tol) = (consts.a0(), consts.a1(), 1e-12);
    let e = |r: layerdent_core::Result<f64>| r.map_err(|e| e.to_string());
    let s0 = |x: f64| -> Result<f64, String> { Ok(e(quad_s0(x, x, k, tol))? - (a0 + a1 * (x * x + 2.0 * x * x))) };
    let s2t = |x: f64| -> Result<f64, String> { Ok(e(quad_s2tilde(x, x, k, tol))? + 4.0 / 3.0 * a1 * x.powi(3)) };
    let s4 = |x: f64| -> Result<f64, String> { Ok(e(quad_s4(x, x, k, tol))? - a0 / 3.0) };
    let window = (10.0, 25.0);
    join(vec![
        null_part,
        brute_part,
        ratio_in("S0 truncation", s0(0.1)?, s0(0.05)?, window),
        ratio_in("S2tilde truncation", s2t(0.1)?, s2t(0.05)?, window),
        ratio_in("S4 truncation", s4(0.1)?, s4(0.05)?, window),
    ])
}

fn criterion_6(sys: &LayerSystem<f64>, consts: &AsymptoticConstants<f64>) -> Outcome {
    let (theta, h, a0, a1) = (sys.theta, sys.h, consts.a0(), consts.a1());
    let mut w = Worst::new(1e-9);
    for lambda in [1.0, 2.0] {
        let amp = 0.7;
        let m = PowerLawModel::new(PowerLawShape::new(lambda, amp).unwrap(), theta, h, a0, a1);
        for eps in [0.05, 0.2] {
            let a = eps * h;
            let (p, wq) = exact_general_relations_with(a, &ShapeFunction::power_law(lambda, amp), theta, h, a0, a1)
                .map_err(|e| e.to_string())?;
            let s = m.parametric_state(a);
            w.see(|| format!("P, lambda={lambda}, eps={eps}"), p, s.p);
            w.see(|| format!("w, lambda={lambda}, eps={eps}"), wq, s.w);
        }
    }
    let r = 0.5;
    let hm = HemisphereModel::new(r, theta, h, a0, a1);
    for alpha in [0.1, 0.3] {
        let (p, wq) = exact_general_relations_with(alpha * r, &ShapeFunction::hemisphere(r), theta, h, a0, a1)
            .map_err(|e| e.to_string())?;
        let (pc, wc) = hm.parametric(alpha).map_err(|e| e.to_string())?;
        w.see(|| format!("hemisphere P, alpha={alpha}"), p, pc);
        w.see(|| format!("hemisphere w, alpha={alpha}"), wq, wc);
    }
    w.finish("general-shape quadrature vs closed forms")
}

fn criterion_7() -> Outcome {
    let strategy = (1.0..100.0f64, 1.0..100.0f64, -0.4..0.45f64, -0.4..0.45f64, 0.5..50.0f64).prop_filter_map(
        "unstable material",
        |(e, ea, nu, nua, g)| {
            let c = EngineeringConstants::new(e, ea, nu, nua, g).ok()?;
            material_params(&stiffness_from_engineering(&c).ok()?).ok()?;
            Some(c)
        },
    );
    let config = Config { cases: 1000, max_global_rejects: 100_000, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let (mut m_err, mut shear_err, mut quartic): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..1000 {
        let c = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let m = stiffness_from_engineering(&c).unwrap();
        let p = material_params(&m).unwrap();
        m_err = m_err.max((p.m1 * p.m2 - 1.0).abs());
        let shear = c.e / (1.0 + c.nu);
        shear_err = shear_err.max(((m.a11 - m.a12) - shear).abs() / shear);
        quartic = quartic.max(m.quartic_residual(p.gamma1)).max(m.quartic_residual(p.gamma2));
    }
    let random = m_err < 1e-12 && shear_err < 1e-12 && quartic < 1e-12;
    let random_text = format!(
        "1000 materials: |m1 m2 - 1| {m_err:.1e}, A11-A12 {shear_err:.1e}, quartic residual {quartic:.1e}"
    );

    let (e, nu) = (3.0, 0.3);
    let iso = isotropic_theta(e, nu);
    let mut errs = Vec::new();
    for k in 2..=6 {
        let delta = 10f64.powi(-k);
        let g = e / (2.0 * (1.0 + nu)) * (1.0 - delta);
        let c = EngineeringConstants::new(e, e, nu, nu, g).unwrap();
        let theta = material_params(&stiffness_from_engineering(&c).unwrap()).unwrap().theta();
        errs.push((theta / iso - 1.0).abs());
    }
    let limit = errs.windows(2).all(|w| w[1] < w[0]) && *errs.last().unwrap() < 1e-5;
    let iso_expected = e / (2.0 * (1.0 - nu * nu));
    let iso_ok = rel(iso, iso_expected) < 1e-15;
    let limit_text = format!(
        "theta -> E/(2(1-nu^2)) as shear anisotropy 1e-2..1e-6: errors {}",
        errs.iter().map(|x| format!("{x:.1e}")).collect::<Vec<_>>().join(", ")
    );
    join(vec![(random, random_text), (limit && iso_ok, limit_text)])
}

fn criterion_8() -> Outcome {
    let config = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/paraboloid.toml");
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_layerdent"))
            .args(["curve", "--config"])
            .arg(&config)
            .args(["--format", "csv"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
        }
        Ok(out.stdout)
    };
    let (first, second) = (run()?, run()?);
    if first == second && !first.is_empty() {
        Ok(format!("two curve runs, {} identical bytes", first.len()))
    } else {
        Err(format!("outputs differ ({} vs {} bytes)", first.len(), second.len()))
    }
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let Some(budget) = budget else {
        return out;
    };
    let note = format!("{:.2} s (budget {} s)", took.as_secs_f64(), budget.as_secs());
    match out {
        Ok(t) if took <= budget => Ok(format!("{t}; {note}")),
        Ok(t) | Err(t) => Err(format!("{t}; {note}")),
    }
}

fn main() -> ExitCode {
    let (sys, k, consts) = fixture();
    let (theta, h) = (sys.theta, sys.h);
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        ("1 printed coefficients", timed(secs(1), criterion_1)),
        ("2 fourth-order consistency", timed(secs(5), || criterion_2(&consts, theta, h))),
        ("3 stiffness equivalence", timed(secs(5), || criterion_3(&consts, theta, h))),
        ("4 hemisphere suite", timed(secs(10), || criterion_4(&consts, theta))),
        ("5 kernel and constants", timed(secs(30), || criterion_5(&k, &consts))),
        ("6 general-shape oracle", timed(secs(30), || criterion_6(&sys, &consts))),
        ("7 materials suite", timed(secs(5), criterion_7)),
        ("8 determinism", timed(None, criterion_8)),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(d) => println!("PASS criterion {name}: {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL criterion {name}: {d}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
