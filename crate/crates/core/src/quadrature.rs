//! Adaptive Gauss-Kronrod and step-halving trapezoid quadrature.

use crate::scalar::Real;

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport<T> {
    pub value: T,
    pub est_error: T,
    pub panels: usize,
    pub converged: bool,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One 15-point Kronrod panel: returns (Kronrod estimate, |Kronrod - Gauss|).
pub fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = T::lit(0.5);
    let c = half * (a + b);
    let h = half * (b - a);
    let fc = f(c);
    let mut gauss = fc * T::lit(WG[3]);
    let mut kronrod = fc * T::lit(WGK[7]);
    for j in 0..7 {
        let dx = h * T::lit(XGK[j]);
        let s = f(c - dx) + f(c + dx);
        kronrod = kronrod + s * T::lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + s * T::lit(WG[j / 2]);
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Globally adaptive Gauss-Kronrod over the panels delimited by `points`
/// (sorted ascending, at least two). Bisects the worst panel until the summed
/// error estimate is below `max(abs_tol, rel_tol |value|)`.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: &F,
    points: &[T],
    abs_tol: T,
    rel_tol: T,
    max_panels: usize,
) -> QuadratureReport<T> {
    assert!(points.len() >= 2, "need at least one interval");
    let mut panels: Vec<(T, T, T, T)> = points
        .windows(2)
        .map(|w| {
            let (v, e) = gk15(f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();
    loop {
        let value = panels.iter().fold(T::zero(), |s, p| s + p.2);
        let error = panels.iter().fold(T::zero(), |s, p| s + p.3);
        let target = abs_tol.max(rel_tol * value.abs());
        if error <= target || panels.len() >= max_panels {
            return QuadratureReport {
                value,
                est_error: error,
                panels: panels.len(),
                converged: error <= target,
            };
        }
        let worst = panels
            .iter()
            .enumerate()
            .fold(0, |best, (i, p)| if p.3 > panels[best].3 { i } else { best });
        let (a, b, _, _) = panels[worst];
        let m = T::lit(0.5) * (a + b);
        if !(m > a && m < b) {
            // panel cannot be split further in this precision
            return QuadratureReport {
                value,
                est_error: error,
                panels: panels.len(),
                converged: false,
            };
        }
        let (vl, el) = gk15(f, a, m);
        let (vr, er) = gk15(f, m, b);
        panels[worst] = (a, m, vl, el);
        panels.push((m, b, vr, er));
    }
}

/// Composite trapezoid rule on `[a, b]`, halving the step until two
/// successive levels differ by less than `tol`.
pub fn trapezoid_halving<T: Real, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    tol: T,
    max_levels: usize,
) -> QuadratureReport<T> {
    let half = T::lit(0.5);
    let mut n: usize = 1;
    let mut h = b - a;
    let mut sum = half * (f(a) + f(b)) * h;
    for level in 1..=max_levels {
        let mut mid = T::zero();
        for i in 0..n {
            mid = mid + f(a + h * (T::lit(i as f64) + half));
        }
        let next = half * sum + half * h * mid;
        let change = (next - sum).abs();
        n *= 2;
        h = h * half;
        sum = next;
        if change < tol && level > 3 {
            return QuadratureReport {
                value: sum,
                est_error: change,
                panels: n,
                converged: true,
            };
        }
    }
    QuadratureReport {
        value: sum,
        est_error: T::infinity(),
        panels: n,
        converged: false,
    }
}

/// Romberg integration: trapezoid step halving with Richardson extrapolation,
/// stopped when two successive diagonal entries agree to `tol`.
pub fn romberg<T: Real, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    tol: T,
    max_levels: usize,
) -> QuadratureReport<T> {
    let half = T::lit(0.5);
    let mut h = b - a;
    let mut prev = vec![half * h * (f(a) + f(b))];
    let mut n: usize = 1;
    for level in 1..=max_levels {
        let mut mid = T::zero();
        for i in 0..n {
            mid = mid + f(a + h * (T::lit(i as f64) + half));
        }
        let mut row = vec![half * prev[0] + half * h * mid];
        let mut factor = T::one();
        for k in 1..=level {
            factor = factor * T::lit(4.0);
            let r = row[k - 1] + (row[k - 1] - prev[k - 1]) / (factor - T::one());
            row.push(r);
        }
        n *= 2;
        h = h * half;
        let change = (row[level] - prev[level - 1]).abs();
        if change < tol && level > 3 {
            return QuadratureReport {
                value: row[level],
                est_error: change,
                panels: n,
                converged: true,
            };
        }
        prev = row;
    }
    QuadratureReport {
        value: *prev.last().expect("non-empty"),
        est_error: T::infinity(),
        panels: n,
        converged: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn romberg_smooth() {
        let r = romberg(&|u: f64| u * u * (-2.0 * u).exp(), 0.0, 40.0, 1e-13, 20);
        assert!(r.converged);
        assert!((r.value - 0.25).abs() < 1e-12);
    }

    #[test]
    fn polynomial_exact_on_one_panel() {
        let (v, _) = gk15(&|x: f64| x.powi(6) - 3.0 * x, 0.0, 2.0);
        assert_relative_eq!(v, 128.0 / 7.0 - 6.0, max_relative = 1e-14);
    }

    #[test]
    fn decaying_integrand() {
        let r = integrate(&|u: f64| u * u * (-2.0 * u).exp(), &[0.0, 5.0, 40.0], 1e-13, 1e-13, 500);
        assert!(r.converged);
        assert_relative_eq!(r.value, 0.25, max_relative = 1e-12);
    }

    #[test]
    fn endpoint_singularity_is_reported_honestly() {
        let r = integrate(&|x: f64| 1.0 / x.sqrt(), &[0.0, 1.0], 1e-10, 0.0, 200);
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn trapezoid_matches() {
        let r = trapezoid_halving(&|u: f64| (-u).exp(), 0.0, 40.0, 1e-10, 30);
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-9);
    }
}
