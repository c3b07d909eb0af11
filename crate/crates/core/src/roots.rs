//! Bracketed scalar root finding for monotone maps.

use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_bracket<T: Real>(flo: T, fhi: T, target: T, lo: T, hi: T) -> Result<()> {
    let straddles = (flo - target) * (fhi - target) <= T::zero();
    if straddles && flo.is_finite() && fhi.is_finite() {
        Ok(())
    } else {
        Err(Error::NoBracket {
            target: target.as_f64(),
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        })
    }
}

/// Plain bisection for `f(x) = target` on `[lo, hi]`. Stops when the residual
/// is below `tol · max(1, |target|)` or the bracket stops shrinking.
pub fn bisect<T: Real, F: Fn(T) -> T>(f: F, target: T, lo: T, hi: T, tol: T) -> Result<T> {
    let (mut lo, mut hi) = (lo, hi);
    let flo = f(lo);
    let fhi = f(hi);
    check_bracket(flo, fhi, target, lo, hi)?;
    let scale = T::one().max(target.abs());
    let rising = fhi >= flo;
    let mut best = if (flo - target).abs() < (fhi - target).abs() { lo } else { hi };
    let mut best_res = (f(best) - target).abs();
    loop {
        if best_res <= tol * scale {
            return Ok(best);
        }
        let mid = lo + (hi - lo) / T::lit(2.0);
        if !(mid > lo && mid < hi) {
            return Ok(best);
        }
        let fm = f(mid);
        let res = (fm - target).abs();
        if res < best_res {
            best = mid;
            best_res = res;
        }
        if (fm < target) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Illinois-modified false position, falling back to bisection whenever the
/// secant step stalls. Same stopping rule as [`bisect`].
pub fn solve_bracketed<T: Real, F: Fn(T) -> T>(
    f: F,
    target: T,
    lo: T,
    hi: T,
    tol: T,
) -> Result<T> {
    let g = |x: T| f(x) - target;
    let (mut a, mut b) = (lo, hi);
    let (mut ga, mut gb) = (g(a), g(b));
    check_bracket(ga + target, gb + target, target, lo, hi)?;
    let scale = T::one().max(target.abs());
    if ga.abs() <= tol * scale {
        return Ok(a);
    }
    if gb.abs() <= tol * scale {
        return Ok(b);
    }
    let mut side = 0i8;
    for _ in 0..400 {
        let width = b - a;
        let mut x = (a * gb - b * ga) / (gb - ga);
        if !(x > a && x < b) || !x.is_finite() {
            x = a + width / T::lit(2.0);
        }
        let gx = g(x);
        if gx.abs() <= tol * scale {
            return Ok(x);
        }
        if (gx < T::zero()) == (ga < T::zero()) {
            a = x;
            ga = gx;
            if side == -1 {
                gb = gb / T::lit(2.0);
            }
            side = -1;
        } else {
            b = x;
            gb = gx;
            if side == 1 {
                ga = ga / T::lit(2.0);
            }
            side = 1;
        }
        if (b - a) > width * T::lit(0.5) {
            // secant made poor progress: force a bisection step
            let m = a + (b - a) / T::lit(2.0);
            if !(m > a && m < b) {
                return Ok(if ga.abs() < gb.abs() { a } else { b });
            }
            let gm = g(m);
            if gm.abs() <= tol * scale {
                return Ok(m);
            }
            if (gm < T::zero()) == (ga < T::zero()) {
                a = m;
                ga = gm;
            } else {
                b = m;
                gb = gm;
            }
            side = 0;
        }
        if !(b - a > T::epsilon() * a.abs().max(b.abs())) {
            return Ok(if ga.abs() < gb.abs() { a } else { b });
        }
    }
    Ok(if ga.abs() < gb.abs() { a } else { b })
}
