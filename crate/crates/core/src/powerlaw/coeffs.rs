//! Expansion coefficients as exact functions of `(lambda, s, t)`.
//!
//! Every coefficient is a polynomial in the reduced constants
//! `s = 2 a0 / pi` and `t = 8 a1 / (3 pi)` with rational-in-`lambda`
//! weights, so these routines only need field arithmetic and run unchanged in
//! exact rational arithmetic.

use crate::scalar::{Field, Real};
use crate::series::{lagrange_revert, Series};

/// Reduced asymptotic constants `s = 2 a0 / pi`, `t = 8 a1 / (3 pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduced<T> {
    pub s: T,
    pub t: T,
}

impl<T: Real> Reduced<T> {
    pub fn from_constants(a0: T, a1: T) -> Self {
        Reduced {
            s: T::lit(2.0) * a0 / T::PI(),
            t: T::lit(8.0) * a1 / (T::lit(3.0) * T::PI()),
        }
    }
}

/// All coefficient families for one `(lambda, a0, a1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoeffs<T> {
    /// Contact radius from displacement.
    pub b: [T; 4],
    /// Force correction in powers of the reduced displacement.
    pub c: [T; 4],
    /// Reduced displacement from reduced force (series reversion).
    pub d: [T; 4],
    /// Indentation scaling factor in powers of `eps`.
    pub kappa: [T; 4],
    /// Reduced displacement as a series in `eps`.
    pub e: [T; 4],
}

fn n<T: Field>(k: i64) -> T {
    T::int(k)
}

/// `lambda + k`.
fn lp<T: Field>(l: &T, k: i64) -> T {
    l.clone() + n(k)
}

/// `k lambda + j`.
fn lin<T: Field>(l: &T, k: i64, j: i64) -> T {
    n::<T>(k) * l.clone() + n(j)
}

fn pw<T: Field>(x: &T, k: u32) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x.clone())
}

/// `B1..B4` of `a/h = v (1 + B1 v + ... + B4 v^4)`.
pub fn radius_coeffs<T: Field>(lambda: &T, r: &Reduced<T>) -> [T; 4] {
    let (l, s, t) = (lambda, &r.s, &r.t);
    let l1 = lp(l, 1);
    [
        s.clone() / l1.clone(),
        lp(l, 3) / (n::<T>(2) * pw(&l1, 2)) * pw(s, 2),
        lp(l, 4) * lp(l, 2) / (n::<T>(3) * pw(&l1, 3)) * pw(s, 3)
            + lin(l, 2, 5) / (l1.clone() * lp(l, 3)) * t.clone(),
        lin(l, 2, 5) * lp(l, 5) * lin(l, 3, 5) / (n::<T>(24) * pw(&l1, 4)) * pw(s, 4)
            + (l.clone() * l.clone() + n::<T>(11) * l.clone() + n(22)) / (pw(&l1, 2) * lp(l, 3))
                * s.clone()
                * t.clone(),
    ]
}

/// `C1..C4` of the force correction `1 + C1 v + ... + C4 v^4`.
pub fn force_coeffs<T: Field>(lambda: &T, r: &Reduced<T>) -> [T; 4] {
    let (l, s, t) = (lambda, &r.s, &r.t);
    let l1 = lp(l, 1);
    [
        s.clone(),
        lin(l, 2, 3) / (n::<T>(2) * l1.clone()) * pw(s, 2),
        lp(l, 2) * lin(l, 3, 4) / (n::<T>(3) * pw(&l1, 2)) * pw(s, 3)
            + lp(l, 2) / lp(l, 3) * t.clone(),
        lin(l, 2, 5) * lin(l, 3, 5) * lin(l, 4, 5) / (n::<T>(24) * pw(&l1, 3)) * pw(s, 4)
            + lin(l, 2, 5) * lp(l, 2) / (l1 * lp(l, 3)) * s.clone() * t.clone(),
    ]
}

/// `E1..E4` of `v = eps (1 + E1 eps + ... + E4 eps^4)`.
pub fn varpi_coeffs<T: Field>(lambda: &T, r: &Reduced<T>) -> [T; 4] {
    let (l, s, t) = (lambda, &r.s, &r.t);
    let l1 = lp(l, 1);
    let lm = lp(l, -1);
    [
        -(s.clone() / l1.clone()),
        -(lm.clone() / (n::<T>(2) * pw(&l1, 2)) * pw(s, 2)),
        -(lm.clone() * lin(l, 2, -1) / (n::<T>(6) * pw(&l1, 3)) * pw(s, 3)
            + lin(l, 2, 5) / (lp(l, 3) * l1.clone()) * t.clone()),
        -(lm * lin(l, 2, -1) * lin(l, 3, -1) / (n::<T>(24) * pw(&l1, 4)) * pw(s, 4)
            + (l.clone() * l.clone() - l.clone() - n(8)) / (pw(&l1, 2) * lp(l, 3))
                * s.clone()
                * t.clone()),
    ]
}

/// `K1..K4` of `kappa_lambda(eps) = 1 + K1 eps + ... + K4 eps^4`.
pub fn kappa_coeffs<T: Field>(lambda: &T, r: &Reduced<T>) -> [T; 4] {
    let (l, s, t) = (lambda, &r.s, &r.t);
    let l1 = lp(l, 1);
    [
        s.clone(),
        lin(l, 2, 1) / (n::<T>(2) * l1.clone()) * pw(s, 2),
        lin(l, 2, 1) * lin(l, 3, 1) / (n::<T>(6) * pw(&l1, 2)) * pw(s, 3)
            + lp(l, 2) / lp(l, 3) * t.clone(),
        lin(l, 2, 1) * lin(l, 3, 1) * lin(l, 4, 1) / (n::<T>(24) * pw(&l1, 3)) * pw(s, 4)
            + (n::<T>(2) * l.clone() * l.clone() + n::<T>(4) * l.clone() - n(1)) / (l1 * lp(l, 3))
                * s.clone()
                * t.clone(),
    ]
}

/// Limit of [`kappa_coeffs`] for the flat punch.
pub fn kappa_inf_coeffs<T: Field>(r: &Reduced<T>) -> [T; 4] {
    let (s, t) = (&r.s, &r.t);
    [
        s.clone(),
        pw(s, 2),
        pw(s, 3) + t.clone(),
        pw(s, 4) + n::<T>(2) * s.clone() * t.clone(),
    ]
}

/// `D1..D4` of `v = P~ (1 + D1 P~ + ... + D4 P~^4)`, obtained by reverting
/// `v^(lambda+1) (1 + C1 v + ... + C4 v^4) = P~^(lambda+1)`.
pub fn reversion_coeffs<T: Field>(lambda: &T, r: &Reduced<T>) -> [T; 4] {
    let c = force_coeffs(lambda, r);
    let mut bracket = vec![T::one()];
    bracket.extend(c.iter().cloned());
    let root = Series::new(bracket, 4).pow(&(T::one() / lp(lambda, 1)));
    let d = lagrange_revert(&root.coeffs()[1..]);
    [d[0].clone(), d[1].clone(), d[2].clone(), d[3].clone()]
}

/// Coefficients `[1, w1, w2, w3, w4]` of the displacement bracket in powers of `eps`.
pub fn displacement_bracket<T: Field>(lambda: &T, r: &Reduced<T>) -> [T; 5] {
    let (l, s, t) = (lambda, &r.s, &r.t);
    let l1 = lp(l, 1);
    [
        T::one(),
        -(l.clone() * s.clone() / l1.clone()),
        T::zero(),
        -(l.clone() * lin(l, 2, 5) / (lp(l, 3) * l1.clone()) * t.clone()),
        l.clone() * s.clone() * t.clone() / l1,
    ]
}

/// Numerator and denominator (powers of `eps`) of the rational stiffness ratio
/// `(dP/dw) / (4 theta a)`.
pub fn stiffness_ratio_parts<T: Field>(lambda: &T, r: &Reduced<T>) -> ([T; 5], [T; 5]) {
    let (l, s, t) = (lambda, &r.s, &r.t);
    let l1 = lp(l, 1);
    let k4 = lp(l, 4) / l1.clone();
    let num = [T::one(), T::zero(), T::zero(), -(t.clone() * k4.clone()), T::zero()];
    let den = [
        T::one(),
        -s.clone(),
        T::zero(),
        -(t.clone() * lin(l, 2, 5) / l1),
        s.clone() * t.clone() * k4,
    ];
    (num, den)
}

/// Taylor coefficients `eps^1..eps^4` of the rational stiffness ratio.
pub fn stiffness_expansion<T: Field>(lambda: &T, r: &Reduced<T>) -> [T; 4] {
    let (num, den) = stiffness_ratio_parts(lambda, r);
    let q = Series::new(num.to_vec(), 4).mul(&Series::new(den.to_vec(), 4).recip());
    [q.coeff(1), q.coeff(2), q.coeff(3), q.coeff(4)]
}

/// Every family at once.
pub fn expansion_coeffs<T: Field>(lambda: &T, r: &Reduced<T>) -> ExpansionCoeffs<T> {
    ExpansionCoeffs {
        b: radius_coeffs(lambda, r),
        c: force_coeffs(lambda, r),
        d: reversion_coeffs(lambda, r),
        kappa: kappa_coeffs(lambda, r),
        e: varpi_coeffs(lambda, r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Exact;

    fn q(a: i64, b: i64) -> Exact {
        Exact::frac(a, b)
    }

    fn lambdas() -> Vec<Exact> {
        vec![q(1, 1), q(3, 2), q(2, 1), q(3, 1), q(7, 3), q(10, 1)]
    }

    fn probes() -> Vec<Reduced<Exact>> {
        vec![
            Reduced { s: q(1, 1), t: q(0, 1) },
            Reduced { s: q(0, 1), t: q(1, 1) },
            Reduced { s: q(3, 5), t: q(-2, 7) },
        ]
    }

    /// Truncated `(1 + f)^alpha` composed with the displacement bracket gives
    /// the reduced displacement as a series in eps.
    fn varpi_series(l: &Exact, r: &Reduced<Exact>) -> Series<Exact> {
        let br = Series::new(displacement_bracket(l, r).to_vec(), 4);
        Series::var(5).mul(&Series::new(br.pow(&(Exact::int(1) / l.clone())).coeffs().to_vec(), 5))
    }

    #[test]
    fn varpi_coefficients_match_direct_expansion() {
        for l in lambdas() {
            for r in probes() {
                let v = varpi_series(&l, &r);
                let e = varpi_coeffs(&l, &r);
                for (k, ek) in e.iter().enumerate() {
                    assert_eq!(&v.coeff(k + 2), ek, "lambda {l}, k {k}");
                }
            }
        }
    }

    #[test]
    fn radius_coefficients_revert_the_displacement_relation() {
        for l in lambdas() {
            for r in probes() {
                let v = varpi_series(&l, &r);
                let c: Vec<Exact> = (2..=5).map(|k| v.coeff(k)).collect();
                assert_eq!(lagrange_revert(&c), radius_coeffs(&l, &r).to_vec());
            }
        }
    }

    #[test]
    fn kappa_is_force_correction_composed_with_varpi() {
        for l in lambdas() {
            for r in probes() {
                let mut f = vec![Exact::int(1)];
                f.extend(force_coeffs(&l, &r));
                let v = varpi_series(&l, &r).truncate(4);
                let k = Series::new(f, 4).compose(&v);
                assert_eq!(k.coeffs()[1..].to_vec(), kappa_coeffs(&l, &r).to_vec(), "lambda {l}");
            }
        }
    }

    #[test]
    fn stiffness_expansion_is_lambda_free() {
        for l in lambdas() {
            for r in probes() {
                assert_eq!(stiffness_expansion(&l, &r), kappa_inf_coeffs(&r));
            }
        }
    }

    #[test]
    fn reversion_reproduces_force_driven_brackets() {
        for l in lambdas() {
            for r in probes() {
                let d = reversion_coeffs(&l, &r);
                let mut v = vec![Exact::int(0), Exact::int(1)];
                v.extend(d.iter().cloned());
                let v = Series::new(v, 5);
                // displacement bracket (v / P~)^lambda
                let ratio = Series::new(v.coeffs()[1..].to_vec(), 4);
                let w = ratio.pow(&l);
                let l1 = l.clone() + Exact::int(1);
                assert_eq!(w.coeff(1), -(l.clone() * r.s.clone() / l1.clone()));
                assert_eq!(w.coeff(2), Exact::int(0));
                assert_eq!(
                    w.coeff(3),
                    -(l.clone() * (l.clone() + Exact::int(2)) * r.t.clone()
                        / (l1.clone() * (l.clone() + Exact::int(3))))
                );
                assert_eq!(w.coeff(4), Exact::int(0));
                // radius bracket (a/h) / P~
                let mut b = vec![Exact::int(0), Exact::int(1)];
                b.extend(radius_coeffs(&l, &r));
                let a = Series::new(b, 5).compose(&v);
                assert_eq!(a.coeff(2), Exact::int(0));
                assert_eq!(a.coeff(3), Exact::int(0));
                assert_eq!(a.coeff(4), r.t.clone() / l1);
                assert_eq!(a.coeff(5), Exact::int(0));
            }
        }
    }

    #[test]
    fn first_reversion_coefficient() {
        let r = Reduced { s: q(1, 1), t: q(0, 1) };
        for l in lambdas() {
            assert_eq!(reversion_coeffs(&l, &r)[0], -(Exact::int(1) / (l + Exact::int(1))));
        }
    }
}
