use std::fmt;

use crate::kernel::AsymptoticConstants;
use crate::materials::LayerSystem;
use crate::scalar::{horner, Real};

use super::coeffs::{
    displacement_bracket, expansion_coeffs, kappa_inf_coeffs, stiffness_ratio_parts,
    ExpansionCoeffs, Reduced,
};
use super::shape::{shape_factors, PowerLawShape, ShapeFactors};

/// Relative contact radius above which results are flagged as outside the
/// asymptotic regime.
pub const VALIDITY_LIMIT: f64 = 0.5;

/// Raised, not thrown, when `eps` exceeds [`VALIDITY_LIMIT`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityWarning {
    pub eps: f64,
}

impl fmt::Display for ValidityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "relative contact radius a/h = {} exceeds {}; asymptotic model may be inaccurate",
            self.eps, VALIDITY_LIMIT
        )
    }
}

/// One point of an indentation curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndentationState<T> {
    pub a: T,
    pub w: T,
    pub p: T,
    /// `a / h`.
    pub eps: T,
    /// Reduced displacement `(w / (A F2))^(1/lambda) / h`.
    pub varpi: T,
    /// Reduced force `(theta A F1)^(-1/(lambda+1)) P^(1/(lambda+1)) / h`.
    pub ptilde: T,
}

impl<T: Real> IndentationState<T> {
    pub fn is_valid(&self) -> bool {
        self.eps <= T::lit(VALIDITY_LIMIT)
    }

    pub fn warning(&self) -> Option<ValidityWarning> {
        (!self.is_valid()).then(|| ValidityWarning {
            eps: self.eps.as_f64(),
        })
    }
}

/// Finite exponent or the flat punch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent<T> {
    Finite(T),
    Infinite,
}

/// `1 + k1 eps + ... + k4 eps^4`.
fn quartic<T: Real>(k: &[T; 4], eps: T) -> T {
    horner(&[T::one(), k[0], k[1], k[2], k[3]], &eps)
}

/// `kappa_inf(eps)`, the flat-punch scaling factor.
pub fn kappa_inf<T: Real>(eps: T, r: &Reduced<T>) -> T {
    quartic(&kappa_inf_coeffs(r), eps)
}

/// Indentation scaling factor `kappa_lambda(eps)`.
pub fn kappa<T: Real>(exponent: Exponent<T>, eps: T, r: &Reduced<T>) -> T {
    match exponent {
        Exponent::Finite(l) => quartic(&super::coeffs::kappa_coeffs(&l, r), eps),
        Exponent::Infinite => kappa_inf(eps, r),
    }
}

/// Stiffness `4 theta sqrt(area/pi) kappa_inf(eps)` with `eps = sqrt(area/pi)/h`.
pub fn bash_stiffness<T: Real>(area: T, theta: T, h: T, r: &Reduced<T>) -> T {
    let a = (area / T::PI()).sqrt();
    T::lit(4.0) * theta * a * kappa_inf(a / h, r)
}

/// Force on a flat punch of radius `a` at displacement `w`.
pub fn flat_punch_force<T: Real>(a: T, w: T, theta: T, h: T, r: &Reduced<T>) -> T {
    T::lit(4.0) * theta * a * kappa_inf(a / h, r) * w
}

/// Incremental stiffness in both forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stiffness<T> {
    /// Ratio of the differentiated parametric relations.
    pub rational: T,
    /// Its fourth-order expansion, `4 theta a kappa_inf(eps)`.
    pub expanded: T,
}

/// A power-law indenter on a given layer system.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawModel<T> {
    pub shape: PowerLawShape<T>,
    pub theta: T,
    pub h: T,
    pub a0: T,
    pub a1: T,
    pub reduced: Reduced<T>,
    pub factors: ShapeFactors<T>,
    pub coeffs: ExpansionCoeffs<T>,
}

impl<T: Real> PowerLawModel<T> {
    pub fn new(shape: PowerLawShape<T>, theta: T, h: T, a0: T, a1: T) -> Self {
        let reduced = Reduced::from_constants(a0, a1);
        PowerLawModel {
            factors: shape_factors(shape.lambda),
            coeffs: expansion_coeffs(&shape.lambda, &reduced),
            shape,
            theta,
            h,
            a0,
            a1,
            reduced,
        }
    }

    pub fn from_system(
        shape: PowerLawShape<T>,
        sys: &LayerSystem<T>,
        consts: &AsymptoticConstants<T>,
    ) -> Self {
        Self::new(shape, sys.theta, sys.h, consts.a0(), consts.a1())
    }

    fn lambda(&self) -> T {
        self.shape.lambda
    }

    pub fn varpi(&self, w: T) -> T {
        (w / (self.shape.amplitude * self.factors.f2)).powf(self.lambda().recip()) / self.h
    }

    pub fn ptilde(&self, p: T) -> T {
        let e = (self.lambda() + T::one()).recip();
        (p / (self.theta * self.shape.amplitude * self.factors.f1)).powf(e) / self.h
    }

    /// Force at contact radius `a`.
    pub fn force_at_radius(&self, a: T) -> T {
        let eps = a / self.h;
        self.theta
            * self.shape.amplitude
            * self.factors.f1
            * a.powf(self.lambda() + T::one())
            * (T::one() - self.reduced.t * eps.powi(3))
    }

    /// Displacement at contact radius `a`.
    pub fn displacement_at_radius(&self, a: T) -> T {
        let eps = a / self.h;
        let br = displacement_bracket(&self.lambda(), &self.reduced);
        self.shape.amplitude * self.factors.f2 * a.powf(self.lambda()) * horner(&br, &eps)
    }

    /// Curve point parametrized by the contact radius.
    pub fn parametric_state(&self, a: T) -> IndentationState<T> {
        let w = self.displacement_at_radius(a);
        let p = self.force_at_radius(a);
        self.state(a, w, p)
    }

    fn state(&self, a: T, w: T, p: T) -> IndentationState<T> {
        IndentationState {
            a,
            w,
            p,
            eps: a / self.h,
            varpi: self.varpi(w),
            ptilde: self.ptilde(p),
        }
    }

    pub fn radius_from_displacement(&self, w: T) -> T {
        let v = self.varpi(w);
        let b = &self.coeffs.b;
        self.h * v * quartic(b, v)
    }

    pub fn force_from_displacement(&self, w: T) -> T {
        let l = self.lambda();
        let v = self.varpi(w);
        self.theta
            * self.shape.amplitude.powf(-l.recip())
            * self.factors.f3
            * w.powf((l + T::one()) / l)
            * quartic(&self.coeffs.c, v)
    }

    pub fn displacement_from_force(&self, p: T) -> T {
        let l = self.lambda();
        let l1 = l + T::one();
        let pt = self.ptilde(p);
        let (s, t) = (self.reduced.s, self.reduced.t);
        let bracket = T::one() - l * s / l1 * pt - l * (l + T::lit(2.0)) * t / (l1 * (l + T::lit(3.0))) * pt.powi(3);
        self.shape.amplitude.powf(l1.recip()) * (p / (self.theta * self.factors.f3)).powf(l / l1) * bracket
    }

    pub fn radius_from_force(&self, p: T) -> T {
        let pt = self.ptilde(p);
        let l1 = self.lambda() + T::one();
        self.h * pt * (T::one() + self.reduced.t / l1 * pt.powi(3))
    }

    /// Curve point driven by displacement.
    pub fn state_from_displacement(&self, w: T) -> IndentationState<T> {
        let a = self.radius_from_displacement(w);
        let p = self.force_from_displacement(w);
        self.state(a, w, p)
    }

    /// Curve point driven by force.
    pub fn state_from_force(&self, p: T) -> IndentationState<T> {
        let a = self.radius_from_force(p);
        let w = self.displacement_from_force(p);
        self.state(a, w, p)
    }

    /// `kappa_lambda(eps)`.
    pub fn kappa(&self, eps: T) -> T {
        quartic(&self.coeffs.kappa, eps)
    }

    /// Reduced displacement as a function of `eps`.
    pub fn varpi_from_epsilon(&self, eps: T) -> T {
        eps * quartic(&self.coeffs.e, eps)
    }

    pub fn stiffness(&self, a: T) -> Stiffness<T> {
        let eps = a / self.h;
        let (num, den) = stiffness_ratio_parts(&self.lambda(), &self.reduced);
        let base = T::lit(4.0) * self.theta * a;
        Stiffness {
            rational: base * horner(&num, &eps) / horner(&den, &eps),
            expanded: base * kappa_inf(eps, &self.reduced),
        }
    }
}
