//! Transversely isotropic materials: engineering constants, stiffness moduli,
//! characteristic roots and the derived per-material parameters.
//!
//! Roots are ordered `gamma1 >= gamma2` throughout. Moduli and lengths are in
//! whatever consistent units the caller uses.

use crate::error::{Error, Result, Which};
use crate::scalar::Real;

/// Five engineering constants with the symmetry axis normal to the surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineeringConstants<T> {
    /// In-plane Young modulus.
    pub e: T,
    /// Out-of-plane Young modulus.
    pub e_axial: T,
    /// In-plane Poisson ratio.
    pub nu: T,
    /// Out-of-plane Poisson ratio.
    pub nu_axial: T,
    /// Out-of-plane shear modulus.
    pub g_axial: T,
}

fn positive<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v.as_f64(),
            reason: "must be positive and finite",
        })
    }
}

impl<T: Real> EngineeringConstants<T> {
    pub fn new(e: T, e_axial: T, nu: T, nu_axial: T, g_axial: T) -> Result<Self> {
        let c = EngineeringConstants {
            e,
            e_axial,
            nu,
            nu_axial,
            g_axial,
        };
        c.validate()?;
        Ok(c)
    }

    /// Isotropic constants expressed in the transversely isotropic form.
    pub fn isotropic(e: T, nu: T) -> Result<Self> {
        Self::new(e, e, nu, nu, e / (T::lit(2.0) * (T::one() + nu)))
    }

    /// `1 - nu - 2 (E/E') nu'^2`, the common denominator of the moduli.
    pub fn stability_denominator(&self) -> T {
        T::one() - self.nu - T::lit(2.0) * (self.e / self.e_axial) * self.nu_axial * self.nu_axial
    }

    pub fn validate(&self) -> Result<()> {
        positive("E", self.e)?;
        positive("E_axial", self.e_axial)?;
        positive("G_axial", self.g_axial)?;
        positive("1 + nu", T::one() + self.nu)?;
        if !self.nu.is_finite() || !self.nu_axial.is_finite() {
            return Err(Error::InvalidParameter {
                name: "nu",
                value: self.nu.as_f64(),
                reason: "must be finite",
            });
        }
        let d = self.stability_denominator();
        if d > T::zero() {
            Ok(())
        } else {
            Err(Error::StabilityViolation {
                denominator: d.as_f64(),
            })
        }
    }

    /// True when the constants describe an isotropic solid to relative `tol`.
    pub fn is_isotropic(&self, tol: T) -> bool {
        let close = |a: T, b: T| (a - b).abs() <= tol * a.abs().max(b.abs()).max(T::min_positive_value());
        let shear = self.e / (T::lit(2.0) * (T::one() + self.nu));
        close(self.e, self.e_axial) && close(self.nu, self.nu_axial) && close(self.g_axial, shear)
    }
}

/// Stiffness moduli `A11, A12, A13, A33, A44`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StiffnessModuli<T> {
    pub a11: T,
    pub a12: T,
    pub a13: T,
    pub a33: T,
    pub a44: T,
}

impl<T: Real> StiffnessModuli<T> {
    /// Isotropic moduli from the Lamé parameters.
    pub fn from_lame(lambda: T, mu: T) -> Self {
        let d = lambda + T::lit(2.0) * mu;
        StiffnessModuli {
            a11: d,
            a12: lambda,
            a13: lambda,
            a33: d,
            a44: mu,
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("A44", self.a44)?;
        positive("A11 - |A12|", self.a11 - self.a12.abs())?;
        positive("A11 A33 - A13^2", self.a11 * self.a33 - self.a13 * self.a13)
    }

    /// `q(s) = A11 A44 s^2 - s [A11 A33 - A13 (A13 + 2 A44)] + A33 A44` with `s = gamma^2`.
    pub fn quartic(&self, gamma: T) -> T {
        let s = gamma * gamma;
        self.a11 * self.a44 * s * s - s * self.middle() + self.a33 * self.a44
    }

    fn middle(&self) -> T {
        self.a11 * self.a33 - self.a13 * (self.a13 + T::lit(2.0) * self.a44)
    }

    /// Quartic residual relative to the sum of the magnitudes of its terms.
    pub fn quartic_residual(&self, gamma: T) -> T {
        let s = gamma * gamma;
        let scale = self.a11 * self.a44 * s * s + (s * self.middle()).abs() + self.a33 * self.a44;
        self.quartic(gamma).abs() / scale
    }
}

/// Moduli from engineering constants.
pub fn stiffness_from_engineering<T: Real>(c: &EngineeringConstants<T>) -> Result<StiffnessModuli<T>> {
    c.validate()?;
    let ratio = c.e / c.e_axial;
    let nu2 = c.nu_axial * c.nu_axial;
    let d = c.stability_denominator();
    let onep = T::one() + c.nu;
    Ok(StiffnessModuli {
        a11: c.e * (T::one() - ratio * nu2) / (onep * d),
        a12: c.e * (c.nu + ratio * nu2) / (onep * d),
        a13: c.e * c.nu_axial / d,
        a33: c.e_axial * (T::one() - c.nu) / d,
        a44: c.g_axial,
    })
}

/// Positive roots `gamma1 >= gamma2` of the characteristic quartic, solved as a
/// quadratic in `gamma^2`.
pub fn gamma_roots<T: Real>(m: &StiffnessModuli<T>) -> Result<(T, T)> {
    m.validate()?;
    let a = m.a11 * m.a44;
    let b = -m.middle();
    let c = m.a33 * m.a44;
    let disc = b * b - T::lit(4.0) * a * c;
    // round-off floor for a discriminant that is exactly zero in exact arithmetic
    let floor = T::lit(64.0) * T::epsilon() * b * b;
    if disc <= floor || b >= T::zero() {
        return Err(Error::DegenerateRoots {
            discriminant: disc.as_f64(),
        });
    }
    let s1 = (-b + disc.sqrt()) / (T::lit(2.0) * a);
    let s2 = c / (a * s1);
    Ok((s1.sqrt(), s2.sqrt()))
}

/// Per-material quantities used by the kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams<T> {
    pub gamma1: T,
    pub gamma2: T,
    pub m1: T,
    pub m2: T,
    /// Compliance parameter, including the `1/(2 pi)` normalization.
    pub h: T,
    /// `gamma1 / (gamma1 - gamma2)`.
    pub g1: T,
    /// `gamma2 / (gamma1 - gamma2)`.
    pub g2: T,
}

impl<T: Real> MaterialParams<T> {
    /// Parameters supplied directly; `m2 = 1/m1` and the `g` ratios are derived.
    pub fn from_roots(gamma1: T, gamma2: T, m1: T, h: T) -> Result<Self> {
        positive("gamma2", gamma2)?;
        positive("gamma1 - gamma2", gamma1 - gamma2)?;
        positive("H", h)?;
        positive("m1", m1)?;
        let diff = gamma1 - gamma2;
        Ok(MaterialParams {
            gamma1,
            gamma2,
            m1,
            m2: m1.recip(),
            h,
            g1: gamma1 / diff,
            g2: gamma2 / diff,
        })
    }

    /// `theta = 1/(2 pi H)` for a layer made of this material.
    pub fn theta(&self) -> T {
        (T::TAU() * self.h).recip()
    }
}

/// Derives `H`, `m1`, `m2`, `g1`, `g2` from the moduli.
pub fn material_params<T: Real>(m: &StiffnessModuli<T>) -> Result<MaterialParams<T>> {
    let (gamma1, gamma2) = gamma_roots(m)?;
    let det = m.a11 * m.a33 - m.a13 * m.a13;
    let h = (gamma1 + gamma2) * m.a11 / (T::TAU() * det);
    // two equivalent forms; take the one with less cancellation
    let mm = |g: T| {
        let s = g * g;
        let (na, da) = (m.a11 * s - m.a44, m.a13 + m.a44);
        let (nb, db) = ((m.a13 + m.a44) * s, m.a33 - m.a44 * s);
        let qa = na.abs() / (m.a11 * s + m.a44);
        let qb = db.abs() / (m.a33 + m.a44 * s);
        if qa >= qb {
            na / da
        } else {
            nb / db
        }
    };
    let diff = gamma1 - gamma2;
    Ok(MaterialParams {
        gamma1,
        gamma2,
        m1: mm(gamma1),
        m2: mm(gamma2),
        h,
        g1: gamma1 / diff,
        g2: gamma2 / diff,
    })
}

/// Contact modulus of an isotropic layer, `E / (2 (1 - nu^2))`.
pub fn isotropic_theta<T: Real>(e: T, nu: T) -> T {
    e / (T::lit(2.0) * (T::one() - nu * nu))
}

/// A material as seen by the kernel: either the transversely isotropic
/// parameters or plain isotropic constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Medium<T> {
    Transverse(MaterialParams<T>),
    Isotropic { e: T, nu: T },
}

impl<T: Real> Medium<T> {
    /// Routes isotropic constants (relative tolerance 1e-12) to the isotropic form.
    pub fn from_engineering(c: &EngineeringConstants<T>) -> Result<Self> {
        c.validate()?;
        if c.is_isotropic(T::lit(1e-12)) {
            return Medium::isotropic(c.e, c.nu);
        }
        Ok(Medium::Transverse(material_params(&stiffness_from_engineering(c)?)?))
    }

    pub fn isotropic(e: T, nu: T) -> Result<Self> {
        positive("E", e)?;
        if !(nu > -T::one() && nu < T::lit(0.5)) {
            return Err(Error::InvalidParameter {
                name: "nu",
                value: nu.as_f64(),
                reason: "isotropic Poisson ratio must lie in (-1, 0.5)",
            });
        }
        Ok(Medium::Isotropic { e, nu })
    }

    pub fn theta(&self) -> T {
        match self {
            Medium::Transverse(p) => p.theta(),
            Medium::Isotropic { e, nu } => isotropic_theta(*e, *nu),
        }
    }
}

/// A layer of thickness `h` bonded to a substrate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerSystem<T> {
    pub layer: Medium<T>,
    pub substrate: Medium<T>,
    pub h: T,
    /// Layer contact modulus.
    pub theta: T,
}

impl<T: Real> LayerSystem<T> {
    pub fn new(layer: Medium<T>, substrate: Medium<T>, h: T) -> Result<Self> {
        positive("h", h)?;
        let theta = layer.theta();
        positive("theta", theta)?;
        Ok(LayerSystem {
            layer,
            substrate,
            h,
            theta,
        })
    }
}

/// Builds the layer system from engineering constants, tagging failures with
/// the material they came from.
pub fn build_layer_system<T: Real>(
    layer: &EngineeringConstants<T>,
    substrate: &EngineeringConstants<T>,
    h: T,
) -> Result<LayerSystem<T>> {
    let l = Medium::from_engineering(layer).map_err(|e| e.in_material(Which::Layer))?;
    let s = Medium::from_engineering(substrate).map_err(|e| e.in_material(Which::Substrate))?;
    LayerSystem::new(l, s, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fixture_layer() -> EngineeringConstants<f64> {
        EngineeringConstants::new(10.0, 20.0, 0.2, 0.25, 5.0).unwrap()
    }

    #[test]
    fn fixture_moduli() {
        let m = stiffness_from_engineering(&fixture_layer()).unwrap();
        assert_relative_eq!(m.a11, 10.946_327_683_615_819, max_relative = 1e-14);
        assert_relative_eq!(m.a12, 2.612_994_350_282_486, max_relative = 1e-14);
        assert_relative_eq!(m.a13, 3.389_830_508_474_576_3, max_relative = 1e-14);
        assert_relative_eq!(m.a33, 21.694_915_254_237_288, max_relative = 1e-14);
        assert_eq!(m.a44, 5.0);
        assert_relative_eq!(m.a11 - m.a12, 10.0 / 1.2, max_relative = 1e-14);
    }

    #[test]
    fn fixture_params() {
        let p = material_params(&stiffness_from_engineering(&fixture_layer()).unwrap()).unwrap();
        assert_relative_eq!(p.gamma1, 1.674_056_816_859_581_8, max_relative = 1e-14);
        assert_relative_eq!(p.gamma2, 0.840_958_496_764_735_2, max_relative = 1e-14);
        assert_relative_eq!(p.h, 0.019_388_422_957_138_794, max_relative = 1e-14);
        assert_relative_eq!(p.m1, 3.060_456_776_443_396_6, max_relative = 1e-13);
        assert_relative_eq!(p.m2, 0.326_748_610_761_990_64, max_relative = 1e-13);
        assert_relative_eq!(p.g1 - p.g2, 1.0, max_relative = 1e-14);
        assert_relative_eq!(p.theta(), 8.208_761_663_789_405, max_relative = 1e-14);
    }

    #[test]
    fn toy_quartic_roots() {
        let m = StiffnessModuli { a11: 1.0, a12: 0.0, a13: 0.0, a33: 5.0, a44: 1.0 };
        let (g1, g2) = gamma_roots(&m).unwrap();
        assert_relative_eq!(g1 * g1, (5.0 + 5f64.sqrt()) / 2.0, max_relative = 1e-15);
        assert_relative_eq!(g2 * g2, (5.0 - 5f64.sqrt()) / 2.0, max_relative = 1e-14);
        assert!(m.quartic_residual(g1) < 1e-14 && m.quartic_residual(g2) < 1e-14);
    }

    #[test]
    fn isotropic_moduli_are_degenerate() {
        let c = EngineeringConstants::isotropic(3.0, 0.3).unwrap();
        let m = stiffness_from_engineering(&c).unwrap();
        assert_relative_eq!(m.a11, 3.0 * 0.7 / (1.3 * 0.4), max_relative = 1e-14);
        assert_relative_eq!(m.a13, 3.0 * 0.3 / (1.3 * 0.4), max_relative = 1e-14);
        assert_relative_eq!(m.a44, 3.0 / 2.6, max_relative = 1e-14);
        assert!(matches!(gamma_roots(&m), Err(Error::DegenerateRoots { .. })));
    }

    #[test]
    fn stability_violation() {
        let e = EngineeringConstants::new(10.0, 1.0, 0.2, 0.5, 3.0).unwrap_err();
        assert!(matches!(e, Error::StabilityViolation { .. }));
    }

    #[test]
    fn isotropic_layer_uses_plane_strain_modulus() {
        let iso = EngineeringConstants::isotropic(2.0, 0.25).unwrap();
        let sys = build_layer_system(&iso, &fixture_layer(), 1.0).unwrap();
        assert_relative_eq!(sys.theta, 2.0 / (2.0 * (1.0 - 0.0625)), max_relative = 1e-15);
    }

    #[test]
    fn failing_material_is_named() {
        let bad = EngineeringConstants { e: 10.0, e_axial: 1.0, nu: 0.2, nu_axial: 0.5, g_axial: 3.0 };
        let e = build_layer_system(&fixture_layer(), &bad, 1.0).unwrap_err();
        assert!(matches!(e, Error::Material { which: Which::Substrate, .. }));
    }
}
