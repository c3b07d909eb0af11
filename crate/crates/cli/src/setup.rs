use layerdent_core::hemisphere::HemisphereModel;
use layerdent_core::kernel::{asymptotic_constants, build_kernel, IsotropicKernelCoeffs, Kernel};
use layerdent_core::materials::{EngineeringConstants, LayerSystem, MaterialParams, Medium};
use layerdent_core::powerlaw::{PowerLawModel, PowerLawShape, Reduced};
use layerdent_core::{AsymptoticConstantsF64, Which};

use crate::config::{IndenterBlock, IndenterKind, MaterialBlock, RunConfig};
use crate::error::CliError;

fn medium(block: &MaterialBlock, which: Which) -> Result<Medium<f64>, CliError> {
    let m = if let Some(e) = &block.engineering {
        EngineeringConstants::new(e.e, e.e_axial, e.nu, e.nu_axial, e.g_axial)
            .and_then(|c| Medium::from_engineering(&c))
    } else if let Some(i) = &block.isotropic {
        Medium::isotropic(i.e, i.nu)
    } else if let Some(p) = &block.params {
        MaterialParams::from_roots(p.gamma1, p.gamma2, p.m1, p.h).map(Medium::Transverse)
    } else {
        unreachable!("checked when the config was parsed")
    };
    m.map_err(|e| e.in_material(which).into())
}

fn d_override(block: &MaterialBlock) -> Result<Option<IsotropicKernelCoeffs<f64>>, CliError> {
    let Some(d) = &block.d else {
        return Ok(None);
    };
    Ok(Some(IsotropicKernelCoeffs {
        d1: d.d1.coeffs("substrate.d.d1")?,
        d2: d.d2.coeffs("substrate.d.d2")?,
        d3: d.d3.coeffs("substrate.d.d3")?,
    }))
}

/// Everything derived from the materials.
pub struct Setup {
    pub sys: LayerSystem<f64>,
    pub kernel: Kernel<f64>,
    pub consts: AsymptoticConstantsF64,
}

impl Setup {
    pub fn new(cfg: &RunConfig, order: usize, tol: f64) -> Result<Self, CliError> {
        let layer = medium(&cfg.layer, Which::Layer)?;
        let substrate = medium(&cfg.substrate, Which::Substrate)?;
        let sys = LayerSystem::new(layer, substrate, cfg.h)?;
        let kernel = build_kernel(&sys, d_override(&cfg.substrate)?)?;
        let consts = asymptotic_constants(&kernel, order.max(1), tol)?;
        Ok(Setup { sys, kernel, consts })
    }

    pub fn reduced(&self) -> Reduced<f64> {
        Reduced::from_constants(self.consts.a0(), self.consts.a1())
    }
}

/// The indenter bound to a layer system.
pub enum Indenter {
    PowerLaw(PowerLawModel<f64>),
    Hemisphere(HemisphereModel<f64>),
    FlatPunch { a: f64, theta: f64, h: f64, reduced: Reduced<f64> },
}

fn need(value: Option<f64>, name: &str, kind: &str) -> Result<f64, CliError> {
    let v = value.ok_or_else(|| CliError::config(format!("indenter kind {kind} needs `{name}`")))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(format!("indenter.{name} = {v} must be positive")))
    }
}

impl Indenter {
    pub fn new(block: &IndenterBlock, setup: &Setup) -> Result<Self, CliError> {
        let (sys, consts) = (&setup.sys, &setup.consts);
        let shape = match block.kind {
            IndenterKind::Powerlaw => PowerLawShape::new(
                need(block.lambda, "lambda", "powerlaw")?,
                need(block.amplitude, "A", "powerlaw")?,
            )?,
            IndenterKind::Cone => PowerLawShape::cone(need(block.angle, "angle", "cone")?)?,
            IndenterKind::Paraboloid => PowerLawShape::paraboloid(need(block.r, "R", "paraboloid")?)?,
            IndenterKind::Hemisphere => {
                let r = need(block.r, "R", "hemisphere")?;
                return Ok(Indenter::Hemisphere(HemisphereModel::from_system(r, sys, consts)));
            }
            IndenterKind::Flatpunch => {
                return Ok(Indenter::FlatPunch {
                    a: need(block.a, "a", "flatpunch")?,
                    theta: sys.theta,
                    h: sys.h,
                    reduced: setup.reduced(),
                });
            }
        };
        Ok(Indenter::PowerLaw(PowerLawModel::from_system(shape, sys, consts)))
    }
}
