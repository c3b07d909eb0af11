use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Layer thickness.
    pub h: f64,
    pub layer: MaterialBlock,
    pub substrate: MaterialBlock,
    pub indenter: Option<IndenterBlock>,
    pub sweep: Option<SweepBlock>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputBlock,
    #[serde(default)]
    pub coeffs: CoeffsBlock,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialBlock {
    pub engineering: Option<Engineering>,
    pub isotropic: Option<Isotropic>,
    pub params: Option<Params>,
    /// Isotropic kernel coefficients `d1, d2, d3`, each a constant or a
    /// quadratic `[c0, c1, c2]` in `u`.
    pub d: Option<DOverride>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Engineering {
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "E_axial")]
    pub e_axial: f64,
    pub nu: f64,
    pub nu_axial: f64,
    #[serde(rename = "G_axial")]
    pub g_axial: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Isotropic {
    #[serde(rename = "E")]
    pub e: f64,
    pub nu: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub gamma1: f64,
    pub gamma2: f64,
    pub m1: f64,
    #[serde(rename = "H")]
    pub h: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Poly {
    Constant(f64),
    Quadratic(Vec<f64>),
}

impl Poly {
    pub fn coeffs(&self, field: &str) -> Result<[f64; 3], CliError> {
        match self {
            Poly::Constant(c) => Ok([*c, 0.0, 0.0]),
            Poly::Quadratic(v) if !v.is_empty() && v.len() <= 3 => {
                let mut out = [0.0; 3];
                out[..v.len()].copy_from_slice(v);
                Ok(out)
            }
            Poly::Quadratic(_) => Err(CliError::config(format!(
                "{field}: expected a number or an array of 1 to 3 numbers"
            ))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DOverride {
    pub d1: Poly,
    pub d2: Poly,
    pub d3: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndenterKind {
    Powerlaw,
    Cone,
    Paraboloid,
    Hemisphere,
    Flatpunch,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndenterBlock {
    pub kind: IndenterKind,
    /// Power-law exponent.
    pub lambda: Option<f64>,
    /// Power-law amplitude.
    #[serde(rename = "A")]
    pub amplitude: Option<f64>,
    /// Angle between the cone flank and the undeformed surface, radians.
    pub angle: Option<f64>,
    /// Tip radius.
    #[serde(rename = "R")]
    pub r: Option<f64>,
    /// Punch radius.
    pub a: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum SweepVar {
    #[serde(rename = "w")]
    W,
    #[serde(rename = "P")]
    P,
    #[serde(rename = "a")]
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    pub variable: SweepVar,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl SweepBlock {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(CliError::config(format!(
                "sweep: need finite min < max, got min = {}, max = {}",
                self.min, self.max
            )));
        }
        if self.count < 1 {
            return Err(CliError::config("sweep.count must be at least 1"));
        }
        if self.min <= 0.0 {
            return Err(CliError::config(format!("sweep.min = {} must be positive", self.min)));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        if n == 1 {
            return vec![self.min];
        }
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.max;
                }
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_quad_tol")]
    pub quadrature: f64,
    #[serde(default = "default_root_tol")]
    pub root: f64,
}

fn default_quad_tol() -> f64 {
    1e-10
}

fn default_root_tol() -> f64 {
    1e-13
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            quadrature: default_quad_tol(),
            root: default_root_tol(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffsBlock {
    /// Highest `a_m` to report.
    #[serde(default = "default_order")]
    pub order: usize,
}

fn default_order() -> usize {
    1
}

impl Default for CoeffsBlock {
    fn default() -> Self {
        CoeffsBlock {
            order: default_order(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(CliError::config(format!("h = {} must be positive", self.h)));
        }
        for (name, block) in [("layer", &self.layer), ("substrate", &self.substrate)] {
            let n = block.engineering.is_some() as u8 + block.isotropic.is_some() as u8 + block.params.is_some() as u8;
            if n != 1 {
                return Err(CliError::config(format!(
                    "[{name}] needs exactly one of engineering, isotropic, params (found {n})"
                )));
            }
        }
        if self.layer.d.is_some() {
            return Err(CliError::config("d1, d2, d3 overrides belong in [substrate.d]"));
        }
        if let Some(s) = &self.sweep {
            s.validate()?;
        }
        for (name, v) in [("tolerances.quadrature", self.tolerances.quadrature), ("tolerances.root", self.tolerances.root)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(CliError::config(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(())
    }

    pub fn indenter(&self) -> Result<&IndenterBlock, CliError> {
        self.indenter
            .as_ref()
            .ok_or_else(|| CliError::config("this command needs an [indenter] block"))
    }

    pub fn sweep(&self) -> Result<&SweepBlock, CliError> {
        self.sweep
            .as_ref()
            .ok_or_else(|| CliError::config("this command needs a [sweep] block"))
    }
}
