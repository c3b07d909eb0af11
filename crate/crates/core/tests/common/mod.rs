#![allow(dead_code)]

use layerdent_core::kernel::{asymptotic_constants, build_kernel_ti, AsymptoticConstants, KernelModel};
use layerdent_core::materials::{build_layer_system, EngineeringConstants, LayerSystem};

pub fn fixture_system() -> LayerSystem<f64> {
    let layer = EngineeringConstants::new(10.0, 20.0, 0.2, 0.25, 5.0).unwrap();
    let sub = EngineeringConstants::new(30.0, 15.0, 0.3, 0.2, 8.0).unwrap();
    build_layer_system(&layer, &sub, 1.0).unwrap()
}

pub fn fixture_kernel() -> KernelModel<f64> {
    build_kernel_ti(&fixture_system()).unwrap()
}

pub fn fixture_constants() -> AsymptoticConstants<f64> {
    asymptotic_constants(&fixture_kernel(), 1, 1e-11).unwrap()
}

/// Reference constants from a 40-digit quadrature.
pub const A0: f64 = 0.669_869_687_662_753_8;
pub const A1: f64 = -0.244_445_835_314_293_06;
