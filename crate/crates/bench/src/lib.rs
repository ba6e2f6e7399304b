//! Shared fixtures for the criterion benchmarks.

use std::f64::consts::PI;

use trapnoise_core::physical_model::skin_depth;
use trapnoise_core::{Material, SurfaceGeometry, ThermalEnvironment};

/// Copper at room temperature probed at 1 MHz.
pub struct CopperAtOneMegahertz {
    pub material: Material,
    pub env: ThermalEnvironment,
    pub omega: f64,
    pub skin_depth: f64,
}

impl CopperAtOneMegahertz {
    pub fn new() -> Self {
        let material = Material::copper();
        let omega = 2.0 * PI * 1e6;
        let skin_depth = skin_depth(&material, omega).expect("positive frequency");
        Self {
            material,
            env: ThermalEnvironment::room_temperature(),
            omega,
            skin_depth,
        }
    }

    /// Trap height at `ratio` skin depths.
    pub fn at(&self, ratio: f64) -> SurfaceGeometry {
        SurfaceGeometry::new(ratio * self.skin_depth).expect("positive distance")
    }
}

impl Default for CopperAtOneMegahertz {
    fn default() -> Self {
        Self::new()
    }
}
