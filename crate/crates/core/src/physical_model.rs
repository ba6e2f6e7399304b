//! Material response, thermal occupation and the fluctuation-dissipation
//! conversion between Green-tensor imaginary parts and noise spectra.
//!
//! Temperatures are in kelvin and `k_B` is applied internally. Frequencies are
//! signed angular frequencies: a negative frequency selects the absorption
//! (heating) side of a spectrum.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{BOLTZMANN, EPSILON_0, HBAR, MU_0, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Half-space material with a zero-frequency conduction pole.
///
/// `ε(ω) = static_eps_real + i / (ε₀ ϱ ω)` for `ω > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    name: String,
    resistivity: f64,
    static_eps_real: f64,
}

impl Material {
    /// `resistivity` in Ω·m.
    pub fn new(name: impl Into<String>, resistivity: f64, static_eps_real: f64) -> Result<Self> {
        if !(resistivity.is_finite() && resistivity > 0.0) {
            return Err(Error::domain(format!(
                "resistivity must be positive and finite, got {resistivity}"
            )));
        }
        if !(static_eps_real.is_finite() && static_eps_real >= 1.0) {
            return Err(Error::domain(format!(
                "static permittivity must be >= 1, got {static_eps_real}"
            )));
        }
        Ok(Self {
            name: name.into(),
            resistivity,
            static_eps_real,
        })
    }

    /// Copper at room temperature, ϱ = 1.7e-6 Ω·cm.
    pub fn copper() -> Self {
        Self {
            name: "copper".into(),
            resistivity: 1.7e-8,
            static_eps_real: 1.0,
        }
    }

    /// Glass, ϱ = 1e11 Ω·cm and Re ε = 5.
    pub fn glass() -> Self {
        Self {
            name: "glass".into(),
            resistivity: 1e9,
            static_eps_real: 5.0,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn resistivity(&self) -> f64 {
        self.resistivity
    }

    pub fn static_eps_real(&self) -> f64 {
        self.static_eps_real
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalEnvironment {
    temperature: f64,
}

impl ThermalEnvironment {
    pub fn new(temperature: f64) -> Result<Self> {
        if !(temperature.is_finite() && temperature >= 0.0) {
            return Err(Error::domain(format!("temperature must be >= 0 K, got {temperature}")));
        }
        Ok(Self { temperature })
    }

    pub fn room_temperature() -> Self {
        Self { temperature: 300.0 }
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn thermal_energy(&self) -> f64 {
        BOLTZMANN * self.temperature
    }

    /// `ħω / (1 − e^{−ħω/k_BT})` for signed `ω`.
    ///
    /// This is the energy that replaces `k_BT` in every high-temperature
    /// formula: it tends to `k_BT` when `ħ|ω| ≪ k_BT`, to `ħω` for `ω > 0` at
    /// `T = 0`, and vanishes for `ω < 0` at `T = 0`. At `ω = 0` it is `k_BT`.
    pub fn spectral_energy(&self, omega: f64) -> f64 {
        let kt = self.thermal_energy();
        let e = HBAR * omega;
        if kt == 0.0 {
            return e.max(0.0);
        }
        if omega == 0.0 {
            return kt;
        }
        let x = e / kt;
        let denom = -(-x).exp_m1();
        let value = e / denom;
        if value.is_finite() {
            value.max(0.0)
        } else {
            0.0
        }
    }
}

fn check_frequency(omega: f64) -> Result<()> {
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::domain(format!(
            "angular frequency must be finite and non-zero, got {omega}"
        )));
    }
    Ok(())
}

/// Relative permittivity; negative `omega` returns the complex conjugate.
pub fn dielectric_function(material: &Material, omega: f64) -> Result<Complex64> {
    check_frequency(omega)?;
    let im = 1.0 / (EPSILON_0 * material.resistivity * omega.abs());
    let eps = Complex64::new(material.static_eps_real, im);
    Ok(if omega > 0.0 { eps } else { eps.conj() })
}

/// Skin depth `sqrt(2ϱ / (μ₀ |ω|))` in metres.
pub fn skin_depth(material: &Material, omega: f64) -> Result<f64> {
    check_frequency(omega)?;
    Ok((2.0 * material.resistivity / (MU_0 * omega.abs())).sqrt())
}

/// Free-space (Planck) electric field spectrum per Cartesian component,
/// in (V/m)²·s.
pub fn blackbody_electric_spectrum(env: &ThermalEnvironment, omega: f64) -> f64 {
    if omega == 0.0 {
        return 0.0;
    }
    omega * omega * env.spectral_energy(omega) / (3.0 * PI * EPSILON_0 * SPEED_OF_LIGHT.powi(3))
}

/// Mean Bose occupation `1 / (e^{ħω/k_BT} − 1)` for `ω > 0`.
pub fn thermal_occupation(env: &ThermalEnvironment, omega: f64) -> Result<f64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(format!(
            "thermal occupation needs a positive frequency, got {omega}"
        )));
    }
    let kt = env.thermal_energy();
    if kt == 0.0 {
        return Ok(0.0);
    }
    let n = 1.0 / (HBAR * omega / kt).exp_m1();
    Ok(if n.is_finite() { n } else { 0.0 })
}

/// Fluctuation-dissipation theorem: spectrum at signed `omega` from `Im G`
/// evaluated at `|omega|`.
///
/// Emission side (`ω > 0`) carries `n̄ + 1`, absorption side (`ω < 0`) `n̄`.
pub fn fdt_spectrum(im_green: f64, env: &ThermalEnvironment, omega: f64) -> Result<f64> {
    check_frequency(omega)?;
    let n = thermal_occupation(env, omega.abs())?;
    let factor = if omega > 0.0 { n + 1.0 } else { n };
    Ok(2.0 * HBAR * factor * im_green)
}
