//! Physical noise spectra above a surface: electric field, magnetic field and
//! the vertical gradient of the Zeeman force.
//!
//! Asymptotic spectra are written with the Bose-corrected thermal energy
//! `ħω/(1 − e^{−ħω/k_BT})` in place of `k_BT`; in the high-temperature limit
//! they are exactly the published closed forms.

use std::f64::consts::PI;

use super::tensors::{g_asymptotic, g_exact, h_asymptotic, h_curvature_exact, h_exact, SurfaceResponse, TensorPair};
use crate::constants::{MU_0, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::physical_model::{
    blackbody_electric_spectrum, dielectric_function, skin_depth, Material, ThermalEnvironment,
};
use crate::quadrature::QuadratureOptions;

/// `kz` below which `Auto` picks the interpolation formulas.
pub const AUTO_KZ_LIMIT: f64 = 1e-3;
/// `|ε|` above which `Auto` treats the surface as a good conductor.
pub const AUTO_EPS_LIMIT: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceGeometry {
    distance: f64,
}

impl SurfaceGeometry {
    /// Trap centre at `distance` metres above the surface.
    pub fn new(distance: f64) -> Result<Self> {
        if !(distance.is_finite() && distance > 0.0) {
            return Err(Error::domain(format!(
                "distance to the surface must be positive, got {distance}"
            )));
        }
        Ok(Self { distance })
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    Electric,
    Magnetic,
    /// Only the `zz` component (trap axis normal to the surface).
    ForceGradientZz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvaluationMethod {
    ExactQuadrature,
    AsymptoticInterpolation,
    PerfectConductor,
}

impl EvaluationMethod {
    pub fn label(&self) -> &'static str {
        match self {
            Self::ExactQuadrature => "exact",
            Self::AsymptoticInterpolation => "asymptotic",
            Self::PerfectConductor => "perfect_conductor",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Exact,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    pub method: MethodChoice,
    /// Add the free-space (Planck) contribution to the near-field term.
    pub include_blackbody: bool,
    pub quadrature: QuadratureOptions,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            method: MethodChoice::Auto,
            include_blackbody: false,
            quadrature: QuadratureOptions::default(),
        }
    }
}

impl SpectrumOptions {
    pub fn with_method(mut self, method: MethodChoice) -> Self {
        self.method = method;
        self
    }

    pub fn with_blackbody(mut self, include: bool) -> Self {
        self.include_blackbody = include;
        self
    }
}

/// Diagonal noise tensor in the surface frame (`xx = yy = parallel`,
/// `zz = perpendicular`).
///
/// For [`SpectrumKind::ForceGradientZz`] only `perpendicular` is computed and
/// `parallel` is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalSpectrumTensor {
    pub parallel: f64,
    pub perpendicular: f64,
    /// Signed angular frequency.
    pub frequency: f64,
    pub kind: SpectrumKind,
    pub method: EvaluationMethod,
    /// Relative quadrature error for exact evaluations.
    pub rel_error: Option<f64>,
    /// Set when an interpolation was used outside `kz < 0.1`.
    pub beyond_quasi_static: bool,
}

impl DiagonalSpectrumTensor {
    /// `Σ_ij n_i n_j S^{ij}` for a unit vector `n`.
    pub fn project(&self, axis: [f64; 3]) -> f64 {
        (axis[0] * axis[0] + axis[1] * axis[1]) * self.parallel + axis[2] * axis[2] * self.perpendicular
    }
}

/// Expectation values `⟨μ²⟩` and `⟨μ_z²⟩` (surface normal) in (J/T)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagneticMoments {
    pub mu_sq: f64,
    pub mu_normal_sq: f64,
}

impl MagneticMoments {
    pub fn new(mu_sq: f64, mu_normal_sq: f64) -> Result<Self> {
        if !(mu_sq.is_finite() && mu_normal_sq >= 0.0 && mu_normal_sq <= mu_sq * (1.0 + 1e-12)) {
            return Err(Error::domain(format!(
                "need 0 <= <mu_z^2> <= <mu^2>, got {mu_normal_sq} and {mu_sq}"
            )));
        }
        Ok(Self { mu_sq, mu_normal_sq })
    }

    /// `⟨μ² + μ_z²⟩`.
    pub fn gradient_weight(&self) -> f64 {
        self.mu_sq + self.mu_normal_sq
    }
}

struct Setup {
    eps: num_complex::Complex64,
    k: f64,
    kz: f64,
    z: f64,
    delta: f64,
    method: EvaluationMethod,
}

fn setup(material: &Material, geom: &SurfaceGeometry, omega: f64, choice: MethodChoice) -> Result<Setup> {
    let eps = dielectric_function(material, omega.abs())?;
    let delta = skin_depth(material, omega)?;
    let k = omega.abs() / SPEED_OF_LIGHT;
    let z = geom.distance();
    let kz = k * z;
    let method = match choice {
        MethodChoice::Exact => EvaluationMethod::ExactQuadrature,
        MethodChoice::Asymptotic => EvaluationMethod::AsymptoticInterpolation,
        MethodChoice::Auto => {
            if kz < AUTO_KZ_LIMIT && eps.norm() >= AUTO_EPS_LIMIT {
                EvaluationMethod::AsymptoticInterpolation
            } else {
                EvaluationMethod::ExactQuadrature
            }
        }
    };
    Ok(Setup {
        eps,
        k,
        kz,
        z,
        delta,
        method,
    })
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    tensor: TensorPair,
    scale: f64,
    background: f64,
    omega: f64,
    kind: SpectrumKind,
    method: EvaluationMethod,
    rel_error: Option<f64>,
    beyond_quasi_static: bool,
) -> DiagonalSpectrumTensor {
    DiagonalSpectrumTensor {
        parallel: tensor.parallel * scale + background,
        perpendicular: tensor.perpendicular * scale + background,
        frequency: omega,
        kind,
        method,
        rel_error,
        beyond_quasi_static,
    }
}

/// Electric field spectrum `S_bb(ω)·g_ij(kz)` in (V/m)²·s.
///
/// The asymptotic route equals `Θ(ω)ϱ/(4πz³)·(s_ij + δ_ij z/δ)` with `Θ` the
/// Bose-corrected thermal energy.
pub fn electric_nearfield_spectrum(
    material: &Material,
    env: &ThermalEnvironment,
    geom: &SurfaceGeometry,
    omega: f64,
    opts: &SpectrumOptions,
) -> Result<DiagonalSpectrumTensor> {
    let s = setup(material, geom, omega, opts.method)?;
    let planck = blackbody_electric_spectrum(env, omega);
    let background = if opts.include_blackbody { planck } else { 0.0 };
    let (tensor, rel_error, beyond) = match s.method {
        EvaluationMethod::AsymptoticInterpolation => {
            let a = g_asymptotic(s.kz, s.z / s.delta)?;
            (a.value, None, !a.quasi_static)
        }
        _ => {
            let e = g_exact(s.kz, SurfaceResponse::lossy(s.eps)?, &opts.quadrature)?;
            (e.value, Some(e.rel_error()), false)
        }
    };
    Ok(assemble(
        tensor,
        planck,
        background,
        omega,
        SpectrumKind::Electric,
        s.method,
        rel_error,
        beyond,
    ))
}

/// Magnetic field spectrum `S_bb(ω)/c²·h_ij(kz)` in T²·s.
pub fn magnetic_nearfield_spectrum(
    material: &Material,
    env: &ThermalEnvironment,
    geom: &SurfaceGeometry,
    omega: f64,
    opts: &SpectrumOptions,
) -> Result<DiagonalSpectrumTensor> {
    let s = setup(material, geom, omega, opts.method)?;
    let planck = blackbody_electric_spectrum(env, omega) / (SPEED_OF_LIGHT * SPEED_OF_LIGHT);
    let background = if opts.include_blackbody { planck } else { 0.0 };
    let (tensor, rel_error, beyond) = match s.method {
        EvaluationMethod::AsymptoticInterpolation => {
            let a = h_asymptotic(s.kz, s.z / s.delta)?;
            (a.value, None, !a.quasi_static)
        }
        _ => {
            let e = h_exact(s.kz, SurfaceResponse::lossy(s.eps)?, &opts.quadrature)?;
            (e.value, Some(e.rel_error()), false)
        }
    };
    Ok(assemble(
        tensor,
        planck,
        background,
        omega,
        SpectrumKind::Magnetic,
        s.method,
        rel_error,
        beyond,
    ))
}

/// Free-space part of the `zz` force-gradient spectrum:
/// `(S_bb/c²)(k²/5)(2⟨μ²⟩ − ⟨μ_z²⟩)`.
pub fn blackbody_force_gradient_zz(env: &ThermalEnvironment, omega: f64, moments: &MagneticMoments) -> f64 {
    let k = omega / SPEED_OF_LIGHT;
    let planck = blackbody_electric_spectrum(env, omega) / (SPEED_OF_LIGHT * SPEED_OF_LIGHT);
    planck * k * k / 5.0 * (2.0 * moments.mu_sq - moments.mu_normal_sq)
}

/// `zz` spectrum of the Zeeman force `∇(μ·B)` in N²·s, for a trap axis
/// normal to the surface.
///
/// The asymptotic route is
/// `μ₀²Θ/(64πϱ) · ⟨μ² + μ_z²⟩/z³ · (1 + z³/(15δ³))⁻¹`; the exact route
/// integrates the vertical curvature of the magnetic correlation.
pub fn force_gradient_spectrum_zz(
    material: &Material,
    env: &ThermalEnvironment,
    geom: &SurfaceGeometry,
    omega: f64,
    moments: &MagneticMoments,
    opts: &SpectrumOptions,
) -> Result<DiagonalSpectrumTensor> {
    let s = setup(material, geom, omega, opts.method)?;
    let background = if opts.include_blackbody {
        blackbody_force_gradient_zz(env, omega, moments)
    } else {
        0.0
    };
    let (value, rel_error, beyond) = match s.method {
        EvaluationMethod::AsymptoticInterpolation => {
            let theta = env.spectral_energy(omega);
            let ratio = s.z / s.delta;
            let v = MU_0 * MU_0 * theta / (64.0 * PI * material.resistivity()) * moments.gradient_weight()
                / s.z.powi(3)
                / (1.0 + ratio.powi(3) / 15.0);
            (v, None, s.kz >= super::tensors::QUASI_STATIC_LIMIT)
        }
        _ => {
            let e = h_curvature_exact(s.kz, SurfaceResponse::lossy(s.eps)?, &opts.quadrature)?;
            let planck = blackbody_electric_spectrum(env, omega) / (SPEED_OF_LIGHT * SPEED_OF_LIGHT);
            let lateral = moments.mu_sq - moments.mu_normal_sq;
            let v = planck * s.k * s.k * (lateral * e.value.parallel + moments.mu_normal_sq * e.value.perpendicular);
            (v, Some(e.rel_error()), false)
        }
    };
    Ok(DiagonalSpectrumTensor {
        parallel: 0.0,
        perpendicular: value + background,
        frequency: omega,
        kind: SpectrumKind::ForceGradientZz,
        method: s.method,
        rel_error,
        beyond_quasi_static: beyond,
    })
}

/// High-temperature electric closed form `k_BTϱ/(4πz³)(s_ij + δ_ij z/δ)`.
pub fn electric_closed_form(material: &Material, env: &ThermalEnvironment, z: f64, omega: f64) -> Result<TensorPair> {
    let delta = skin_depth(material, omega)?;
    let pref = env.thermal_energy() * material.resistivity() / (4.0 * PI * z.powi(3));
    Ok(TensorPair::new(pref * (0.5 + z / delta), pref * (1.0 + z / delta)))
}

/// High-temperature magnetic closed form
/// `μ₀²k_BT/(16πϱ) · s_ij/z · (1 + 2z³/(3δ³))⁻¹`.
pub fn magnetic_closed_form(material: &Material, env: &ThermalEnvironment, z: f64, omega: f64) -> Result<TensorPair> {
    let delta = skin_depth(material, omega)?;
    let pref = MU_0 * MU_0 * env.thermal_energy()
        / (16.0 * PI * material.resistivity() * z)
        / (1.0 + 2.0 * (z / delta).powi(3) / 3.0);
    Ok(TensorPair::new(0.5 * pref, pref))
}
