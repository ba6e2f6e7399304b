//! Heating, loss and coherence rates from the near-field noise spectra, and
//! population dynamics on the motional ladder.
//!
//! Heating (`0 → 1`) samples the spectra at `−Ω` and cooling at `+Ω`, so the
//! rates stay correct as `T → 0`.

mod ladder;

use crate::angular_momentum::{
    hyperfine_matrix_element_sq_avg, zeeman_matrix_element, Axis, HalfInteger, SpinSystem, TrapBasisAngle,
};
use crate::constants::{BOHR_MAGNETON, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::nearfield::{
    electric_nearfield_spectrum, force_gradient_spectrum_zz, magnetic_nearfield_spectrum, DiagonalSpectrumTensor,
    EvaluationMethod, MagneticMoments, SpectrumKind, SpectrumOptions, SurfaceGeometry,
};
use crate::physical_model::{blackbody_electric_spectrum, Material, ThermalEnvironment};

pub use ladder::{evolve_populations, max_step, LadderState, POSITIVITY_TOLERANCE, TRUNCATION_LIMIT};

/// What the trap field couples to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrapCoupling {
    /// Charge in coulombs; the force is `qE`.
    Charge(f64),
    /// Neutral atom in the trap-basis state `|S, m⟩_θ`; the force is
    /// `∇(μ·B)`.
    Spin {
        system: SpinSystem,
        m: HalfInteger,
        theta: TrapBasisAngle,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapConfig {
    trap_frequency: f64,
    mass: f64,
    axis: [f64; 3],
    geometry: SurfaceGeometry,
    coupling: TrapCoupling,
}

impl TrapConfig {
    /// `trap_frequency` is angular (rad/s); `axis` is normalised here and
    /// must not be the zero vector.
    pub fn new(
        trap_frequency: f64,
        mass: f64,
        axis: [f64; 3],
        geometry: SurfaceGeometry,
        coupling: TrapCoupling,
    ) -> Result<Self> {
        let mut problems = Vec::new();
        if !(trap_frequency.is_finite() && trap_frequency > 0.0) {
            problems.push(format!("trap frequency must be positive, got {trap_frequency}"));
        }
        if !(mass.is_finite() && mass > 0.0) {
            problems.push(format!("mass must be positive, got {mass}"));
        }
        let norm = axis.iter().map(|a| a * a).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            problems.push("trap axis must be a non-zero vector".to_string());
        }
        if let TrapCoupling::Spin { system, m, .. } = coupling {
            if m.twice().abs() > system.s().twice() || (system.s().twice() - m.twice()) % 2 != 0 {
                problems.push(format!("m = {m} is not a projection of S = {}", system.s()));
            }
        }
        if !problems.is_empty() {
            return Err(Error::Domain(problems.join("; ")));
        }
        Ok(Self {
            trap_frequency,
            mass,
            axis: axis.map(|a| a / norm),
            geometry,
            coupling,
        })
    }

    /// Singly charged ion of mass `mass` (kg) oscillating along the surface
    /// normal.
    pub fn ion(trap_frequency: f64, mass: f64, distance: f64) -> Result<Self> {
        Self::new(
            trap_frequency,
            mass,
            [0.0, 0.0, 1.0],
            SurfaceGeometry::new(distance)?,
            TrapCoupling::Charge(crate::constants::ELEMENTARY_CHARGE),
        )
    }

    pub fn trap_frequency(&self) -> f64 {
        self.trap_frequency
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn geometry(&self) -> SurfaceGeometry {
        self.geometry
    }

    pub fn coupling(&self) -> TrapCoupling {
        self.coupling
    }

    pub fn with_distance(mut self, geometry: SurfaceGeometry) -> Self {
        self.geometry = geometry;
        self
    }

    /// Ground-state size `a = sqrt(ħ/(2MΩ))`.
    pub fn ground_state_size(&self) -> f64 {
        (HBAR / (2.0 * self.mass * self.trap_frequency)).sqrt()
    }

    fn is_normal_axis(&self) -> bool {
        (self.axis[2].abs() - 1.0).abs() < 1e-12
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RateOptions {
    pub spectrum: SpectrumOptions,
}

impl RateOptions {
    pub fn new(spectrum: SpectrumOptions) -> Self {
        Self { spectrum }
    }
}

/// One spectrum entering a rate, with the weight it is multiplied by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateTerm {
    pub spectrum: DiagonalSpectrumTensor,
    /// Spectrum component used (`parallel` or `perpendicular`), or the axis
    /// projection for tilted traps.
    pub spectrum_value: f64,
    /// Matrix element squared or coupling factor.
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateResult {
    /// Rate in s⁻¹.
    pub rate: f64,
    pub method: EvaluationMethod,
    /// Largest relative quadrature error among the spectra used.
    pub rel_error: Option<f64>,
    /// Overall factor in front of `Σ weight · spectrum_value`.
    pub prefactor: f64,
    pub terms: Vec<RateTerm>,
}

impl RateResult {
    fn from_terms(prefactor: f64, terms: Vec<RateTerm>) -> Self {
        let rate = prefactor * terms.iter().map(|t| t.weight * t.spectrum_value).sum::<f64>();
        let method = terms
            .first()
            .map(|t| t.spectrum.method)
            .unwrap_or(EvaluationMethod::AsymptoticInterpolation);
        let rel_error = terms.iter().filter_map(|t| t.spectrum.rel_error).reduce(f64::max);
        Self {
            rate: rate.max(0.0),
            method,
            rel_error,
            prefactor,
            terms,
        }
    }
}

/// `⟨μ²⟩` and `⟨μ_z²⟩` of the trap-basis state `|S, m⟩_θ` with
/// `μ = g_S μ_B S`.
pub fn magnetic_moments(system: &SpinSystem, m: HalfInteger, theta: TrapBasisAngle) -> Result<MagneticMoments> {
    let scale = (system.g_s() * BOHR_MAGNETON).powi(2);
    let s2 = system.s().casimir();
    let m2 = m.value().powi(2);
    let (sin, cos) = theta.radians().sin_cos();
    MagneticMoments::new(scale * s2, scale * (cos * cos * m2 + sin * sin * (s2 - m2) / 2.0))
}

/// `γ(ω) = (a²/ħ²) Σ_ij n_i n_j S_F^{ij}(ω)`.
///
/// Charges need an electric spectrum (`S_F = q² S_E`); spins need the `zz`
/// force-gradient spectrum and a trap axis along the surface normal.
pub fn gamma<F>(trap: &TrapConfig, spectrum_at: F, omega: f64) -> Result<f64>
where
    F: FnOnce(f64) -> Result<DiagonalSpectrumTensor>,
{
    Ok(gamma_detailed(trap, spectrum_at, omega)?.rate)
}

fn gamma_detailed<F>(trap: &TrapConfig, spectrum_at: F, omega: f64) -> Result<RateResult>
where
    F: FnOnce(f64) -> Result<DiagonalSpectrumTensor>,
{
    let a2 = trap.ground_state_size().powi(2);
    let spectrum = spectrum_at(omega)?;
    let (weight, value) = match trap.coupling {
        TrapCoupling::Charge(q) => {
            if spectrum.kind != SpectrumKind::Electric {
                return Err(Error::Unsupported(format!(
                    "charged trap needs an electric spectrum, got {:?}",
                    spectrum.kind
                )));
            }
            (q * q, spectrum.project(trap.axis))
        }
        TrapCoupling::Spin { .. } => {
            if spectrum.kind != SpectrumKind::ForceGradientZz {
                return Err(Error::Unsupported(format!(
                    "spin trap needs the zz force-gradient spectrum, got {:?}",
                    spectrum.kind
                )));
            }
            if !trap.is_normal_axis() {
                return Err(Error::Unsupported(
                    "spin heating is only available for a trap axis along the surface normal".into(),
                ));
            }
            (1.0, spectrum.perpendicular)
        }
    };
    Ok(RateResult::from_terms(
        a2 / (HBAR * HBAR),
        vec![RateTerm {
            spectrum,
            spectrum_value: value,
            weight,
        }],
    ))
}

fn force_spectrum(
    trap: &TrapConfig,
    material: &Material,
    env: &ThermalEnvironment,
    omega: f64,
    opts: &RateOptions,
) -> Result<DiagonalSpectrumTensor> {
    match trap.coupling {
        TrapCoupling::Charge(_) => electric_nearfield_spectrum(material, env, &trap.geometry, omega, &opts.spectrum),
        TrapCoupling::Spin { system, m, theta } => {
            let moments = magnetic_moments(&system, m, theta)?;
            force_gradient_spectrum_zz(material, env, &trap.geometry, omega, &moments, &opts.spectrum)
        }
    }
}

/// Upward (`γ₋`, heating) and downward (`γ₊`, cooling) rates between the
/// two lowest trap levels, in that order.
pub fn transition_rates(
    trap: &TrapConfig,
    material: &Material,
    env: &ThermalEnvironment,
    opts: &RateOptions,
) -> Result<(RateResult, RateResult)> {
    let w = trap.trap_frequency;
    let up = gamma_detailed(trap, |o| force_spectrum(trap, material, env, o, opts), -w)?;
    let down = gamma_detailed(trap, |o| force_spectrum(trap, material, env, o, opts), w)?;
    Ok((up, down))
}

/// Ground-state depletion rate `Γ₀→₁ = γ₋` of a charged trap.
pub fn ion_heating_rate(
    trap: &TrapConfig,
    material: &Material,
    env: &ThermalEnvironment,
    opts: &RateOptions,
) -> Result<RateResult> {
    if !matches!(trap.coupling, TrapCoupling::Charge(_)) {
        return Err(Error::Unsupported("ion heating needs a charged trap".into()));
    }
    let w = trap.trap_frequency;
    gamma_detailed(trap, |o| force_spectrum(trap, material, env, o, opts), -w)
}

/// Ground-state depletion rate of a neutral spin held by a magnetic-gradient
/// trap along the surface normal.
///
/// For `z ≪ δ` this is `μ₀² k_BT ⟨μ² + μ_z²⟩ / (64π ħ Ω M ϱ z³)`.
pub fn spin_heating_rate(
    trap: &TrapConfig,
    material: &Material,
    env: &ThermalEnvironment,
    opts: &RateOptions,
) -> Result<RateResult> {
    if !matches!(trap.coupling, TrapCoupling::Spin { .. }) {
        return Err(Error::Unsupported("spin heating needs a spin trap".into()));
    }
    let w = trap.trap_frequency;
    gamma_detailed(trap, |o| force_spectrum(trap, material, env, o, opts), -w)
}

fn check_transition_frequency(omega: f64) -> Result<()> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::domain(format!(
            "transition frequency must be positive, got {omega}"
        )));
    }
    Ok(())
}

fn axis_component(s: &DiagonalSpectrumTensor, axis: Axis) -> f64 {
    if axis.is_lateral() {
        s.parallel
    } else {
        s.perpendicular
    }
}

fn loss_from_elements(
    system: &SpinSystem,
    omega: f64,
    material: &Material,
    env: &ThermalEnvironment,
    geom: &SurfaceGeometry,
    opts: &RateOptions,
    elements: [f64; 3],
) -> Result<RateResult> {
    check_transition_frequency(omega)?;
    let spectrum_opts = opts.spectrum.with_blackbody(true);
    let spectrum = magnetic_nearfield_spectrum(material, env, geom, -omega, &spectrum_opts)?;
    let terms = Axis::ALL
        .iter()
        .zip(elements)
        .map(|(&axis, weight)| RateTerm {
            spectrum,
            spectrum_value: axis_component(&spectrum, axis),
            weight,
        })
        .collect();
    let prefactor = (system.g_s() * BOHR_MAGNETON / HBAR).powi(2);
    Ok(RateResult::from_terms(prefactor, terms))
}

/// Spin-flip rate `|S, m_i⟩_θ → |S, m_f⟩_θ` at Larmor frequency `omega_l`:
/// `(g_S μ_B/ħ)² Σ_α S_B^{αα}(−ω_L) |⟨m_f|S_α|m_i⟩_θ|²`, blackbody included.
#[allow(clippy::too_many_arguments)]
pub fn zeeman_loss_rate(
    system: &SpinSystem,
    m_initial: HalfInteger,
    m_final: HalfInteger,
    omega_l: f64,
    material: &Material,
    env: &ThermalEnvironment,
    geom: &SurfaceGeometry,
    theta: TrapBasisAngle,
    opts: &RateOptions,
) -> Result<RateResult> {
    let elements = zeeman_elements(system, m_initial, m_final, theta)?;
    loss_from_elements(system, omega_l, material, env, geom, opts, elements)
}

/// Hyperfine-changing rate `F_i → F_f` at splitting `omega_hf`, averaged over
/// initial sublevels and summed over final ones.
#[allow(clippy::too_many_arguments)]
pub fn hyperfine_loss_rate(
    system: &SpinSystem,
    omega_hf: f64,
    material: &Material,
    env: &ThermalEnvironment,
    geom: &SurfaceGeometry,
    f_initial: HalfInteger,
    f_final: HalfInteger,
    opts: &RateOptions,
) -> Result<RateResult> {
    let elements = hyperfine_elements(system, f_initial, f_final)?;
    loss_from_elements(system, omega_hf, material, env, geom, opts, elements)
}

fn zeeman_elements(
    system: &SpinSystem,
    m_initial: HalfInteger,
    m_final: HalfInteger,
    theta: TrapBasisAngle,
) -> Result<[f64; 3]> {
    let mut elements = [0.0; 3];
    for (e, axis) in elements.iter_mut().zip(Axis::ALL) {
        *e = zeeman_matrix_element(system.s(), m_final, m_initial, axis, theta)?.norm_sqr();
    }
    Ok(elements)
}

fn hyperfine_elements(system: &SpinSystem, f_initial: HalfInteger, f_final: HalfInteger) -> Result<[f64; 3]> {
    let mut elements = [0.0; 3];
    for (e, axis) in elements.iter_mut().zip(Axis::ALL) {
        *e = hyperfine_matrix_element_sq_avg(system, f_final, f_initial, axis)?;
    }
    Ok(elements)
}

fn blackbody_from_elements(
    system: &SpinSystem,
    omega: f64,
    env: &ThermalEnvironment,
    elements: [f64; 3],
) -> Result<f64> {
    check_transition_frequency(omega)?;
    let planck = blackbody_electric_spectrum(env, -omega) / (SPEED_OF_LIGHT * SPEED_OF_LIGHT);
    Ok((system.g_s() * BOHR_MAGNETON / HBAR).powi(2) * planck * elements.iter().sum::<f64>())
}

/// Free-space part of [`zeeman_loss_rate`].
pub fn zeeman_blackbody_rate(
    system: &SpinSystem,
    m_initial: HalfInteger,
    m_final: HalfInteger,
    omega_l: f64,
    env: &ThermalEnvironment,
    theta: TrapBasisAngle,
) -> Result<f64> {
    blackbody_from_elements(
        system,
        omega_l,
        env,
        zeeman_elements(system, m_initial, m_final, theta)?,
    )
}

/// Free-space part of [`hyperfine_loss_rate`].
pub fn hyperfine_blackbody_rate(
    system: &SpinSystem,
    omega_hf: f64,
    env: &ThermalEnvironment,
    f_initial: HalfInteger,
    f_final: HalfInteger,
) -> Result<f64> {
    blackbody_from_elements(system, omega_hf, env, hyperfine_elements(system, f_initial, f_final)?)
}

/// Decay rate of the `0-1` coherence, `(γ₊ + γ₋)/2`, with the feeding from
/// `ρ₁₂` neglected.
///
/// A Lindblad derivation with the same jump operators gives
/// `(γ₊ + 3γ₋)/2`; the two agree when `γ₋ ≪ γ₊`.
pub fn coherence_decay_rate(gamma_plus: f64, gamma_minus: f64) -> f64 {
    0.5 * (gamma_plus + gamma_minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{ATOMIC_MASS_UNIT, BOLTZMANN, ELEMENTARY_CHARGE, MU_0};
    use crate::nearfield::MethodChoice;
    use crate::physical_model::skin_depth;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn ion(z: f64) -> TrapConfig {
        TrapConfig::ion(2.0 * PI * 1e6, 40.0 * ATOMIC_MASS_UNIT, z).unwrap()
    }

    fn ion_closed_form(z: f64) -> f64 {
        let m = Material::copper();
        let w = 2.0 * PI * 1e6;
        let delta = skin_depth(&m, w).unwrap();
        ELEMENTARY_CHARGE.powi(2) * BOLTZMANN * 300.0 * 1.7e-8 * (1.0 + z / delta)
            / (8.0 * PI * HBAR * 40.0 * ATOMIC_MASS_UNIT * w * z.powi(3))
    }

    #[test]
    fn ion_heating_matches_closed_form() {
        let env = ThermalEnvironment::room_temperature();
        for z in [1e-6, 1e-5] {
            let r = ion_heating_rate(&ion(z), &Material::copper(), &env, &RateOptions::default()).unwrap();
            assert!(
                rel(r.rate, ion_closed_form(z)) < 1e-6,
                "{} vs {}",
                r.rate,
                ion_closed_form(z)
            );
        }
        let r = ion_heating_rate(&ion(1e-6), &Material::copper(), &env, &RateOptions::default()).unwrap();
        assert!(rel(r.rate, 1658.966) < 1e-5);
    }

    #[test]
    fn exact_ion_heating_tracks_closed_form() {
        let env = ThermalEnvironment::room_temperature();
        let m = Material::copper();
        let delta = skin_depth(&m, 2.0 * PI * 1e6).unwrap();
        let opts = RateOptions::new(SpectrumOptions::default().with_method(MethodChoice::Exact));
        for ratio in [0.01, 0.1, 10.0] {
            let z = ratio * delta;
            let r = ion_heating_rate(&ion(z), &m, &env, &opts).unwrap();
            assert_eq!(r.method, EvaluationMethod::ExactQuadrature);
            assert!(rel(r.rate, ion_closed_form(z)) < 0.2, "z/δ={ratio}");
        }
        // at the crossover the interpolation overshoots; mpmath quadrature
        // gives exact/interpolated = 0.69008868 for g_⊥ at z = δ
        let r = ion_heating_rate(&ion(delta), &m, &env, &opts).unwrap();
        assert!(rel(r.rate / ion_closed_form(delta), 0.690_088_68) < 1e-6);
    }

    #[test]
    fn tilted_axis_projects_tensor() {
        let env = ThermalEnvironment::room_temperature();
        let m = Material::copper();
        let geom = SurfaceGeometry::new(1e-6).unwrap();
        let mk = |axis| {
            TrapConfig::new(
                2e6 * PI,
                40.0 * ATOMIC_MASS_UNIT,
                axis,
                geom,
                TrapCoupling::Charge(ELEMENTARY_CHARGE),
            )
            .unwrap()
        };
        let o = RateOptions::default();
        let z = ion_heating_rate(&mk([0.0, 0.0, 1.0]), &m, &env, &o).unwrap().rate;
        let x = ion_heating_rate(&mk([1.0, 0.0, 0.0]), &m, &env, &o).unwrap().rate;
        let d = ion_heating_rate(&mk([1.0, 0.0, 1.0]), &m, &env, &o).unwrap().rate;
        assert!(rel(d, 0.5 * (x + z)) < 1e-12);
        assert!(rel(z / x, 2.0) < 0.05);
    }

    #[test]
    fn vacuum_does_not_heat() {
        let cold = ThermalEnvironment::new(0.0).unwrap();
        let (up, down) = transition_rates(&ion(1e-5), &Material::copper(), &cold, &RateOptions::default()).unwrap();
        assert_eq!(up.rate, 0.0);
        assert!(down.rate > 0.0);
        let hot = ThermalEnvironment::room_temperature();
        let (up, down) = transition_rates(&ion(1e-5), &Material::copper(), &hot, &RateOptions::default()).unwrap();
        assert!(rel(up.rate, down.rate) < 1e-6);
        let c = coherence_decay_rate(down.rate, up.rate);
        assert!(rel(c, 0.5 * (up.rate + down.rate)) < 1e-15);
    }

    #[test]
    fn coherence_examples() {
        assert_eq!(coherence_decay_rate(3.0, 3.0), 3.0);
        assert_eq!(coherence_decay_rate(0.0, 4.0), 2.0);
    }

    fn spin_trap(z: f64, theta: f64) -> TrapConfig {
        TrapConfig::new(
            2.0 * PI * 1e5,
            40.0 * ATOMIC_MASS_UNIT,
            [0.0, 0.0, 1.0],
            SurfaceGeometry::new(z).unwrap(),
            TrapCoupling::Spin {
                system: SpinSystem::electron(),
                m: HalfInteger::HALF,
                theta: TrapBasisAngle::new(theta).unwrap(),
            },
        )
        .unwrap()
    }

    #[test]
    fn spin_heating_matches_closed_form() {
        let env = ThermalEnvironment::room_temperature();
        let r = spin_heating_rate(
            &spin_trap(1e-6, 0.3),
            &Material::copper(),
            &env,
            &RateOptions::default(),
        )
        .unwrap();
        // (a²/ħ²) S_zz = μ₀² k_BT g²μ_B² / (128π ħΩMϱz³)
        let g = crate::constants::ELECTRON_G_FACTOR;
        let closed = MU_0 * MU_0 * BOLTZMANN * 300.0 * (BOHR_MAGNETON * g).powi(2)
            / (128.0 * PI * HBAR * 2.0 * PI * 1e5 * 40.0 * ATOMIC_MASS_UNIT * 1.7e-8 * 1e-18);
        assert!(rel(r.rate, closed) < 1e-5, "{} vs {closed}", r.rate);
        assert!(rel(r.rate, 0.074_963_9) < 1e-5);
    }

    #[test]
    fn spin_heating_scales_with_resistivity() {
        let env = ThermalEnvironment::room_temperature();
        let o = RateOptions::new(SpectrumOptions::default().with_method(MethodChoice::Asymptotic));
        let cu = spin_heating_rate(&spin_trap(1e-6, 0.0), &Material::copper(), &env, &o)
            .unwrap()
            .rate;
        let gl = spin_heating_rate(&spin_trap(1e-6, 0.0), &Material::glass(), &env, &o)
            .unwrap()
            .rate;
        assert!(rel(cu / gl, 1e9 / 1.7e-8) < 1e-6);
    }

    #[test]
    fn spin_heating_needs_normal_axis() {
        let t = TrapConfig::new(
            1e6,
            1e-25,
            [1.0, 0.0, 0.0],
            SurfaceGeometry::new(1e-6).unwrap(),
            TrapCoupling::Spin {
                system: SpinSystem::electron(),
                m: HalfInteger::HALF,
                theta: TrapBasisAngle::new(0.0).unwrap(),
            },
        )
        .unwrap();
        let env = ThermalEnvironment::room_temperature();
        let e = spin_heating_rate(&t, &Material::copper(), &env, &RateOptions::default());
        assert!(matches!(e, Err(Error::Unsupported(_))));
        assert!(ion_heating_rate(&t, &Material::copper(), &env, &RateOptions::default()).is_err());
    }

    #[test]
    fn trap_validation_lists_all_problems() {
        let g = SurfaceGeometry::new(1e-6).unwrap();
        let e = TrapConfig::new(-1.0, 0.0, [0.0; 3], g, TrapCoupling::Charge(1.0)).unwrap_err();
        let msg = e.to_string();
        assert!(
            msg.contains("trap frequency") && msg.contains("mass") && msg.contains("axis"),
            "{msg}"
        );
    }

    #[test]
    fn moments_for_spin_half_are_angle_free() {
        for theta in [0.0, 0.7, PI / 2.0, PI] {
            let m = magnetic_moments(
                &SpinSystem::electron(),
                HalfInteger::HALF,
                TrapBasisAngle::new(theta).unwrap(),
            )
            .unwrap();
            let g = crate::constants::ELECTRON_G_FACTOR;
            assert!(rel(m.gradient_weight(), (g * BOHR_MAGNETON).powi(2)) < 1e-12);
        }
    }

    fn larmor_rate(z: f64, omega: f64, theta: f64) -> f64 {
        zeeman_loss_rate(
            &SpinSystem::electron(),
            HalfInteger::HALF,
            HalfInteger::from_twice(-1),
            omega,
            &Material::copper(),
            &ThermalEnvironment::room_temperature(),
            &SurfaceGeometry::new(z).unwrap(),
            TrapBasisAngle::new(theta).unwrap(),
            &RateOptions::default(),
        )
        .unwrap()
        .rate
    }

    #[test]
    fn zeeman_far_field_baseline() {
        let w = 2.0 * PI * 1e8;
        let bb = zeeman_blackbody_rate(
            &SpinSystem::electron(),
            HalfInteger::HALF,
            HalfInteger::from_twice(-1),
            w,
            &ThermalEnvironment::room_temperature(),
            TrapBasisAngle::new(PI / 2.0).unwrap(),
        )
        .unwrap();
        assert!(rel(bb, 1.25447e-13) < 1e-5, "{bb}");
        // kz = 2e3: the reflected field is a 1e-3 correction
        let r = larmor_rate(1e3, w, PI / 2.0);
        assert!(rel(r, bb) < 1e-2, "{r}");
    }

    #[test]
    fn zeeman_near_surface_enhancement() {
        let w = 2.0 * PI * 1e8;
        let z = 1e-7;
        let env = ThermalEnvironment::room_temperature();
        let near = larmor_rate(z, w, PI / 2.0);
        let b = magnetic_nearfield_spectrum(
            &Material::copper(),
            &env,
            &SurfaceGeometry::new(z).unwrap(),
            -w,
            &SpectrumOptions::default(),
        )
        .unwrap();
        let planck =
            crate::physical_model::blackbody_electric_spectrum(&env, -w) / crate::constants::SPEED_OF_LIGHT.powi(2);
        let bb = zeeman_blackbody_rate(
            &SpinSystem::electron(),
            HalfInteger::HALF,
            HalfInteger::from_twice(-1),
            w,
            &env,
            TrapBasisAngle::new(PI / 2.0).unwrap(),
        )
        .unwrap();
        let expected = 1.0 + 0.5 * (b.parallel + b.perpendicular) / planck;
        assert!(rel(near / bb, expected) < 1e-9);
    }

    #[test]
    fn zeeman_theta_free_when_isotropic() {
        let env = ThermalEnvironment::room_temperature();
        let rates: Vec<f64> = [0.0, 0.4, PI / 2.0]
            .iter()
            .map(|&t| {
                zeeman_blackbody_rate(
                    &SpinSystem::electron(),
                    HalfInteger::HALF,
                    HalfInteger::from_twice(-1),
                    1e9,
                    &env,
                    TrapBasisAngle::new(t).unwrap(),
                )
                .unwrap()
            })
            .collect();
        assert!(rel(rates[0], rates[2]) < 1e-14 && rel(rates[1], rates[2]) < 1e-14);
    }

    #[test]
    fn zeeman_rejects_bad_frequency() {
        let e = zeeman_loss_rate(
            &SpinSystem::electron(),
            HalfInteger::HALF,
            HalfInteger::from_twice(-1),
            0.0,
            &Material::copper(),
            &ThermalEnvironment::room_temperature(),
            &SurfaceGeometry::new(1e-6).unwrap(),
            TrapBasisAngle::new(0.0).unwrap(),
            &RateOptions::default(),
        );
        assert!(e.is_err());
    }

    #[test]
    fn hyperfine_blackbody_vanishes_with_frequency() {
        let rb = crate::angular_momentum::AtomPreset::rb85();
        let env = ThermalEnvironment::room_temperature();
        let run = |w: f64| hyperfine_blackbody_rate(&rb.system, w, &env, rb.f_lower, rb.f_upper).unwrap();
        assert!(rel(run(1e3) / run(1e6), 1e-6) < 1e-6);
    }

    #[test]
    fn hyperfine_near_field_is_frequency_flat_close_in() {
        // z ≪ δ: S_B ∝ 1/(ϱz) carries no ω, so the loss rate does not vanish
        let rb = crate::angular_momentum::AtomPreset::rb85();
        let run = |w: f64| {
            hyperfine_loss_rate(
                &rb.system,
                w,
                &Material::copper(),
                &ThermalEnvironment::room_temperature(),
                &SurfaceGeometry::new(1e-7).unwrap(),
                rb.f_lower,
                rb.f_upper,
                &RateOptions::default(),
            )
            .unwrap()
            .rate
        };
        assert!(rel(run(1e3), run(1e5)) < 1e-3);
    }
}
