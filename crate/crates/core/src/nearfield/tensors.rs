//! Dimensionless near-field tensors `g` (electric) and `h` (magnetic).
//!
//! Both are diagonal in the surface frame with `xx = yy = parallel` and
//! `zz = perpendicular`, and multiply the free-space Planck spectrum.
//!
//! The exact route integrates over the transverse wave number `u`, split at
//! `u = 1`:
//!
//! * propagating waves, `u ∈ [0, 1]`: substituting `v = sqrt(1 − u²)` turns
//!   `u du / v` into `dv`, which removes the inverse square-root singularity;
//! * evanescent waves, `u > 1`: with `w = sqrt(u² − 1)` the measure becomes
//!   `dw` and the integrand carries `e^{−2kz w}`, truncated where that factor
//!   falls below `e^{−30}`.
//!
//! Both pieces are fed to one adaptive integration on a single parameter `t`
//! (`t = v` for `t ≤ 1`, `t = 1 + w` beyond) so that the tolerance applies to
//! the combined value.

use num_complex::Complex64;

use super::fresnel::{reflection, Reflection};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_panels, QuadratureOptions};

/// Above this `kz` the quasi-static interpolations are flagged.
pub const QUASI_STATIC_LIMIT: f64 = 0.1;

/// Reflecting half-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceResponse {
    /// Finite permittivity with `Im ε > 0`.
    Lossy(Complex64),
    /// `r_p = 1`, `r_s = −1` for every wave.
    PerfectConductor,
}

impl SurfaceResponse {
    pub fn lossy(eps: Complex64) -> Result<Self> {
        if !(eps.re.is_finite() && eps.im.is_finite()) {
            return Err(Error::domain(format!("permittivity must be finite, got {eps}")));
        }
        if eps.im <= 0.0 {
            return Err(Error::domain(format!(
                "lossless or gain media are not supported (Im ε = {})",
                eps.im
            )));
        }
        Ok(Self::Lossy(eps))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorPair {
    pub parallel: f64,
    pub perpendicular: f64,
}

impl TensorPair {
    pub fn new(parallel: f64, perpendicular: f64) -> Self {
        Self {
            parallel,
            perpendicular,
        }
    }

    /// `perpendicular / parallel`.
    pub fn anisotropy(&self) -> f64 {
        self.perpendicular / self.parallel
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.parallel * factor, self.perpendicular * factor)
    }
}

/// Quadrature result with per-component absolute error estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorEstimate {
    pub value: TensorPair,
    pub abs_error: TensorPair,
    pub subdivisions: usize,
}

impl TensorEstimate {
    pub fn rel_error(&self) -> f64 {
        let r = |v: f64, e: f64| if v == 0.0 { e } else { e / v.abs() };
        r(self.value.parallel, self.abs_error.parallel).max(r(self.value.perpendicular, self.abs_error.perpendicular))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticTensor {
    pub value: TensorPair,
    /// False when `kz ≥ 0.1`, where the quasi-static forms are not reliable.
    pub quasi_static: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Electric,
    Magnetic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Moment {
    Value,
    /// `(1/(4k²)) ∂²/∂z²`, the weight `−v²` under the integral.
    Curvature,
}

fn check_kz(kz: f64) -> Result<()> {
    if !(kz.is_finite() && kz > 0.0) {
        return Err(Error::domain(format!("kz must be positive and finite, got {kz}")));
    }
    Ok(())
}

fn check_ratio(z_over_delta: f64) -> Result<()> {
    if !(z_over_delta.is_finite() && z_over_delta > 0.0) {
        return Err(Error::domain(format!(
            "z/δ must be positive and finite, got {z_over_delta}"
        )));
    }
    Ok(())
}

fn evanescent_breakpoints(kz: f64, surface: SurfaceResponse, tail_exponent: f64) -> Vec<f64> {
    let w_max = (tail_exponent / (2.0 * kz)).max(10.0);
    let mut points = vec![0.0];
    let mut decade = 1.0;
    while decade < w_max {
        points.push(decade);
        decade *= 10.0;
    }
    if let SurfaceResponse::Lossy(eps) = surface {
        // near-grazing structure of sqrt(ε − u²) for weakly lossy dielectrics
        if eps.re > 1.0 {
            points.push((eps.re - 1.0).sqrt());
        }
        points.push(eps.norm().sqrt());
    }
    points.push(w_max);
    points.retain(|&w| w <= w_max);
    points.sort_by(f64::total_cmp);
    points.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    points
}

fn integrate_tensor(
    kz: f64,
    surface: SurfaceResponse,
    field: Field,
    moment: Moment,
    opts: &QuadratureOptions,
) -> Result<TensorEstimate> {
    check_kz(kz)?;

    let reflect = |u_sq: f64, v: Complex64| -> Reflection {
        match surface {
            SurfaceResponse::Lossy(eps) => reflection(u_sq, v, eps),
            SurfaceResponse::PerfectConductor => Reflection {
                rs: Complex64::new(-1.0, 0.0),
                rp: Complex64::new(1.0, 0.0),
                im_rs: 0.0,
                im_rp: 0.0,
            },
        }
    };

    let integrand = |t: f64| -> [f64; 2] {
        if t <= 1.0 {
            let v = t;
            let v_sq = v * v;
            let r = reflect((1.0 - v) * (1.0 + v), Complex64::new(v, 0.0));
            let (along, across) = match field {
                Field::Electric => (r.rs, r.rp),
                Field::Magnetic => (r.rp, r.rs),
            };
            let phase = Complex64::from_polar(1.0, 2.0 * kz * v);
            let weight = match moment {
                Moment::Value => 1.0,
                Moment::Curvature => -v_sq,
            };
            [
                0.75 * weight * (phase * (along - v_sq * across)).re,
                1.5 * weight * (1.0 - v_sq) * (phase * across).re,
            ]
        } else {
            let w = t - 1.0;
            let w_sq = w * w;
            let r = reflect(1.0 + w_sq, Complex64::new(0.0, w));
            let (along, across) = match field {
                Field::Electric => (r.im_rs, r.im_rp),
                Field::Magnetic => (r.im_rp, r.im_rs),
            };
            let decay = (-2.0 * kz * w).exp();
            let weight = match moment {
                Moment::Value => 1.0,
                Moment::Curvature => w_sq,
            };
            [
                0.75 * weight * decay * (along + w_sq * across),
                1.5 * weight * decay * (1.0 + w_sq) * across,
            ]
        }
    };

    let propagating_panels = kz.ceil().min(1e4) as usize + 1;
    let mut breakpoints: Vec<f64> = (0..=propagating_panels)
        .map(|i| i as f64 / propagating_panels as f64)
        .collect();
    if matches!(surface, SurfaceResponse::Lossy(_)) {
        let tail = match moment {
            Moment::Value => 30.0,
            Moment::Curvature => 40.0,
        };
        breakpoints.extend(
            evanescent_breakpoints(kz, surface, tail)
                .into_iter()
                .skip(1)
                .map(|w| 1.0 + w),
        );
    }

    let integral = integrate_panels(integrand, &breakpoints, opts)?;
    Ok(TensorEstimate {
        value: TensorPair::new(integral.value[0], integral.value[1]),
        abs_error: TensorPair::new(integral.abs_error[0], integral.abs_error[1]),
        subdivisions: integral.subdivisions,
    })
}

/// Electric tensor `g(kz)` by adaptive quadrature.
pub fn g_exact(kz: f64, surface: SurfaceResponse, opts: &QuadratureOptions) -> Result<TensorEstimate> {
    integrate_tensor(kz, surface, Field::Electric, Moment::Value, opts)
}

/// Magnetic tensor `h(kz)` by adaptive quadrature (s and p exchanged
/// relative to `g`). Only lossy surfaces are accepted.
pub fn h_exact(kz: f64, surface: SurfaceResponse, opts: &QuadratureOptions) -> Result<TensorEstimate> {
    reject_perfect_conductor(surface)?;
    integrate_tensor(kz, surface, Field::Magnetic, Moment::Value, opts)
}

/// `(1/(4k²)) ∂²h/∂z²`: the vertical two-point curvature of the magnetic
/// correlation, which drives the Zeeman force-gradient noise.
pub fn h_curvature_exact(kz: f64, surface: SurfaceResponse, opts: &QuadratureOptions) -> Result<TensorEstimate> {
    reject_perfect_conductor(surface)?;
    integrate_tensor(kz, surface, Field::Magnetic, Moment::Curvature, opts)
}

fn reject_perfect_conductor(surface: SurfaceResponse) -> Result<()> {
    if surface == SurfaceResponse::PerfectConductor {
        return Err(Error::Unsupported(
            "perfect-conductor closed forms exist only for the electric tensor".into(),
        ));
    }
    Ok(())
}

/// Interpolation `g_ij = (3δ²/(8kz³))(s_ij + δ_ij z/δ)` with `s = diag(½, ½, 1)`,
/// valid for `kz ≪ 1` and `|ε| ≫ 1` across both sides of the skin depth.
pub fn g_asymptotic(kz: f64, z_over_delta: f64) -> Result<AsymptoticTensor> {
    check_kz(kz)?;
    check_ratio(z_over_delta)?;
    let prefactor = 3.0 / (8.0 * kz * z_over_delta * z_over_delta);
    Ok(AsymptoticTensor {
        value: TensorPair::new(prefactor * (0.5 + z_over_delta), prefactor * (1.0 + z_over_delta)),
        quasi_static: kz < QUASI_STATIC_LIMIT,
    })
}

/// Interpolation `h_ij = (3 s_ij/(8k³δ²z)) (1 + 2z³/(3δ³))⁻¹`.
///
/// `h_perp = 2 h_par` holds identically; the exact tensor approaches that
/// ratio on both sides of the skin depth.
pub fn h_asymptotic(kz: f64, z_over_delta: f64) -> Result<AsymptoticTensor> {
    check_kz(kz)?;
    check_ratio(z_over_delta)?;
    // k³δ²z = (kz)³ / (z/δ)²
    let base = 3.0 * z_over_delta * z_over_delta / (8.0 * kz.powi(3));
    let damping = 1.0 / (1.0 + 2.0 * z_over_delta.powi(3) / 3.0);
    Ok(AsymptoticTensor {
        value: TensorPair::new(0.5 * base * damping, base * damping),
        quasi_static: kz < QUASI_STATIC_LIMIT,
    })
}

/// Closed forms above a perfect conductor. `g_par → −1`, `g_perp → 1` as
/// `kz → 0`; both decay with oscillations of period `λ/2` in `z`.
pub fn g_perfect_conductor(kz: f64) -> Result<TensorPair> {
    check_kz(kz)?;
    let x = 2.0 * kz;
    let (cubic, sinc) = if x < 0.1 {
        let x2 = x * x;
        (
            1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0 - x2.powi(3) / 45_360.0 + x2.powi(4) / 3_991_680.0,
            1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2.powi(3) / 5_040.0 + x2.powi(4) / 362_880.0,
        )
    } else {
        let (s, c) = x.sin_cos();
        (s / x.powi(3) - c / (x * x), s / x)
    };
    Ok(TensorPair::new(1.5 * (cubic - sinc), 3.0 * cubic))
}

/// `z ≪ δ ≪ λ`: `g_par = (3/(16(kz)³)) Im((ε−1)/(ε+1))`, `g_perp = 2 g_par`.
pub fn g_short_distance(kz: f64, eps: Complex64) -> Result<TensorPair> {
    check_kz(kz)?;
    let par = 3.0 / (16.0 * kz.powi(3)) * ((eps - 1.0) / (eps + 1.0)).im;
    Ok(TensorPair::new(par, 2.0 * par))
}

/// `δ ≪ z ≪ λ`: `g_par = g_perp = (3/(4(kz)²)) Re(1/√ε)`.
pub fn g_intermediate(kz: f64, eps: Complex64) -> Result<TensorPair> {
    check_kz(kz)?;
    let par = 0.75 / (kz * kz) * (1.0 / eps.sqrt()).re;
    Ok(TensorPair::new(par, par))
}

/// `z ≪ δ ≪ λ`: `h_par = (3/(32kz)) Im((ε−1)(ε+5)/(ε+1))`,
/// `h_perp = (3/(16kz)) Im(ε−1)`.
pub fn h_short_distance(kz: f64, eps: Complex64) -> Result<TensorPair> {
    check_kz(kz)?;
    Ok(TensorPair::new(
        3.0 / (32.0 * kz) * ((eps - 1.0) * (eps + 5.0) / (eps + 1.0)).im,
        3.0 / (16.0 * kz) * (eps - 1.0).im,
    ))
}

/// `δ ≪ z ≪ λ`: `h_par = (9/(16(kz)⁴)) Re(1/√ε)`, `h_perp = 2 h_par`.
pub fn h_intermediate(kz: f64, eps: Complex64) -> Result<TensorPair> {
    check_kz(kz)?;
    let par = 9.0 / (16.0 * kz.powi(4)) * (1.0 / eps.sqrt()).re;
    Ok(TensorPair::new(par, 2.0 * par))
}
