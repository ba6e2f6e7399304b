//! Planar Fresnel coefficients as functions of `u`, the sine of the angle of
//! incidence (`u > 1` for evanescent waves).
//!
//! The coefficients are evaluated in forms that keep full relative precision
//! for `|ε| ≫ 1` and `u ≫ 1`, where the textbook ratios lose everything but
//! the leading digits of `r_p ≈ 1` and `r_s ≈ (ε − 1)/(4u²)`.

use num_complex::Complex64;

/// `v = sqrt(1 − u²)` for `u ≤ 1`, `i·sqrt(u² − 1)` above.
pub fn v_of_u(u: f64) -> Complex64 {
    if u <= 1.0 {
        Complex64::new(((1.0 - u) * (1.0 + u)).sqrt(), 0.0)
    } else {
        Complex64::new(0.0, ((u - 1.0) * (u + 1.0)).sqrt())
    }
}

/// Square root on the branch with non-negative imaginary part.
pub(crate) fn sqrt_upper(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if x == 0.0 && y == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let t = ((x.abs() + x.hypot(y)) * 0.5).sqrt();
    let root = if x >= 0.0 {
        Complex64::new(t, y / (2.0 * t))
    } else {
        Complex64::new(y.abs() / (2.0 * t), t.copysign(y))
    };
    if root.im < 0.0 {
        -root
    } else {
        root
    }
}

/// Reflection amplitudes plus their imaginary parts computed without
/// cancellation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Reflection {
    pub rs: Complex64,
    pub rp: Complex64,
    pub im_rs: f64,
    pub im_rp: f64,
}

/// `u_sq = u²` and `v` must be consistent (`v² = 1 − u²`).
pub(crate) fn reflection(u_sq: f64, v: Complex64, eps: Complex64) -> Reflection {
    let b = sqrt_upper(eps - u_sq);
    // r_p = 1 − 2B/(εv + B)
    let p_deficit = 2.0 * b / (eps * v + b);
    // r_s = (v − B)/(v + B) = (1 − ε)/(v + B)²
    let sum = v + b;
    let rs = (1.0 - eps) / (sum * sum);
    Reflection {
        rs,
        rp: 1.0 - p_deficit,
        im_rs: rs.im,
        im_rp: -p_deficit.im,
    }
}

pub fn fresnel_rp(u: f64, eps: Complex64) -> Complex64 {
    reflection(u * u, v_of_u(u), eps).rp
}

pub fn fresnel_rs(u: f64, eps: Complex64) -> Complex64 {
    reflection(u * u, v_of_u(u), eps).rs
}
