//! Spin matrix elements in the quantisation basis, in the tilted trap basis,
//! and between hyperfine sublevels.

use num_complex::Complex64;

use super::{check_projection, Axis, CouplingTable, HalfInteger, HyperfineLevel, SpinSystem, TrapBasisAngle};
use crate::error::{Error, Result};

/// `⟨j m_f| S_α |j m_i⟩` with quantisation along `z`.
pub fn spin_matrix_element(j: HalfInteger, m_f: HalfInteger, m_i: HalfInteger, axis: Axis) -> Result<Complex64> {
    if j.twice() < 0 {
        return Err(Error::domain(format!("spin must be non-negative, got {j}")));
    }
    check_projection(j, m_f)?;
    check_projection(j, m_i)?;
    Ok(element_unchecked(j, m_f, m_i, axis))
}

fn ladder(j: HalfInteger, m: HalfInteger, up: bool) -> f64 {
    let (j, m) = (j.value(), m.value());
    let x = if up {
        j * (j + 1.0) - m * (m + 1.0)
    } else {
        j * (j + 1.0) - m * (m - 1.0)
    };
    x.max(0.0).sqrt()
}

fn element_unchecked(j: HalfInteger, m_f: HalfInteger, m_i: HalfInteger, axis: Axis) -> Complex64 {
    let dm = m_f.twice() - m_i.twice();
    // ⟨m_f|S_+|m_i⟩ and ⟨m_f|S_−|m_i⟩
    let plus = if dm == 2 { ladder(j, m_i, true) } else { 0.0 };
    let minus = if dm == -2 { ladder(j, m_i, false) } else { 0.0 };
    match axis {
        Axis::X => Complex64::new(0.5 * (plus + minus), 0.0),
        Axis::Y => Complex64::new(0.0, -0.5 * (plus - minus)),
        Axis::Z => Complex64::new(if dm == 0 { m_i.value() } else { 0.0 }, 0.0),
    }
}

/// `⟨m_f| S_α |m_i⟩` for states quantised along a bias field tilted by
/// `θ` from the surface normal towards `x`.
///
/// The surface-frame components are `S_x = cos θ S_x' + sin θ S_z'`,
/// `S_y = S_y'` and `S_z = −sin θ S_x' + cos θ S_z'`, with primed operators
/// acting in the trap basis.
pub fn zeeman_matrix_element(
    s: HalfInteger,
    m_f: HalfInteger,
    m_i: HalfInteger,
    axis: Axis,
    theta: TrapBasisAngle,
) -> Result<Complex64> {
    let x = spin_matrix_element(s, m_f, m_i, Axis::X)?;
    let y = spin_matrix_element(s, m_f, m_i, Axis::Y)?;
    let z = spin_matrix_element(s, m_f, m_i, Axis::Z)?;
    let (sin, cos) = theta.radians().sin_cos();
    Ok(match axis {
        Axis::X => cos * x + sin * z,
        Axis::Y => y,
        Axis::Z => -sin * x + cos * z,
    })
}

/// Amplitude `Σ C(F_f m_f) C(F_i m_i) ⟨m_S'|S_α|m_S⟩`; the nuclear
/// projection is a spectator.
pub(crate) fn hyperfine_amplitude(
    table: &CouplingTable,
    fin: HyperfineLevel,
    init: HyperfineLevel,
    axis: Axis,
) -> Complex64 {
    let s = table.s();
    let mut amp = Complex64::new(0.0, 0.0);
    for ms in s.projections() {
        let ci = table.get(init.f(), init.m(), ms);
        if ci == 0.0 {
            continue;
        }
        let mi = init.m() - ms;
        for ms_f in s.projections() {
            if fin.m() - ms_f != mi {
                continue;
            }
            let cf = table.get(fin.f(), fin.m(), ms_f);
            if cf == 0.0 {
                continue;
            }
            amp += cf * ci * element_unchecked(s, ms_f, ms, axis);
        }
    }
    amp
}

/// `|⟨F_f m_f| S_α |F_i m_i⟩|²` with quantisation along `z`.
pub fn hyperfine_matrix_element_sq(
    system: &SpinSystem,
    fin: HyperfineLevel,
    init: HyperfineLevel,
    axis: Axis,
) -> Result<f64> {
    // re-validate: levels may have been built for another system
    let fin = HyperfineLevel::new(system, fin.f(), fin.m())?;
    let init = HyperfineLevel::new(system, init.f(), init.m())?;
    let table = CouplingTable::shared(system);
    Ok(hyperfine_amplitude(&table, fin, init, axis).norm_sqr())
}

/// `(2F_i + 1)⁻¹ Σ_{m_f, m_i} |⟨F_f m_f| S_α |F_i m_i⟩|²`.
pub fn hyperfine_matrix_element_sq_avg(
    system: &SpinSystem,
    f_final: HalfInteger,
    f_initial: HalfInteger,
    axis: Axis,
) -> Result<f64> {
    system.check_f(f_final)?;
    system.check_f(f_initial)?;
    let table = CouplingTable::shared(system);
    let mut total = 0.0;
    for mi in f_initial.projections() {
        for mf in f_final.projections() {
            let a = hyperfine_amplitude(
                &table,
                HyperfineLevel { f: f_final, m: mf },
                HyperfineLevel { f: f_initial, m: mi },
                axis,
            );
            total += a.norm_sqr();
        }
    }
    Ok(total / f64::from(f_initial.twice() + 1))
}
