//! Sweep evaluation and CSV output.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use trapnoise_core::constants::{ATOMIC_MASS_UNIT, ELEMENTARY_CHARGE};
use trapnoise_core::nearfield::{electric_nearfield_spectrum, magnetic_nearfield_spectrum};
use trapnoise_core::rates::{hyperfine_loss_rate, ion_heating_rate, spin_heating_rate, zeeman_loss_rate};
use trapnoise_core::{EvaluationMethod, RateOptions, SpectrumOptions, SurfaceGeometry, TrapConfig, TrapCoupling};

use crate::scenario::{Field, ModeParams, Scenario, SweepVariable};

#[derive(Debug, Clone, PartialEq)]
pub struct RowValues {
    /// Rate in s⁻¹, or the parallel and perpendicular spectrum components.
    pub columns: Vec<f64>,
    pub method: EvaluationMethod,
    pub rel_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Distance in m or frequency in Hz.
    pub x: f64,
    pub outcome: Result<RowValues, String>,
}

impl SweepRow {
    pub fn is_error(&self) -> bool {
        self.outcome.is_err()
    }
}

/// Evaluates every sweep point in parallel; rows come back in sweep order.
pub fn run_scenario(scenario: &Scenario) -> Vec<SweepRow> {
    scenario
        .sweep
        .points()
        .into_par_iter()
        .map(|x| SweepRow {
            x,
            outcome: evaluate(scenario, x).map_err(|e| e.to_string()),
        })
        .collect()
}

fn evaluate(s: &Scenario, x: f64) -> trapnoise_core::Result<RowValues> {
    let (z, hz) = match s.sweep.variable {
        SweepVariable::Distance => (x, s.fixed),
        SweepVariable::Frequency => (s.fixed, x),
    };
    let omega = 2.0 * PI * hz;
    let geom = SurfaceGeometry::new(z)?;
    let spectrum_opts = SpectrumOptions::default()
        .with_method(s.method)
        .with_blackbody(s.blackbody);
    let opts = RateOptions::new(spectrum_opts);
    let (m, env) = (&s.material, &s.environment);
    let result = match s.params {
        ModeParams::IonHeating { mass_amu, charge_e } => {
            let trap = TrapConfig::new(
                omega,
                mass_amu * ATOMIC_MASS_UNIT,
                [0.0, 0.0, 1.0],
                geom,
                TrapCoupling::Charge(charge_e * ELEMENTARY_CHARGE),
            )?;
            ion_heating_rate(&trap, m, env, &opts)?
        }
        ModeParams::SpinHeating {
            mass_amu,
            system,
            m: proj,
            theta,
        } => {
            let trap = TrapConfig::new(
                omega,
                mass_amu * ATOMIC_MASS_UNIT,
                [0.0, 0.0, 1.0],
                geom,
                TrapCoupling::Spin { system, m: proj, theta },
            )?;
            spin_heating_rate(&trap, m, env, &opts)?
        }
        ModeParams::ZeemanLoss {
            system,
            m_initial,
            m_final,
            theta,
        } => zeeman_loss_rate(&system, m_initial, m_final, omega, m, env, &geom, theta, &opts)?,
        ModeParams::HyperfineLoss { atom } => {
            hyperfine_loss_rate(&atom.system, omega, m, env, &geom, atom.f_lower, atom.f_upper, &opts)?
        }
        ModeParams::Spectrum { field } => {
            let t = match field {
                Field::Electric => electric_nearfield_spectrum(m, env, &geom, omega, &spectrum_opts)?,
                Field::Magnetic => magnetic_nearfield_spectrum(m, env, &geom, omega, &spectrum_opts)?,
            };
            return Ok(RowValues {
                columns: vec![t.parallel, t.perpendicular],
                method: t.method,
                rel_error: t.rel_error,
            });
        }
    };
    Ok(RowValues {
        columns: vec![result.rate],
        method: result.method,
        rel_error: result.rel_error,
    })
}

/// Column names, with units, for a scenario's CSV.
pub fn csv_header(scenario: &Scenario) -> Vec<&'static str> {
    let x = match scenario.sweep.variable {
        SweepVariable::Distance => "z_m",
        SweepVariable::Frequency => "frequency_hz",
    };
    let mut cols = vec![x];
    match scenario.params {
        ModeParams::Spectrum { field: Field::Electric } => {
            cols.extend(["parallel_v2_s_per_m2", "perpendicular_v2_s_per_m2"])
        }
        ModeParams::Spectrum { field: Field::Magnetic } => cols.extend(["parallel_t2_s", "perpendicular_t2_s"]),
        _ => cols.push("rate_per_s"),
    }
    cols.extend(["method", "rel_err"]);
    cols
}

fn number(v: f64) -> String {
    format!("{v:.8e}")
}

/// Writes the header and one line per row. Failed points keep their sweep
/// value, leave the numeric cells empty and carry `error` in the method
/// column.
pub fn emit_csv<W: Write>(scenario: &Scenario, rows: &[SweepRow], mut out: W) -> io::Result<()> {
    if rows.is_empty() {
        return Err(io::Error::new(io::ErrorKind::InvalidInput, "no rows to write"));
    }
    let header = csv_header(scenario);
    let value_columns = header.len() - 3;
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let mut cells = vec![number(row.x)];
        match &row.outcome {
            Ok(v) => {
                cells.extend(v.columns.iter().map(|&c| number(c)));
                cells.push(v.method.label().to_string());
                cells.push(v.rel_error.map(number).unwrap_or_default());
            }
            Err(_) => {
                cells.extend(std::iter::repeat_n(String::new(), value_columns));
                cells.push("error".into());
                cells.push(String::new());
            }
        }
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()
}

/// `emit_csv` into a new file at `path`.
pub fn write_csv_file(scenario: &Scenario, rows: &[SweepRow], path: &Path) -> io::Result<()> {
    emit_csv(scenario, rows, BufWriter::new(File::create(path)?))
}
