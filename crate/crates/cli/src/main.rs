use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use trapnoise_cli::{emit_csv, run_scenario, write_csv_file, Mode, ScenarioSettings, SweepVariable};
use trapnoise_core::angular_momentum::AtomPreset;
use trapnoise_core::Material;

/// Thermal near-field noise rates for trapped ions, spins and atoms above a
/// surface, written as CSV sweeps.
#[derive(Debug, Parser)]
#[command(name = "trapnoise", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Motional heating of a trapped ion by electric field noise.
    IonHeating(SweepArgs),
    /// Motional heating of a trapped spin by magnetic field-gradient noise.
    SpinHeating(SweepArgs),
    /// Spin-flip loss between Zeeman sublevels.
    ZeemanLoss(SweepArgs),
    /// Loss by hyperfine-changing transitions.
    HyperfineLoss(SweepArgs),
    /// Electric or magnetic noise spectrum above the surface.
    Spectrum(SweepArgs),
    /// Built-in materials and atoms.
    Presets {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Debug, Subcommand)]
enum PresetAction {
    List,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Scenario file (`key = value` lines); flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// `copper`, `glass` or `custom`.
    #[arg(long)]
    material: Option<String>,
    /// Temperature in K.
    #[arg(long)]
    temperature: Option<f64>,
    /// Distance in m, or `START:STOP` to sweep it.
    #[arg(long, value_name = "M|START:STOP", allow_hyphen_values = true)]
    distance_range: Option<String>,
    /// Frequency in Hz, or `START:STOP` to sweep it.
    #[arg(long, value_name = "HZ|START:STOP", allow_hyphen_values = true)]
    frequency: Option<String>,
    /// Bias-field angle in radians (`pi/2` style accepted).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// `auto`, `exact` or `asymptotic`.
    #[arg(long)]
    method: Option<String>,
    /// Sweep density for log spacing.
    #[arg(long)]
    points_per_decade: Option<u32>,
    /// Trapped mass in atomic mass units.
    #[arg(long)]
    mass: Option<f64>,
    /// `rb85` or `cs133`.
    #[arg(long)]
    atom: Option<String>,
    /// `electric` or `magnetic`.
    #[arg(long)]
    field: Option<String>,
    /// Any other scenario key, as `KEY=VALUE`; may be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    extra: Vec<String>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> anyhow::Result<ExitCode> {
    let (mode, args) = match command {
        Command::IonHeating(a) => (Mode::IonHeating, a),
        Command::SpinHeating(a) => (Mode::SpinHeating, a),
        Command::ZeemanLoss(a) => (Mode::ZeemanLoss, a),
        Command::HyperfineLoss(a) => (Mode::HyperfineLoss, a),
        Command::Spectrum(a) => (Mode::Spectrum, a),
        Command::Presets {
            action: PresetAction::List,
        } => {
            list_presets(io::stdout().lock())?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    sweep(mode, args)
}

fn settings_from(mode: Mode, args: &SweepArgs) -> anyhow::Result<ScenarioSettings> {
    let mut settings = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ScenarioSettings::parse(&text).with_context(|| format!("in {}", path.display()))?
        }
        None => ScenarioSettings::new(),
    };
    if let Some(file_mode) = settings.get("mode") {
        if file_mode.parse::<Mode>().ok() != Some(mode) {
            bail!("scenario file is for mode '{file_mode}', not '{mode}'");
        }
    }
    settings.set("mode", mode.key());

    let mut ranges = 0;
    for (flag, value, variable, fixed_key) in [
        (
            "--distance-range",
            &args.distance_range,
            SweepVariable::Distance,
            "distance_m",
        ),
        ("--frequency", &args.frequency, SweepVariable::Frequency, "frequency_hz"),
    ] {
        let Some(value) = value else { continue };
        match value.split_once(':') {
            Some((start, stop)) => {
                ranges += 1;
                settings.set(
                    "sweep",
                    match variable {
                        SweepVariable::Distance => "distance",
                        SweepVariable::Frequency => "frequency",
                    },
                );
                settings.set("start", start.trim());
                settings.set("stop", stop.trim());
            }
            None if value.trim().is_empty() => bail!("{flag} needs a value"),
            None => settings.set(fixed_key, value.trim()),
        }
    }
    if ranges > 1 {
        bail!("only one of --distance-range and --frequency can be a START:STOP range");
    }

    let simple = [
        ("material", args.material.clone()),
        ("temperature_k", args.temperature.map(|t| t.to_string())),
        ("theta", args.theta.clone()),
        ("method", args.method.clone()),
        ("points_per_decade", args.points_per_decade.map(|p| p.to_string())),
        ("mass_amu", args.mass.map(|m| m.to_string())),
        ("atom", args.atom.clone()),
        ("field", args.field.clone()),
    ];
    for (key, value) in simple {
        if let Some(v) = value {
            settings.set(key, v);
        }
    }
    for pair in &args.extra {
        let Some((key, value)) = pair.split_once('=') else {
            bail!("--set expects KEY=VALUE, got '{pair}'");
        };
        settings.set(key, value.trim());
    }
    Ok(settings)
}

fn sweep(mode: Mode, args: SweepArgs) -> anyhow::Result<ExitCode> {
    let scenario = settings_from(mode, &args)?.build()?;
    let rows = run_scenario(&scenario);
    match &args.output {
        Some(path) => write_csv_file(&scenario, &rows, path).with_context(|| format!("writing {}", path.display()))?,
        None => emit_csv(&scenario, &rows, io::stdout().lock()).context("writing CSV")?,
    }
    let failures: Vec<_> = rows
        .iter()
        .filter_map(|r| r.outcome.as_ref().err().map(|e| (r.x, e)))
        .collect();
    for (x, e) in &failures {
        eprintln!("warning: point {x:e} failed: {e}");
    }
    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} of {} points failed", failures.len(), rows.len());
        Ok(ExitCode::from(2))
    }
}

fn list_presets(mut out: impl Write) -> io::Result<()> {
    writeln!(out, "materials:")?;
    for m in [Material::copper(), Material::glass()] {
        writeln!(
            out,
            "  {:<8} resistivity {:e} ohm m, Re eps {}",
            m.name(),
            m.resistivity(),
            m.static_eps_real()
        )?;
    }
    writeln!(out, "atoms:")?;
    for a in AtomPreset::all() {
        writeln!(
            out,
            "  {:<8} S {}, I {}, hyperfine splitting {:e} Hz, F {} -> {}",
            a.name,
            a.system.s(),
            a.system.i(),
            a.hyperfine_splitting_hz,
            a.f_lower,
            a.f_upper
        )?;
    }
    Ok(())
}
