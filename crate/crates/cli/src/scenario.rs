//! Scenario description and its flat `key = value` file format.
//!
//! A scenario file holds one setting per line; `#` starts a comment. Keys:
//!
//! | key | meaning | needed by |
//! |---|---|---|
//! | `mode` | `ion_heating`, `spin_heating`, `zeeman_loss`, `hyperfine_loss`, `spectrum` | all |
//! | `material` | preset name (`copper`, `glass`) or `custom` | all |
//! | `resistivity_ohm_m`, `eps_real` | override or define the material | `custom` |
//! | `temperature_k` | surface temperature, default 300 | |
//! | `method` | `auto` (default), `exact`, `asymptotic` | |
//! | `blackbody` | add the free-space term to heating rates and spectra, default `false` | |
//! | `sweep` | `distance` or `frequency` | all |
//! | `start`, `stop` | sweep bounds in m or Hz | all |
//! | `spacing` | `log` (default) or `linear` | |
//! | `points_per_decade` | log sweeps, default 25 | |
//! | `points` | linear sweeps | linear |
//! | `distance_m` | fixed distance | frequency sweeps |
//! | `frequency_hz` | trap, Larmor, hyperfine or field frequency | distance sweeps |
//! | `mass_amu` | trapped mass | `ion_heating`, `spin_heating` |
//! | `charge_e` | charge in units of e, default 1 | |
//! | `spin` | electron spin S, default 1/2 | |
//! | `m`, `m_final` | trap-basis projections, default S and S − 1 | |
//! | `theta` | bias-field angle in radians; accepts `pi/2` style | `zeeman_loss` |
//! | `atom` | `rb85` or `cs133` | `hyperfine_loss` |
//! | `field` | `electric` or `magnetic` | `spectrum` |
//!
//! For hyperfine loss `frequency_hz` defaults to the atom's splitting.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;
use trapnoise_core::angular_momentum::AtomPreset;
use trapnoise_core::{HalfInteger, Material, MethodChoice, SpinSystem, ThermalEnvironment, TrapBasisAngle};

pub const DEFAULT_POINTS_PER_DECADE: u32 = 25;
pub const DEFAULT_TEMPERATURE: f64 = 300.0;

#[derive(Debug, Error, PartialEq)]
pub enum ScenarioError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid scenario:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
}

impl ScenarioError {
    /// Every offending field, one message each.
    pub fn problems(&self) -> Vec<String> {
        match self {
            ScenarioError::Parse { line, message } => vec![format!("line {line}: {message}")],
            ScenarioError::Invalid(p) => p.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    IonHeating,
    SpinHeating,
    ZeemanLoss,
    HyperfineLoss,
    Spectrum,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::IonHeating,
        Mode::SpinHeating,
        Mode::ZeemanLoss,
        Mode::HyperfineLoss,
        Mode::Spectrum,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Mode::IonHeating => "ion_heating",
            Mode::SpinHeating => "spin_heating",
            Mode::ZeemanLoss => "zeeman_loss",
            Mode::HyperfineLoss => "hyperfine_loss",
            Mode::Spectrum => "spectrum",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.trim().replace('-', "_");
        Mode::ALL
            .into_iter()
            .find(|m| m.key() == norm)
            .ok_or_else(|| format!("unknown mode '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Electric,
    Magnetic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Distance,
    Frequency,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spacing {
    Log { points_per_decade: u32 },
    Linear { points: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub spacing: Spacing,
}

impl Sweep {
    /// Sample points, increasing, with both bounds included exactly.
    pub fn points(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Log { points_per_decade } => {
                let decades = (self.stop / self.start).log10();
                let intervals = ((decades * f64::from(points_per_decade)).round() as usize).max(1);
                let ratio = self.stop / self.start;
                (0..=intervals)
                    .map(|k| {
                        if k == intervals {
                            self.stop
                        } else {
                            self.start * ratio.powf(k as f64 / intervals as f64)
                        }
                    })
                    .collect()
            }
            Spacing::Linear { points } => {
                let intervals = (points - 1) as usize;
                (0..=intervals)
                    .map(|k| {
                        if k == intervals {
                            self.stop
                        } else {
                            self.start + (self.stop - self.start) * k as f64 / intervals as f64
                        }
                    })
                    .collect()
            }
        }
    }
}

/// Settings that only some modes use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeParams {
    IonHeating {
        mass_amu: f64,
        charge_e: f64,
    },
    SpinHeating {
        mass_amu: f64,
        system: SpinSystem,
        m: HalfInteger,
        theta: TrapBasisAngle,
    },
    ZeemanLoss {
        system: SpinSystem,
        m_initial: HalfInteger,
        m_final: HalfInteger,
        theta: TrapBasisAngle,
    },
    HyperfineLoss {
        atom: AtomPreset,
    },
    Spectrum {
        field: Field,
    },
}

impl ModeParams {
    pub fn mode(&self) -> Mode {
        match self {
            ModeParams::IonHeating { .. } => Mode::IonHeating,
            ModeParams::SpinHeating { .. } => Mode::SpinHeating,
            ModeParams::ZeemanLoss { .. } => Mode::ZeemanLoss,
            ModeParams::HyperfineLoss { .. } => Mode::HyperfineLoss,
            ModeParams::Spectrum { .. } => Mode::Spectrum,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub params: ModeParams,
    pub material: Material,
    pub environment: ThermalEnvironment,
    pub method: MethodChoice,
    pub blackbody: bool,
    pub sweep: Sweep,
    /// Value of the variable that is not swept (m or Hz).
    pub fixed: f64,
}

impl Scenario {
    pub fn mode(&self) -> Mode {
        self.params.mode()
    }

    /// Parses a scenario file.
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        ScenarioSettings::parse(text)?.build()
    }
}

/// Raw `key = value` settings before validation. Later insertions override
/// earlier ones, so command-line flags are applied after the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioSettings {
    values: BTreeMap<String, String>,
}

const KNOWN_KEYS: [&str; 23] = [
    "mode",
    "material",
    "resistivity_ohm_m",
    "eps_real",
    "temperature_k",
    "method",
    "blackbody",
    "sweep",
    "start",
    "stop",
    "spacing",
    "points_per_decade",
    "points",
    "distance_m",
    "frequency_hz",
    "mass_amu",
    "charge_e",
    "spin",
    "m",
    "m_final",
    "theta",
    "atom",
    "field",
];

fn is_known(key: &str) -> bool {
    KNOWN_KEYS.contains(&key)
}

impl ScenarioSettings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        let mut out = Self::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ScenarioError::Parse {
                line: idx + 1,
                message: format!("expected 'key = value', got '{line}'"),
            })?;
            let key = key.trim().to_ascii_lowercase();
            if out.values.contains_key(&key) {
                return Err(ScenarioError::Parse {
                    line: idx + 1,
                    message: format!("duplicate key '{key}'"),
                });
            }
            out.values.insert(key, value.trim().to_string());
        }
        Ok(out)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.values.insert(key.trim().to_ascii_lowercase(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Validates everything at once; the error lists each offending field.
    pub fn build(&self) -> Result<Scenario, ScenarioError> {
        let mut r = Reader {
            settings: self,
            problems: Vec::new(),
            used: BTreeSet::new(),
        };
        let scenario = r.scenario();
        for key in self.values.keys() {
            if !is_known(key) {
                r.problems.push(format!("{key}: unknown key"));
            } else if !r.used.contains(key.as_str()) {
                r.problems.push(format!("{key}: not used by this scenario"));
            }
        }
        match scenario {
            Some(s) if r.problems.is_empty() => Ok(s),
            _ => Err(ScenarioError::Invalid(r.problems)),
        }
    }
}

struct Reader<'a> {
    settings: &'a ScenarioSettings,
    problems: Vec<String>,
    used: BTreeSet<&'static str>,
}

impl Reader<'_> {
    fn raw(&mut self, key: &'static str) -> Option<&str> {
        self.used.insert(key);
        self.settings.get(key)
    }

    fn required<T>(&mut self, key: &'static str, parse: impl Fn(&str) -> Result<T, String>) -> Option<T> {
        match self.optional(key, parse) {
            Some(v) => v,
            None => {
                self.problems.push(format!("{key}: required"));
                None
            }
        }
    }

    /// `None` when absent, `Some(None)` when present but invalid.
    fn optional<T>(&mut self, key: &'static str, parse: impl Fn(&str) -> Result<T, String>) -> Option<Option<T>> {
        let value = self.raw(key)?.to_string();
        match parse(&value) {
            Ok(v) => Some(Some(v)),
            Err(e) => {
                self.problems.push(format!("{key}: {e}"));
                Some(None)
            }
        }
    }

    fn or_default<T>(&mut self, key: &'static str, default: T, parse: impl Fn(&str) -> Result<T, String>) -> Option<T> {
        self.optional(key, parse).unwrap_or(Some(default))
    }

    fn scenario(&mut self) -> Option<Scenario> {
        let mode = self.required("mode", |s| s.parse::<Mode>());
        let material = self.material();
        let temperature = self.or_default("temperature_k", DEFAULT_TEMPERATURE, positive);
        let environment = temperature.and_then(|t| match ThermalEnvironment::new(t) {
            Ok(e) => Some(e),
            Err(e) => {
                self.problems.push(format!("temperature_k: {e}"));
                None
            }
        });
        let method = self.or_default("method", MethodChoice::Auto, parse_method);
        let blackbody = self.or_default("blackbody", false, parse_bool);
        let variable = self.required("sweep", |s| match s.trim().to_ascii_lowercase().as_str() {
            "distance" => Ok(SweepVariable::Distance),
            "frequency" => Ok(SweepVariable::Frequency),
            other => Err(format!("expected 'distance' or 'frequency', got '{other}'")),
        });
        let sweep = self.sweep(variable);
        let params = mode.and_then(|m| self.params(m));
        let fixed = match (variable, mode) {
            (Some(v), Some(m)) => self.fixed(v, m, &params),
            _ => {
                // which one is needed is unknown; check whichever are given
                self.optional("distance_m", positive);
                self.optional("frequency_hz", positive);
                None
            }
        };
        Some(Scenario {
            params: params?,
            material: material?,
            environment: environment?,
            method: method?,
            blackbody: blackbody?,
            sweep: sweep?,
            fixed: fixed?,
        })
    }

    fn material(&mut self) -> Option<Material> {
        let name = self.required("material", |s| Ok(s.to_ascii_lowercase()))?;
        let base = match name.as_str() {
            "copper" => Some(Material::copper()),
            "glass" => Some(Material::glass()),
            "custom" => None,
            other => {
                self.problems
                    .push(format!("material: unknown preset '{other}' (copper, glass, custom)"));
                return None;
            }
        };
        let (rho, eps) = match base {
            None => (
                self.required("resistivity_ohm_m", positive),
                self.required("eps_real", finite),
            ),
            Some(b) => (
                self.or_default("resistivity_ohm_m", b.resistivity(), positive),
                self.or_default("eps_real", b.static_eps_real(), finite),
            ),
        };
        let (rho, eps) = (rho?, eps?);
        match Material::new(name, rho, eps) {
            Ok(m) => Some(m),
            Err(e) => {
                self.problems.push(format!("material: {e}"));
                None
            }
        }
    }

    fn sweep(&mut self, variable: Option<SweepVariable>) -> Option<Sweep> {
        let start = self.required("start", positive);
        let stop = self.required("stop", positive);
        let linear = self.or_default("spacing", false, |s| match s.trim().to_ascii_lowercase().as_str() {
            "log" => Ok(false),
            "linear" => Ok(true),
            other => Err(format!("expected 'log' or 'linear', got '{other}'")),
        });
        let spacing = match linear? {
            false => {
                let ppd = self.or_default("points_per_decade", DEFAULT_POINTS_PER_DECADE, |s| at_least(s, 1))?;
                Spacing::Log { points_per_decade: ppd }
            }
            true => Spacing::Linear {
                points: self.required("points", |s| at_least(s, 2))?,
            },
        };
        let (start, stop) = (start?, stop?);
        if stop <= start {
            self.problems
                .push(format!("stop: must exceed start ({stop:e} <= {start:e})"));
            return None;
        }
        Some(Sweep {
            variable: variable?,
            start,
            stop,
            spacing,
        })
    }

    fn spin(&mut self) -> Option<(SpinSystem, HalfInteger)> {
        let s = self.or_default("spin", HalfInteger::HALF, parse_half)?;
        let system = match SpinSystem::new(s, HalfInteger::ZERO) {
            Ok(sys) => sys,
            Err(e) => {
                self.problems.push(format!("spin: {e}"));
                return None;
            }
        };
        let m = self.or_default("m", s, parse_half)?;
        if m.twice().abs() > s.twice() || (s - m).twice() % 2 != 0 {
            self.problems.push(format!("m: {m} is not a projection of spin {s}"));
            return None;
        }
        Some((system, m))
    }

    fn params(&mut self, mode: Mode) -> Option<ModeParams> {
        match mode {
            Mode::IonHeating => {
                let mass_amu = self.required("mass_amu", positive);
                let charge_e = self.or_default("charge_e", 1.0, nonzero);
                Some(ModeParams::IonHeating {
                    mass_amu: mass_amu?,
                    charge_e: charge_e?,
                })
            }
            Mode::SpinHeating => {
                let mass_amu = self.required("mass_amu", positive);
                let theta = self.or_default("theta", TrapBasisAngle::new(0.0).expect("valid"), parse_theta);
                let spin = self.spin();
                let (system, m) = spin?;
                Some(ModeParams::SpinHeating {
                    mass_amu: mass_amu?,
                    system,
                    m,
                    theta: theta?,
                })
            }
            Mode::ZeemanLoss => {
                let theta = self.required("theta", parse_theta);
                let (system, m_initial) = self.spin()?;
                let m_final = self.or_default("m_final", m_initial - HalfInteger::from_twice(2), parse_half)?;
                let s = system.s();
                if m_final.twice().abs() > s.twice() || (s - m_final).twice() % 2 != 0 {
                    self.problems
                        .push(format!("m_final: {m_final} is not a projection of spin {s}"));
                    return None;
                }
                Some(ModeParams::ZeemanLoss {
                    system,
                    m_initial,
                    m_final,
                    theta: theta?,
                })
            }
            Mode::HyperfineLoss => {
                let atom = self.required("atom", |s| {
                    AtomPreset::by_name(s.trim()).ok_or_else(|| format!("unknown atom '{s}' (rb85, cs133)"))
                })?;
                Some(ModeParams::HyperfineLoss { atom })
            }
            Mode::Spectrum => {
                let field = self.required("field", |s| match s.trim().to_ascii_lowercase().as_str() {
                    "electric" => Ok(Field::Electric),
                    "magnetic" => Ok(Field::Magnetic),
                    other => Err(format!("expected 'electric' or 'magnetic', got '{other}'")),
                })?;
                Some(ModeParams::Spectrum { field })
            }
        }
    }

    fn fixed(&mut self, variable: SweepVariable, mode: Mode, params: &Option<ModeParams>) -> Option<f64> {
        match variable {
            SweepVariable::Distance => match (mode, params) {
                (_, Some(ModeParams::HyperfineLoss { atom })) => {
                    self.or_default("frequency_hz", atom.hyperfine_splitting_hz, positive)
                }
                (Mode::HyperfineLoss, None) => self.optional("frequency_hz", positive).flatten(),
                _ => self.required("frequency_hz", positive),
            },
            SweepVariable::Frequency => self.required("distance_m", positive),
        }
    }
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} is not finite"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be positive, got {v}"))
    }
}

fn nonzero(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v != 0.0 {
        Ok(v)
    } else {
        Err("must be nonzero".into())
    }
}

fn at_least(s: &str, min: u32) -> Result<u32, String> {
    let v: u32 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a non-negative integer"))?;
    if v >= min {
        Ok(v)
    } else {
        Err(format!("must be at least {min}, got {v}"))
    }
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("expected true or false, got '{other}'")),
    }
}

pub fn parse_method(s: &str) -> Result<MethodChoice, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "auto" => Ok(MethodChoice::Auto),
        "exact" => Ok(MethodChoice::Exact),
        "asymptotic" => Ok(MethodChoice::Asymptotic),
        other => Err(format!("expected auto, exact or asymptotic, got '{other}'")),
    }
}

fn parse_half(s: &str) -> Result<HalfInteger, String> {
    s.parse::<HalfInteger>().map_err(|e| e.to_string())
}

/// Radians, or a multiple of `pi` such as `pi/2`, `3*pi/4`, `0.5pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase().replace(' ', "");
    let bad = || format!("'{s}' is not an angle");
    let Some((before, after)) = t.split_once("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let coefficient = match before.trim_end_matches('*') {
        "" => 1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = match after {
        "" => 1.0,
        d => d.strip_prefix('/').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(coefficient * PI / divisor)
}

fn parse_theta(s: &str) -> Result<TrapBasisAngle, String> {
    TrapBasisAngle::new(parse_angle(s)?).map_err(|e| e.to_string())
}
