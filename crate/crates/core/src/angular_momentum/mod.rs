//! Spin quantum numbers, Clebsch-Gordan coefficients and the spin matrix
//! elements that drive Zeeman and hyperfine transitions.
//!
//! Only `L = 0` ground states are modelled: the magnetic moment is the
//! electron spin moment `g_S μ_B S` and the nuclear moment is dropped.

mod clebsch;
mod elements;
pub mod presets;

use std::fmt;
use std::str::FromStr;

use crate::constants::ELECTRON_G_FACTOR;
use crate::error::{Error, Result};

pub use clebsch::{clebsch_gordan, CouplingTable};
pub use elements::{
    hyperfine_matrix_element_sq, hyperfine_matrix_element_sq_avg, spin_matrix_element, zeeman_matrix_element,
};
pub use presets::AtomPreset;

/// Integer or half-integer number, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(i32);

impl HalfInteger {
    pub const ZERO: Self = Self(0);
    pub const HALF: Self = Self(1);

    pub const fn from_twice(twice: i32) -> Self {
        Self(twice)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// `j(j + 1)`.
    pub fn casimir(self) -> f64 {
        let j = self.value();
        j * (j + 1.0)
    }

    /// `−j, −j + 1, …, j`.
    pub fn projections(self) -> impl Iterator<Item = HalfInteger> {
        let j = self.0;
        (-j..=j).step_by(2).map(HalfInteger)
    }
}

impl std::ops::Add for HalfInteger {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInteger {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl std::ops::Neg for HalfInteger {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInteger {
    type Err = Error;

    /// Accepts `"3"`, `"-1/2"`, `"2.5"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::domain(format!("'{s}' is not an integer or half-integer"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => Ok(Self(2 * num)),
                "2" => Ok(Self(num)),
                _ => Err(bad()),
            }
        } else if let Ok(n) = s.parse::<i32>() {
            Ok(Self(2 * n))
        } else {
            let x: f64 = s.parse().map_err(|_| bad())?;
            let twice = 2.0 * x;
            if twice.fract() != 0.0 || twice.abs() > f64::from(i32::MAX) {
                return Err(bad());
            }
            Ok(Self(twice as i32))
        }
    }
}

impl TryFrom<f64> for HalfInteger {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        let twice = 2.0 * x;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > f64::from(i32::MAX) {
            return Err(Error::domain(format!("{x} is not an integer or half-integer")));
        }
        Ok(Self(twice as i32))
    }
}

/// Electron spin `S` coupled to nuclear spin `I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSystem {
    s: HalfInteger,
    i: HalfInteger,
    g_s: f64,
}

impl SpinSystem {
    pub fn new(s: HalfInteger, i: HalfInteger) -> Result<Self> {
        if s.twice() < 1 {
            return Err(Error::domain(format!("electron spin must be >= 1/2, got {s}")));
        }
        if i.twice() < 0 {
            return Err(Error::domain(format!("nuclear spin must be >= 0, got {i}")));
        }
        Ok(Self {
            s,
            i,
            g_s: ELECTRON_G_FACTOR,
        })
    }

    /// A bare spin-1/2 with no nucleus.
    pub fn electron() -> Self {
        Self {
            s: HalfInteger::HALF,
            i: HalfInteger::ZERO,
            g_s: ELECTRON_G_FACTOR,
        }
    }

    pub fn with_g_factor(mut self, g_s: f64) -> Result<Self> {
        if !g_s.is_finite() {
            return Err(Error::domain("g-factor must be finite"));
        }
        self.g_s = g_s;
        Ok(self)
    }

    pub fn s(&self) -> HalfInteger {
        self.s
    }

    pub fn i(&self) -> HalfInteger {
        self.i
    }

    pub fn g_s(&self) -> f64 {
        self.g_s
    }

    /// `|S − I|, …, S + I`.
    pub fn f_values(&self) -> impl Iterator<Item = HalfInteger> {
        let lo = (self.s.twice() - self.i.twice()).abs();
        let hi = self.s.twice() + self.i.twice();
        (lo..=hi).step_by(2).map(HalfInteger::from_twice)
    }

    pub fn is_valid_f(&self, f: HalfInteger) -> bool {
        self.f_values().any(|x| x == f)
    }

    pub(crate) fn check_f(&self, f: HalfInteger) -> Result<()> {
        if self.is_valid_f(f) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "F = {f} is not allowed for S = {}, I = {}",
                self.s, self.i
            )))
        }
    }
}

/// Hyperfine sublevel `|F, m⟩` of a [`SpinSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HyperfineLevel {
    f: HalfInteger,
    m: HalfInteger,
}

impl HyperfineLevel {
    pub fn new(system: &SpinSystem, f: HalfInteger, m: HalfInteger) -> Result<Self> {
        system.check_f(f)?;
        check_projection(f, m)?;
        Ok(Self { f, m })
    }

    pub fn f(&self) -> HalfInteger {
        self.f
    }

    pub fn m(&self) -> HalfInteger {
        self.m
    }
}

pub(crate) fn check_projection(j: HalfInteger, m: HalfInteger) -> Result<()> {
    if m.twice().abs() > j.twice() || (j.twice() - m.twice()) % 2 != 0 {
        return Err(Error::domain(format!("m = {m} is not a projection of j = {j}")));
    }
    Ok(())
}

/// Angle between the bias field and the surface normal, with the field in
/// the `xz` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapBasisAngle(f64);

impl TrapBasisAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::domain(format!("bias angle must lie in [0, π], got {theta}")));
        }
        Ok(Self(theta))
    }

    pub fn radians(&self) -> f64 {
        self.0
    }
}

/// Cartesian axis of the surface frame (`z` along the surface normal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Whether the axis lies in the surface plane.
    pub fn is_lateral(self) -> bool {
        !matches!(self, Axis::Z)
    }
}
