//! Alkali ground states for hyperfine-loss calculations.

use std::f64::consts::PI;

use super::{HalfInteger, SpinSystem};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomPreset {
    pub name: &'static str,
    pub system: SpinSystem,
    /// Ground-state hyperfine splitting in Hz.
    pub hyperfine_splitting_hz: f64,
    /// Lower hyperfine level, the initial state of the loss transition.
    pub f_lower: HalfInteger,
    pub f_upper: HalfInteger,
}

impl AtomPreset {
    pub fn rb85() -> Self {
        Self {
            name: "rb85",
            system: spin_half_with(5),
            hyperfine_splitting_hz: 3.04e9,
            f_lower: HalfInteger::from_twice(4),
            f_upper: HalfInteger::from_twice(6),
        }
    }

    pub fn cs133() -> Self {
        Self {
            name: "cs133",
            system: spin_half_with(7),
            hyperfine_splitting_hz: 9.193e9,
            f_lower: HalfInteger::from_twice(6),
            f_upper: HalfInteger::from_twice(8),
        }
    }

    pub fn all() -> [Self; 2] {
        [Self::rb85(), Self::cs133()]
    }

    pub fn by_name(name: &str) -> Option<Self> {
        Self::all().into_iter().find(|p| p.name.eq_ignore_ascii_case(name))
    }

    pub fn hyperfine_angular_frequency(&self) -> f64 {
        2.0 * PI * self.hyperfine_splitting_hz
    }
}

fn spin_half_with(twice_i: i32) -> SpinSystem {
    SpinSystem::new(HalfInteger::HALF, HalfInteger::from_twice(twice_i)).expect("valid preset")
}
