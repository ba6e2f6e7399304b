//! Thermal electromagnetic near-field noise above a flat conducting or
//! dielectric surface, and the heating, loss and decoherence rates it causes
//! for ions, spins and atoms held in small traps.
//!
//! The crate is organised bottom-up:
//!
//! * [`physical_model`]: constants, materials, Planck/Bose factors and the
//!   fluctuation-dissipation conversion.
//! * [`quadrature`]: adaptive Gauss-Kronrod integration over fixed panels.
//! * [`nearfield`]: Fresnel coefficients, the dimensionless `g`/`h` tensors
//!   (exact quadrature, asymptotic interpolation, perfect conductor) and the
//!   assembled noise spectra.
//! * [`angular_momentum`]: half-integer quantum numbers, Clebsch-Gordan
//!   coefficients, Zeeman and hyperfine matrix elements.
//! * [`rates`]: heating, loss and coherence rates plus the trap-ladder
//!   population evolver.

pub mod angular_momentum;
pub mod constants;
mod error;
pub mod nearfield;
pub mod physical_model;
pub mod quadrature;
pub mod rates;

pub use angular_momentum::{Axis, HalfInteger, HyperfineLevel, SpinSystem, TrapBasisAngle};
pub use error::{Error, Result};
pub use nearfield::{
    DiagonalSpectrumTensor, EvaluationMethod, MagneticMoments, MethodChoice, SpectrumKind, SpectrumOptions,
    SurfaceGeometry,
};
pub use physical_model::{Material, ThermalEnvironment};
pub use rates::{LadderState, RateOptions, RateResult, TrapConfig, TrapCoupling};
