//! Thermal near-field noise above a planar, homogeneous conductor.

pub mod fresnel;
pub mod spectra;
pub mod tensors;

pub use spectra::{
    blackbody_force_gradient_zz, electric_nearfield_spectrum, force_gradient_spectrum_zz, magnetic_nearfield_spectrum,
    DiagonalSpectrumTensor, EvaluationMethod, MagneticMoments, MethodChoice, SpectrumKind, SpectrumOptions,
    SurfaceGeometry,
};
pub use tensors::{SurfaceResponse, TensorPair};
