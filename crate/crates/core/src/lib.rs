//! Atomic form factors for scattering of twisted (Laguerre-Gauss) photons.
//!
//! Lengths are in bohr and wavenumbers in inverse bohr unless stated otherwise.

// `!(x > 0.0)` is how NaN gets rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atom;
pub mod beam;
pub mod config;
pub mod error;
pub mod formfactor;
pub mod observables;
pub mod output;
pub mod quadrature;
pub mod run;
pub mod selftest;
pub mod specfun;
pub mod vec3;

pub use atom::AtomicState;
pub use beam::{coulomb_angle, BeamParams};
pub use error::{Error, Result};
pub use formfactor::{
    plane_wave_ff, rotate_to_scattered_frame, structure_factor, vortex_ff, FormFactorResult, ScatteringGeometry,
    Transition, TransitionDensity,
};
pub use quadrature::{AxisMap, GridSpec, QuadResult, QuadWarning};
pub use vec3::Vec3;
