//! QAC circuits under all-to-all, line and 2D-lattice connectivity.
//!
//! * [`circuit`]: IR, validation, JSON codec
//! * [`sim`]: dense and sparse statevector simulation, density matrices, metrics
//! * [`synth`]: cat states, fan-out, parity circuits, calibration, counterexamples
//! * [`compile`]: exact all-to-all → lattice embedding
//! * [`cone`]: light-cones, separability, subset selection, restriction pipelines
//! * [`spectral`]: Fourier analysis and bound experiments

pub mod circuit;
pub mod compile;
pub mod cone;
pub mod families;
mod error;
pub mod sim;
pub mod spectral;
pub mod synth;

pub use circuit::{Circuit, CircuitBuilder, Init, Layer, Layout, MultiCz, SingleQubitGate};
pub use error::{Error, Result};
