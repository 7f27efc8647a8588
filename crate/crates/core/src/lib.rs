//! Quantum noise of ultrashort light pulses in a Kerr medium with a finite
//! relaxation time.
//!
//! The crate evaluates the X-quadrature noise spectrum produced by
//! self-phase modulation, the optimal initial phase and the squeezing band,
//! and the Mandel parameter of the pulse after a dispersive linear medium.
//! Closed forms are paired with numerical Fourier oracles.

// Range checks are written as `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod dispersion;
pub mod emit;
pub mod error;
pub mod grid;
pub mod kernels;
pub mod pulse;
pub mod quadrature;
pub mod run;
pub mod spectra;

pub use dispersion::{fig2_surface, BeamWidths, DispersionScenario, DispersionSign, QSurface};
pub use error::{ConfigError, Error, Result};
pub use kernels::{kernel_transform_residual, RelaxationKernel, ResponseKernel};
pub use pulse::{PhasePolicy, PulseSpec, ValidityFlags};
pub use spectra::{
    correlation_slice, fig1_surface, min_spectral_density, spectral_density,
    spectral_density_numeric, squeezing_bandwidth, Band, BandScan, CorrelationSlice, MinimumNoise,
    SpectrumSurface,
};
