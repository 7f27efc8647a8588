//! Nonlinear response kernels of a relaxing Kerr medium.
//!
//! The medium response is causal with unit area; its even extension `h(τ)`
//! therefore integrates to 2. The quadrature noise spectrum also needs the
//! self-convolution `g = h * h`, whose Fourier image is the square of that
//! of `h`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::SymmetricGrid;

/// Smallest quadrature window, in units of the relaxation time.
pub const MIN_WINDOW_RELAXATIONS: f64 = 40.0;
/// Default quadrature window, in units of the relaxation time.
pub const DEFAULT_WINDOW_RELAXATIONS: f64 = 80.0;
pub const MIN_KERNEL_SAMPLES: usize = 1 << 12;

/// Uniform evaluation interface for an even response kernel.
pub trait ResponseKernel {
    fn relaxation_time(&self) -> f64;

    /// Even response `h(τ)`.
    fn response(&self, tau: f64) -> f64;

    /// Self-convolution `g(τ) = ∫ h(s) h(τ - s) ds`.
    fn self_convolution(&self, tau: f64) -> f64;

    /// Spectral filter `L(ω)`, defined so that the Fourier image of `h` is `2L`.
    fn lorentzian(&self, omega: f64) -> f64;

    /// `L` evaluated at the reduced frequency `Ω = ω·τ_r`.
    fn lorentzian_reduced(&self, reduced: f64) -> f64 {
        self.lorentzian(reduced / self.relaxation_time())
    }
}

/// Exponential (Debye) relaxation with time constant `tau_r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxationKernel {
    tau_r: f64,
}

impl RelaxationKernel {
    pub fn new(tau_r: f64) -> Result<Self> {
        if !(tau_r.is_finite() && tau_r > 0.0) {
            return Err(Error::domain(format!(
                "relaxation time must be positive and finite, got {tau_r}"
            )));
        }
        Ok(Self { tau_r })
    }

    pub fn tau_r(&self) -> f64 {
        self.tau_r
    }

    /// Converts a physical angular frequency to the reduced axis.
    pub fn reduce(&self, omega: f64) -> f64 {
        omega * self.tau_r
    }
}

impl ResponseKernel for RelaxationKernel {
    fn relaxation_time(&self) -> f64 {
        self.tau_r
    }

    fn response(&self, tau: f64) -> f64 {
        (-tau.abs() / self.tau_r).exp() / self.tau_r
    }

    fn self_convolution(&self, tau: f64) -> f64 {
        let x = tau.abs() / self.tau_r;
        (1.0 + x) * (-x).exp() / self.tau_r
    }

    fn lorentzian(&self, omega: f64) -> f64 {
        let x = omega * self.tau_r;
        1.0 / (1.0 + x * x)
    }

    fn lorentzian_reduced(&self, reduced: f64) -> f64 {
        1.0 / (1.0 + reduced * reduced)
    }
}

/// Symmetric quadrature grid for sampling kernels with relaxation time `tau_r`.
pub(crate) fn quadrature_grid(
    tau_r: f64,
    window: f64,
    intervals: usize,
    min_intervals: usize,
) -> Result<SymmetricGrid> {
    if !(window >= MIN_WINDOW_RELAXATIONS * tau_r) {
        return Err(Error::domain(format!(
            "window {window} shorter than {MIN_WINDOW_RELAXATIONS} relaxation times ({})",
            MIN_WINDOW_RELAXATIONS * tau_r
        )));
    }
    if intervals < min_intervals {
        return Err(Error::domain(format!(
            "{intervals} samples is below the minimum of {min_intervals}"
        )));
    }
    SymmetricGrid::new(window, intervals)
}

/// Largest relative error, over `omega_grid`, between the numerical Fourier
/// transforms of `h` and `g` and their closed forms `2L` and `4L²`.
pub fn kernel_transform_residual<K: ResponseKernel>(
    kernel: &K,
    omega_grid: &[f64],
    window: f64,
    n_samples: usize,
) -> Result<f64> {
    let grid = quadrature_grid(
        kernel.relaxation_time(),
        window,
        n_samples,
        MIN_KERNEL_SAMPLES,
    )?;
    let h = grid.sample(|t| kernel.response(t));
    let g = grid.sample(|t| kernel.self_convolution(t));

    let mut worst: f64 = 0.0;
    for &omega in omega_grid {
        let l = kernel.lorentzian(omega);
        let (fh, _) = grid.fourier(&h, omega)?;
        let (fg, _) = grid.fourier(&g, omega)?;
        let eh = (fh - 2.0 * l).abs() / (2.0 * l);
        let eg = (fg - 4.0 * l * l).abs() / (4.0 * l * l);
        worst = worst.max(eh).max(eg);
    }
    Ok(worst)
}
