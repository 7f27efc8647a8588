//! X-quadrature correlation function and its noise spectrum.
//!
//! With ψ = ψ(t), Φ = Φ(t) and the response kernels `h`, `g` of the medium,
//!
//! ```text
//! R(t, t+τ) = ¼ [ δ(τ) − ψ h(τ) sin2Φ + ψ² g(τ) sin²Φ ]
//! S(ω, t)   = ¼ [ 1 − 2ψL(ω) sin2Φ + 4ψ²L²(ω) sin²Φ ]
//! ```
//!
//! `S = 1/4` is the coherent-state (shot-noise) level. All frequencies in this
//! module are reduced, `Ω = ω·τ_r`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{check_axis, evaluate_grid};
use crate::kernels::{quadrature_grid, ResponseKernel};
use crate::pulse::{optimal_total_phase, PhasePolicy, PulseSpec};
use crate::quadrature::SymmetricGrid;

pub const SHOT_NOISE: f64 = 0.25;
pub const MIN_SLICE_SAMPLES: usize = 1 << 10;
/// Relative size of the imaginary part tolerated in the numerical transform.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Closed-form spectral density for given ψ, L and Φ.
pub fn quadrature_spectrum(psi: f64, l: f64, total_phase: f64) -> f64 {
    let x = psi * l;
    let s = total_phase.sin();
    SHOT_NOISE * (1.0 - 2.0 * x * (2.0 * total_phase).sin() + 4.0 * x * x * s * s)
}

/// `S(Ω, t)` for the pulse at time `t`.
pub fn spectral_density<K: ResponseKernel>(
    spec: &PulseSpec,
    kernel: &K,
    t: f64,
    reduced: f64,
) -> f64 {
    quadrature_spectrum(
        spec.psi_profile(t),
        kernel.lorentzian_reduced(reduced),
        spec.total_phase(kernel, t),
    )
}

/// Minimum of the spectrum over the total phase at fixed ψ and L.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimumNoise {
    pub s_min: f64,
    /// Phase Φ* attaining `s_min`.
    pub phase: f64,
}

/// `S_min = ¼[1 + 2a² − 2a√(1+a²)]`, `Φ* = ½ arctan(1/a)` with `a = ψL`.
pub fn min_spectral_density(psi: f64, l: f64) -> Result<MinimumNoise> {
    if !(psi.is_finite() && psi >= 0.0) {
        return Err(Error::domain(format!(
            "psi must be non-negative, got {psi}"
        )));
    }
    if !(l > 0.0 && l <= 1.0) {
        return Err(Error::domain(format!("L must lie in (0, 1], got {l}")));
    }
    let a = psi * l;
    // 1 + 2a² − 2a√(1+a²) = (√(1+a²) − a)², written without cancellation.
    let root = a + a.hypot(1.0);
    Ok(MinimumNoise {
        s_min: SHOT_NOISE / (root * root),
        phase: optimal_total_phase(a),
    })
}

/// `R(t, t+τ)` at fixed `t`: a symbolic δ-weight plus the sampled smooth part.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSlice {
    pub t: f64,
    pub delta_weight: f64,
    pub psi: f64,
    pub total_phase: f64,
    pub tau_r: f64,
    grid: SymmetricGrid,
    pub smooth: Vec<f64>,
}

impl CorrelationSlice {
    pub fn window(&self) -> f64 {
        self.grid.window()
    }

    pub fn step(&self) -> f64 {
        self.grid.step()
    }

    pub fn taus(&self) -> Vec<f64> {
        self.grid.nodes().collect()
    }
}

pub fn correlation_slice<K: ResponseKernel>(
    spec: &PulseSpec,
    kernel: &K,
    t: f64,
    window: f64,
    n_samples: usize,
) -> Result<CorrelationSlice> {
    let grid = quadrature_grid(
        kernel.relaxation_time(),
        window,
        n_samples,
        MIN_SLICE_SAMPLES,
    )?;
    let psi = spec.psi_profile(t);
    let phase = spec.total_phase(kernel, t);
    let sin_phase = phase.sin();
    let h_coef = -psi * (2.0 * phase).sin();
    let g_coef = psi * psi * sin_phase * sin_phase;
    let smooth = grid.sample(|tau| {
        SHOT_NOISE * (h_coef * kernel.response(tau) + g_coef * kernel.self_convolution(tau))
    });
    Ok(CorrelationSlice {
        t,
        delta_weight: SHOT_NOISE,
        psi,
        total_phase: phase,
        tau_r: kernel.relaxation_time(),
        grid,
        smooth,
    })
}

/// Numerical Fourier transform of a correlation slice at reduced frequency `reduced`.
pub fn spectral_density_numeric(slice: &CorrelationSlice, reduced: f64) -> Result<f64> {
    let omega = reduced / slice.tau_r;
    let (re, im) = slice.grid.fourier(&slice.smooth, omega)?;
    let s = slice.delta_weight + re;
    if im.abs() > IMAGINARY_TOLERANCE * s.abs() {
        return Err(Error::domain(format!(
            "transform of an even correlation has imaginary part {im} at Ω = {reduced}"
        )));
    }
    Ok(s)
}

/// Scan settings for [`squeezing_bandwidth`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandScan {
    /// Upper end of the scanned Ω range.
    pub omega_max: f64,
    /// Grid step in Ω before bisection.
    pub step: f64,
    /// Bisection stops when the bracket is narrower than this.
    pub tolerance: f64,
}

impl Default for BandScan {
    fn default() -> Self {
        Self {
            omega_max: 100.0,
            step: 0.01,
            tolerance: 1e-6,
        }
    }
}

/// A reduced-frequency interval with sub-shot-noise fluctuations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub lo: f64,
    /// `None` when the band is still open at the end of the scan.
    pub hi: Option<f64>,
}

impl Band {
    pub fn contains(&self, reduced: f64) -> bool {
        reduced >= self.lo && self.hi.is_none_or(|hi| reduced <= hi)
    }
}

/// Ω-intervals where `S(Ω, t) < 1/4`, by grid scan and bisection.
pub fn squeezing_bandwidth<K: ResponseKernel>(
    spec: &PulseSpec,
    kernel: &K,
    t: f64,
    scan: &BandScan,
) -> Result<Vec<Band>> {
    if !(scan.omega_max > 0.0 && scan.step > 0.0 && scan.tolerance > 0.0)
        || !(scan.omega_max.is_finite() && scan.step.is_finite())
    {
        return Err(Error::domain(format!(
            "invalid band scan settings {scan:?}"
        )));
    }
    let squeezed = |x: f64| spectral_density(spec, kernel, t, x) < SHOT_NOISE;
    let edge = |mut a: f64, mut b: f64| {
        let inside_a = squeezed(a);
        while b - a > scan.tolerance {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if squeezed(mid) == inside_a {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    };

    let n = (scan.omega_max / scan.step).ceil() as usize;
    let node = |i: usize| scan.omega_max * i as f64 / n as f64;

    let mut bands = Vec::new();
    let mut open = squeezed(0.0).then_some(0.0);
    let mut prev = (0.0, open.is_some());
    for i in 1..=n {
        let x = node(i);
        let inside = squeezed(x);
        if inside != prev.1 {
            let boundary = edge(prev.0, x);
            match open.take() {
                Some(lo) => bands.push(Band {
                    lo,
                    hi: Some(boundary),
                }),
                None => open = Some(boundary),
            }
        }
        prev = (x, inside);
    }
    if let Some(lo) = open {
        bands.push(Band { lo, hi: None });
    }
    Ok(bands)
}

/// Sampled `S(Ω; ψ₀)` at `t = 0`, rows indexed by ψ₀ and columns by Ω.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSurface {
    pub psi0_axis: Vec<f64>,
    pub omega_axis: Vec<f64>,
    pub phase_policy: PhasePolicy,
    pub t: f64,
    pub values: Vec<Vec<f64>>,
}

impl SpectrumSurface {
    pub fn row_minimum(&self, row: usize) -> f64 {
        self.values[row]
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Noise spectrum surface at `t = 0` with the initial phase optimized at `omega0_reduced`.
pub fn fig1_surface<K: ResponseKernel + Sync>(
    psi0_axis: &[f64],
    omega_axis: &[f64],
    kernel: &K,
    omega0_reduced: f64,
    workers: usize,
) -> Result<SpectrumSurface> {
    check_axis("psi0", psi0_axis)?;
    check_axis("omega", omega_axis)?;
    if psi0_axis[0] < 0.0 {
        return Err(Error::domain("psi0 axis must be non-negative"));
    }
    if !omega0_reduced.is_finite() {
        return Err(Error::domain(format!(
            "omega0 must be finite, got {omega0_reduced}"
        )));
    }
    let l0 = kernel.lorentzian_reduced(omega0_reduced);
    let values = evaluate_grid(psi0_axis, omega_axis, workers, |psi0, reduced| {
        let phase = optimal_total_phase(psi0 * l0);
        Ok(quadrature_spectrum(
            psi0,
            kernel.lorentzian_reduced(reduced),
            phase,
        ))
    })?;
    Ok(SpectrumSurface {
        psi0_axis: psi0_axis.to_vec(),
        omega_axis: omega_axis.to_vec(),
        phase_policy: PhasePolicy::OptimalAt { omega0_reduced },
        t: 0.0,
        values,
    })
}
