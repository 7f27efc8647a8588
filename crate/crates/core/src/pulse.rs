//! Gaussian input pulse, its self-phase-modulation profile and initial-phase policy.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::ResponseKernel;

/// Coupling used when only the peak nonlinear phase is given.
pub const DEFAULT_GAMMA: f64 = 0.01;
/// Largest coupling still treated as weak.
pub const GAMMA_MAX: f64 = 0.1;
/// Smallest pulse-duration to relaxation-time ratio for which the slowly varying model holds.
pub const DURATION_RATIO_MIN: f64 = 10.0;

/// How the initial pulse phase φ(t) is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case", deny_unknown_fields)]
pub enum PhasePolicy {
    /// φ(t) = phi for all t.
    Constant { phi: f64 },
    /// φ(t) minimizes the quadrature noise at reduced frequency `omega0_reduced`.
    OptimalAt { omega0_reduced: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidityFlags {
    /// γ ≤ [`GAMMA_MAX`].
    pub weak_coupling: bool,
    /// τ_p / τ_r ≥ [`DURATION_RATIO_MIN`].
    pub long_pulse: bool,
}

impl ValidityFlags {
    pub fn all_valid(&self) -> bool {
        self.weak_coupling && self.long_pulse
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSpec {
    n_bar0: f64,
    tau_p: f64,
    gamma: f64,
    peak_phase: f64,
    phase_policy: PhasePolicy,
}

fn check_nonneg(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be finite and non-negative, got {v}"
        )))
    }
}

fn check_policy(policy: &PhasePolicy) -> Result<()> {
    match *policy {
        PhasePolicy::Constant { phi } if !phi.is_finite() => Err(Error::domain(format!(
            "constant phase must be finite, got {phi}"
        ))),
        PhasePolicy::OptimalAt { omega0_reduced } if !omega0_reduced.is_finite() => {
            Err(Error::domain(format!(
                "optimal-phase frequency must be finite, got {omega0_reduced}"
            )))
        }
        _ => Ok(()),
    }
}

impl PulseSpec {
    pub fn new(n_bar0: f64, tau_p: f64, gamma: f64, phase_policy: PhasePolicy) -> Result<Self> {
        check_nonneg("n_bar0", n_bar0)?;
        check_nonneg("gamma", gamma)?;
        if !(tau_p.is_finite() && tau_p > 0.0) {
            return Err(Error::domain(format!(
                "tau_p must be positive, got {tau_p}"
            )));
        }
        check_policy(&phase_policy)?;
        Ok(Self {
            n_bar0,
            tau_p,
            gamma,
            peak_phase: 2.0 * gamma * n_bar0,
            phase_policy,
        })
    }

    /// Builds a pulse from its peak nonlinear phase ψ₀ and coupling γ; the
    /// peak photon density follows as ψ₀ / 2γ. ψ₀ is kept exactly as given.
    pub fn from_peak_phase(
        psi0: f64,
        gamma: f64,
        tau_p: f64,
        phase_policy: PhasePolicy,
    ) -> Result<Self> {
        check_nonneg("psi0", psi0)?;
        if gamma == 0.0 && psi0 > 0.0 {
            return Err(Error::domain(
                "a nonzero peak phase needs a nonzero coupling",
            ));
        }
        let n_bar0 = if psi0 == 0.0 {
            0.0
        } else {
            psi0 / (2.0 * gamma)
        };
        let mut spec = Self::new(n_bar0, tau_p, gamma, phase_policy)?;
        spec.peak_phase = psi0;
        Ok(spec)
    }

    /// Takes ψ₀, γ and n̄₀ as given; they must agree to within rounding.
    pub fn from_parts(
        psi0: f64,
        gamma: f64,
        n_bar0: f64,
        tau_p: f64,
        phase_policy: PhasePolicy,
    ) -> Result<Self> {
        check_nonneg("psi0", psi0)?;
        let mut spec = Self::new(n_bar0, tau_p, gamma, phase_policy)?;
        if (spec.peak_phase - psi0).abs() > 1e-9 * psi0.max(spec.peak_phase).max(1.0) {
            return Err(Error::domain(format!(
                "psi0 = {psi0} does not match 2*gamma*n_bar0 = {}",
                spec.peak_phase
            )));
        }
        spec.peak_phase = psi0;
        Ok(spec)
    }

    pub fn n_bar0(&self) -> f64 {
        self.n_bar0
    }

    pub fn tau_p(&self) -> f64 {
        self.tau_p
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// ψ₀ = 2γn̄₀.
    pub fn peak_phase(&self) -> f64 {
        self.peak_phase
    }

    pub fn phase_policy(&self) -> PhasePolicy {
        self.phase_policy
    }

    pub fn with_phase_policy(mut self, policy: PhasePolicy) -> Result<Self> {
        check_policy(&policy)?;
        self.phase_policy = policy;
        Ok(self)
    }

    pub fn validity<K: ResponseKernel>(&self, kernel: &K) -> ValidityFlags {
        ValidityFlags {
            weak_coupling: self.gamma <= GAMMA_MAX,
            long_pulse: self.tau_p / kernel.relaxation_time() >= DURATION_RATIO_MIN,
        }
    }

    /// Nonlinear phase ψ(t) = ψ₀ exp(-t²/τ_p²).
    pub fn psi_profile(&self, t: f64) -> f64 {
        let x = t / self.tau_p;
        self.peak_phase * (-x * x).exp()
    }

    /// Optimal initial phase φ₀(t) for noise suppression at `omega0_reduced`.
    pub fn phi_optimal<K: ResponseKernel>(&self, kernel: &K, t: f64, omega0_reduced: f64) -> f64 {
        let psi = self.psi_profile(t);
        optimal_total_phase(psi * kernel.lorentzian_reduced(omega0_reduced)) - psi
    }

    /// Initial phase φ(t) under the pulse's phase policy.
    pub fn initial_phase<K: ResponseKernel>(&self, kernel: &K, t: f64) -> f64 {
        match self.phase_policy {
            PhasePolicy::Constant { phi } => phi,
            PhasePolicy::OptimalAt { omega0_reduced } => {
                self.phi_optimal(kernel, t, omega0_reduced)
            }
        }
    }

    /// Total phase Φ(t) = ψ(t) + φ(t).
    pub fn total_phase<K: ResponseKernel>(&self, kernel: &K, t: f64) -> f64 {
        let psi = self.psi_profile(t);
        match self.phase_policy {
            PhasePolicy::Constant { phi } => psi + phi,
            // ψ cancels against the -ψ in φ₀.
            PhasePolicy::OptimalAt { omega0_reduced } => {
                optimal_total_phase(psi * kernel.lorentzian_reduced(omega0_reduced))
            }
        }
    }
}

/// Φ* = ½ arctan(1/a), continued to π/4 at a = 0.
pub fn optimal_total_phase(a: f64) -> f64 {
    if a == 0.0 {
        FRAC_PI_4
    } else {
        0.5 * (1.0 / a).atan()
    }
}
