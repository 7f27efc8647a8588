//! Photon statistics of the self-phase-modulated pulse after a dispersive
//! linear medium, in the paraxial (Gaussian-integral) approximation.
//!
//! Propagation distance enters through the dispersion phases φ = z/D and
//! φ_d = z/d, with D = τ_p²/|k₂| and d = τ_r²/|k₂|; `s = +1` for anomalous
//! dispersion (k₂ < 0), which compresses an up-chirped pulse.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{check_axis, evaluate_grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum DispersionSign {
    /// k₂ < 0, s = +1.
    Anomalous,
    /// k₂ > 0, s = -1.
    Normal,
}

impl DispersionSign {
    pub fn from_k2(k2: f64) -> Result<Self> {
        if k2 < 0.0 {
            Ok(Self::Anomalous)
        } else if k2 > 0.0 {
            Ok(Self::Normal)
        } else {
            Err(Error::domain(format!(
                "k2 must be nonzero and finite, got {k2}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Self::Anomalous => 1.0,
            Self::Normal => -1.0,
        }
    }
}

impl From<DispersionSign> for i8 {
    fn from(s: DispersionSign) -> i8 {
        match s {
            DispersionSign::Anomalous => 1,
            DispersionSign::Normal => -1,
        }
    }
}

impl TryFrom<i8> for DispersionSign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Self::Anomalous),
            -1 => Ok(Self::Normal),
            _ => Err(format!("dispersion sign must be 1 or -1, got {v}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionScenario {
    sign: DispersionSign,
    measurement_time: f64,
    tau_p: f64,
    tau_r: f64,
    /// D = τ_p²/|k₂|.
    length_p: f64,
    n_bar0: f64,
    psi0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamWidths {
    pub w2: f64,
    pub v2: f64,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

fn nonneg(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be non-negative and finite, got {v}"
        )))
    }
}

impl DispersionScenario {
    /// `dispersion_length` is D; the relaxation-scale length d follows from D·(τ_r/τ_p)².
    pub fn new(
        sign: DispersionSign,
        measurement_time: f64,
        tau_p: f64,
        tau_r: f64,
        dispersion_length: f64,
        n_bar0: f64,
        psi0: f64,
    ) -> Result<Self> {
        positive("measurement time", measurement_time)?;
        positive("tau_p", tau_p)?;
        positive("tau_r", tau_r)?;
        positive("dispersion length", dispersion_length)?;
        nonneg("n_bar0", n_bar0)?;
        nonneg("psi0", psi0)?;
        Ok(Self {
            sign,
            measurement_time,
            tau_p,
            tau_r,
            length_p: dispersion_length,
            n_bar0,
            psi0,
        })
    }

    /// Builds the scenario from the group-velocity dispersion coefficient k₂.
    pub fn from_k2(
        k2: f64,
        measurement_time: f64,
        tau_p: f64,
        tau_r: f64,
        n_bar0: f64,
        psi0: f64,
    ) -> Result<Self> {
        let sign = DispersionSign::from_k2(k2)?;
        positive("|k2|", k2.abs())?;
        Self::new(
            sign,
            measurement_time,
            tau_p,
            tau_r,
            tau_p * tau_p / k2.abs(),
            n_bar0,
            psi0,
        )
    }

    pub fn with_psi0(mut self, psi0: f64) -> Result<Self> {
        nonneg("psi0", psi0)?;
        self.psi0 = psi0;
        Ok(self)
    }

    pub fn sign(&self) -> DispersionSign {
        self.sign
    }

    pub fn measurement_time(&self) -> f64 {
        self.measurement_time
    }

    pub fn tau_p(&self) -> f64 {
        self.tau_p
    }

    pub fn tau_r(&self) -> f64 {
        self.tau_r
    }

    pub fn n_bar0(&self) -> f64 {
        self.n_bar0
    }

    pub fn psi0(&self) -> f64 {
        self.psi0
    }

    /// D = τ_p²/|k₂|.
    pub fn pulse_length(&self) -> f64 {
        self.length_p
    }

    /// d = τ_r²/|k₂|.
    pub fn relaxation_length(&self) -> f64 {
        self.length_p / self.phase_ratio()
    }

    /// D/d = (τ_p/τ_r)².
    pub fn phase_ratio(&self) -> f64 {
        let r = self.tau_p / self.tau_r;
        r * r
    }

    /// (φ, φ_d) at distance `z`.
    pub fn dispersion_phases(&self, z: f64) -> Result<(f64, f64)> {
        nonneg("z", z)?;
        let phi = z / self.length_p;
        Ok((phi, phi * self.phase_ratio()))
    }

    /// w² = 1 − sψ₀φ and V² = w² + φ².
    pub fn beam_widths(&self, phi: f64) -> Result<BeamWidths> {
        nonneg("phi", phi)?;
        let w2 = 1.0 - self.sign.value() * self.psi0 * phi;
        if !(w2 > 0.0) {
            return Err(Error::CompressionSingularity {
                psi0: self.psi0,
                phi,
                w2,
            });
        }
        Ok(BeamWidths {
            w2,
            v2: w2 + phi * phi,
        })
    }

    /// ⟨N_T(t, z)⟩ = n̄₀ T V⁻¹ exp[−t²/(V²τ_p²)].
    pub fn mean_photons(&self, t: f64, phi: f64) -> Result<f64> {
        let BeamWidths { v2, .. } = self.beam_widths(phi)?;
        let x = t / self.tau_p;
        Ok(self.n_bar0 * self.measurement_time / v2.sqrt() * (-x * x / v2).exp())
    }

    /// Mandel parameter Q(0, z) at the pulse center.
    ///
    /// The half-angle term is the argument of (2φφ_d − w²) + i·2φw taken in
    /// [0, π], so the result is finite and of one sign for φ > 0. At φ = 0
    /// the pulse has not yet entered the dispersive medium and its photon
    /// statistics are those of the input coherent state, Q = 0.
    pub fn mandel_q(&self, phi: f64) -> Result<f64> {
        let BeamWidths { w2, .. } = self.beam_widths(phi)?;
        if phi == 0.0 || self.psi0 == 0.0 {
            return Ok(0.0);
        }
        let w = w2.sqrt();
        let phi_d = phi * self.phase_ratio();
        let angle = (phi / w).atan() + 0.5 * (2.0 * phi * w).atan2(2.0 * phi * phi_d - w2);
        let phi2 = phi * phi;
        let denom = (w2 * w2 - 2.0 * phi2 * w2 + 4.0 * phi2 * phi2).powf(0.25);
        let prefactor = self.measurement_time * self.psi0 / (PI.sqrt() * self.tau_p);
        Ok(-prefactor * angle.sin() / denom)
    }
}

/// Q(0, z) over a (ψ₀, φ) grid; `None` marks cells past the compression focus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QSurface {
    pub psi0_axis: Vec<f64>,
    pub phi_axis: Vec<f64>,
    pub values: Vec<Vec<Option<f64>>>,
}

impl QSurface {
    pub fn masked_count(&self) -> usize {
        self.values.iter().flatten().filter(|v| v.is_none()).count()
    }
}

pub fn fig2_surface(
    psi0_axis: &[f64],
    phi_axis: &[f64],
    template: &DispersionScenario,
    workers: usize,
) -> Result<QSurface> {
    check_axis("psi0", psi0_axis)?;
    check_axis("phi", phi_axis)?;
    if psi0_axis[0] < 0.0 || phi_axis[0] < 0.0 {
        return Err(Error::domain("psi0 and phi axes must be non-negative"));
    }
    let values = evaluate_grid(psi0_axis, phi_axis, workers, |psi0, phi| {
        match template.with_psi0(psi0)?.mandel_q(phi) {
            Ok(q) => Ok(Some(q)),
            Err(Error::CompressionSingularity { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    })?;
    Ok(QSurface {
        psi0_axis: psi0_axis.to_vec(),
        phi_axis: phi_axis.to_vec(),
        values,
    })
}
