//! Dispatches a resolved [`RunConfig`] to the compute modules and wraps the
//! result in a self-describing, hash-stamped envelope.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{Mode, RunConfig};
use crate::dispersion::{fig2_surface, BeamWidths, DispersionSign, QSurface};
use crate::error::{Error, Result};
use crate::pulse::ValidityFlags;
use crate::spectra::{
    fig1_surface, spectral_density, squeezing_bandwidth, Band, BandScan, SpectrumSurface,
};

pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLine {
    pub t: f64,
    pub psi: f64,
    pub total_phase: f64,
    pub omega_axis: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandwidthResult {
    pub t: f64,
    pub psi: f64,
    pub total_phase: f64,
    pub scan: BandScan,
    pub bands: Vec<Band>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MandelPoint {
    pub psi0: f64,
    pub phi: f64,
    pub phi_d: f64,
    pub w2: f64,
    pub v2: f64,
    /// ⟨N_T⟩ at the pulse center.
    pub mean_photons: f64,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Spectrum(SpectrumLine),
    Bandwidth(BandwidthResult),
    Mandel(MandelPoint),
    Fig1(SpectrumSurface),
    Fig2(QSurface),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub validity: ValidityFlags,
    pub notes: Vec<String>,
    pub payload: Payload,
    /// SHA-256 over every other field.
    pub content_hash: String,
}

#[derive(Serialize)]
struct HashedContent<'a> {
    tool: &'a str,
    version: &'a str,
    config: &'a RunConfig,
    validity: &'a ValidityFlags,
    notes: &'a [String],
    payload: &'a Payload,
}

impl ResultEnvelope {
    fn new(
        config: RunConfig,
        validity: ValidityFlags,
        notes: Vec<String>,
        payload: Payload,
    ) -> Result<Self> {
        let mut env = Self {
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            config,
            validity,
            notes,
            payload,
            content_hash: String::new(),
        };
        env.content_hash = env.compute_hash()?;
        Ok(env)
    }

    pub fn compute_hash(&self) -> Result<String> {
        let bytes = serde_json::to_vec(&HashedContent {
            tool: &self.tool,
            version: &self.version,
            config: &self.config,
            validity: &self.validity,
            notes: &self.notes,
            payload: &self.payload,
        })?;
        Ok(format!("{:x}", Sha256::digest(bytes)))
    }
}

/// Runs serially.
pub fn run(config: &RunConfig) -> Result<ResultEnvelope> {
    run_with_workers(config, 1)
}

/// Runs with surface rows spread over `workers` threads; the output does not depend on `workers`.
pub fn run_with_workers(config: &RunConfig, workers: usize) -> Result<ResultEnvelope> {
    let kernel = config.kernel()?;
    let pulse = config.pulse_spec()?;
    let validity = pulse.validity(&kernel);
    let mut notes = Vec::new();
    if !validity.weak_coupling {
        notes.push(format!(
            "outside model validity: gamma = {} exceeds the weak-coupling limit",
            config.pulse.gamma
        ));
    }
    if !validity.long_pulse {
        notes.push(format!(
            "outside model validity: tau_p/tau_r = {} is below the long-pulse limit",
            config.pulse.tau_p / config.kernel.tau_r
        ));
    }

    let missing = |what: &str| Error::domain(format!("resolved config lacks {what}"));
    let t = config.pulse.t;

    let payload = match config.mode {
        Mode::Spectrum => {
            let omega_axis = config
                .grid
                .omega
                .ok_or_else(|| missing("grid.omega"))?
                .values();
            let values = omega_axis
                .iter()
                .map(|&x| spectral_density(&pulse, &kernel, t, x))
                .collect();
            Payload::Spectrum(SpectrumLine {
                t,
                psi: pulse.psi_profile(t),
                total_phase: pulse.total_phase(&kernel, t),
                omega_axis,
                values,
            })
        }
        Mode::Bandwidth => {
            let scan = config.bandwidth.ok_or_else(|| missing("bandwidth"))?;
            let bands = squeezing_bandwidth(&pulse, &kernel, t, &scan)?;
            if bands.last().is_some_and(|b| b.hi.is_none()) {
                notes.push(format!(
                    "last band extends past the scanned range (omega_max = {})",
                    scan.omega_max
                ));
            }
            Payload::Bandwidth(BandwidthResult {
                t,
                psi: pulse.psi_profile(t),
                total_phase: pulse.total_phase(&kernel, t),
                scan,
                bands,
            })
        }
        Mode::Mandel => {
            let scn = config.scenario()?;
            let phi = config
                .dispersion
                .and_then(|d| d.phi)
                .ok_or_else(|| missing("dispersion.phi"))?;
            let BeamWidths { w2, v2 } = scn.beam_widths(phi)?;
            Payload::Mandel(MandelPoint {
                psi0: scn.psi0(),
                phi,
                phi_d: phi * scn.phase_ratio(),
                w2,
                v2,
                mean_photons: scn.mean_photons(0.0, phi)?,
                q: scn.mandel_q(phi)?,
            })
        }
        Mode::Fig1 => {
            let psi0 = config
                .grid
                .psi0
                .ok_or_else(|| missing("grid.psi0"))?
                .values();
            let omega = config
                .grid
                .omega
                .ok_or_else(|| missing("grid.omega"))?
                .values();
            let omega0 = match config.pulse.phase {
                crate::pulse::PhasePolicy::OptimalAt { omega0_reduced } => omega0_reduced,
                crate::pulse::PhasePolicy::Constant { .. } => {
                    return Err(Error::domain("fig1 requires the optimal_at phase policy"))
                }
            };
            Payload::Fig1(fig1_surface(&psi0, &omega, &kernel, omega0, workers)?)
        }
        Mode::Fig2 => {
            let scn = config.scenario()?;
            if scn.sign() == DispersionSign::Normal {
                notes.push(
                    "variant: normal dispersion (s = -1); the reference Q surface uses anomalous dispersion (s = 1)"
                        .to_string(),
                );
            }
            let psi0 = config
                .grid
                .psi0
                .ok_or_else(|| missing("grid.psi0"))?
                .values();
            let phi = config.grid.phi.ok_or_else(|| missing("grid.phi"))?.values();
            let surface = fig2_surface(&psi0, &phi, &scn, workers)?;
            let masked = surface.masked_count();
            if masked > 0 {
                notes.push(format!(
                    "{masked} cells past the compression focus (w^2 <= 0) are masked"
                ));
            }
            Payload::Fig2(surface)
        }
    };

    ResultEnvelope::new(config.clone(), validity, notes, payload)
}
