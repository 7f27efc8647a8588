//! Run configuration: a JSON document, validated and completed with defaults.
//!
//! Every optional field left out of the document is filled in, so a resolved
//! [`RunConfig`] serializes to a document that parses back to itself.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dispersion::{DispersionScenario, DispersionSign};
use crate::error::{ConfigError, Error, Result};
use crate::grid::Axis;
use crate::kernels::RelaxationKernel;
use crate::pulse::{PhasePolicy, PulseSpec, DEFAULT_GAMMA, DURATION_RATIO_MIN};
use crate::spectra::BandScan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Spectrum,
    Bandwidth,
    Mandel,
    Fig1,
    Fig2,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Spectrum => "spectrum",
            Mode::Bandwidth => "bandwidth",
            Mode::Mandel => "mandel",
            Mode::Fig1 => "fig1",
            Mode::Fig2 => "fig2",
        }
    }

    fn uses_dispersion(self) -> bool {
        matches!(self, Mode::Mandel | Mode::Fig2)
    }

    pub fn supports_plotscript(self) -> bool {
        matches!(self, Mode::Spectrum | Mode::Fig1 | Mode::Fig2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
    Plotscript,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Plotscript => "gp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelConfig {
    pub tau_r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseConfig {
    pub psi0: f64,
    pub gamma: f64,
    pub n_bar0: f64,
    pub tau_p: f64,
    /// Observation time within the pulse.
    pub t: f64,
    pub phase: PhasePolicy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionConfig {
    pub s: DispersionSign,
    /// Photon counting window T.
    pub measurement_time: f64,
    /// D = τ_p²/|k₂|.
    pub dispersion_length: f64,
    /// Dispersion phase φ = z/D of the single point evaluated in `mandel` mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GridConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi0: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Axis>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputConfig {
    pub prefix: String,
    pub formats: Vec<Format>,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub kernel: KernelConfig,
    pub pulse: PulseConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dispersion: Option<DispersionConfig>,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<BandScan>,
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn kernel(&self) -> Result<RelaxationKernel> {
        RelaxationKernel::new(self.kernel.tau_r)
    }

    pub fn pulse_spec(&self) -> Result<PulseSpec> {
        let p = &self.pulse;
        PulseSpec::from_parts(p.psi0, p.gamma, p.n_bar0, p.tau_p, p.phase)
    }

    pub fn scenario(&self) -> Result<DispersionScenario> {
        let d = self.dispersion.as_ref().ok_or_else(|| {
            Error::domain(format!(
                "mode {} has no dispersion section",
                self.mode.name()
            ))
        })?;
        DispersionScenario::new(
            d.s,
            d.measurement_time,
            self.pulse.tau_p,
            self.kernel.tau_r,
            d.dispersion_length,
            self.pulse.n_bar0,
            self.pulse.psi0,
        )
    }
}

pub mod defaults {
    use crate::grid::Axis;

    pub const TAU_R: f64 = 1.0;
    pub const PSI0: f64 = 1.0;
    pub const OMEGA0_REDUCED: f64 = 1.0;
    /// Measurement time as a fraction of the pulse duration.
    pub const MEASUREMENT_FRACTION: f64 = 0.1;
    pub const DISPERSION_LENGTH: f64 = 1.0;
    pub const PHI: f64 = 0.1;
    pub const SPECTRUM_PSI0: Axis = Axis {
        min: 0.0,
        max: 10.0,
        count: 201,
    };
    pub const SPECTRUM_OMEGA: Axis = Axis {
        min: 0.0,
        max: 10.0,
        count: 201,
    };
    pub const Q_PSI0: Axis = Axis {
        min: 0.0,
        max: 3.0,
        count: 301,
    };
    pub const Q_PHI: Axis = Axis {
        min: 0.0,
        max: 0.3,
        count: 301,
    };
}

#[derive(Debug, Default, Deserialize)]
struct RawConfig {
    mode: Option<Mode>,
    kernel: Option<RawKernel>,
    pulse: Option<RawPulse>,
    dispersion: Option<RawDispersion>,
    grid: Option<RawGrid>,
    bandwidth: Option<RawBandScan>,
    output: Option<RawOutput>,
}

#[derive(Debug, Default, Deserialize)]
struct RawKernel {
    tau_r: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
struct RawPulse {
    psi0: Option<f64>,
    gamma: Option<f64>,
    n_bar0: Option<f64>,
    tau_p: Option<f64>,
    t: Option<f64>,
    phase: Option<PhasePolicy>,
}

#[derive(Debug, Default, Deserialize)]
struct RawDispersion {
    s: Option<DispersionSign>,
    k2: Option<f64>,
    measurement_time: Option<f64>,
    dispersion_length: Option<f64>,
    phi: Option<f64>,
    z: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
struct RawGrid {
    psi0: Option<RawAxis>,
    omega: Option<RawAxis>,
    phi: Option<RawAxis>,
}

#[derive(Debug, Default, Deserialize)]
struct RawAxis {
    min: Option<f64>,
    max: Option<f64>,
    count: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
struct RawBandScan {
    omega_max: Option<f64>,
    step: Option<f64>,
    tolerance: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
struct RawOutput {
    prefix: Option<String>,
    formats: Option<Vec<Format>>,
}

/// Unknown-field handling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    /// Unknown fields are reported back but otherwise ignored.
    #[default]
    Lenient,
    /// Any unknown field is an error.
    Strict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedConfig {
    pub config: RunConfig,
    /// Dotted paths of fields that were not recognized.
    pub ignored: Vec<String>,
}

pub fn parse_config(text: &str, strictness: Strictness) -> Result<ParsedConfig, ConfigError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    parse_config_value(value, strictness)
}

/// Same as [`parse_config`] for an already-parsed document.
pub fn parse_config_value(
    value: Value,
    strictness: Strictness,
) -> Result<ParsedConfig, ConfigError> {
    if !value.is_object() {
        return Err(ConfigError::invalid(
            "<root>",
            "config must be a JSON object",
        ));
    }
    let mut ignored = Vec::new();
    let mut track = serde_path_to_error::Track::new();
    let raw: RawConfig = serde_ignored::deserialize(
        serde_path_to_error::Deserializer::new(value, &mut track),
        |path| ignored.push(dotted(&path.to_string())),
    )
    .map_err(|e| ConfigError::invalid(track.path().to_string(), e.to_string()))?;

    if strictness == Strictness::Strict {
        if let Some(first) = ignored.first() {
            return Err(ConfigError::UnknownField(first.clone()));
        }
    }
    Ok(ParsedConfig {
        config: resolve(raw)?,
        ignored,
    })
}

/// serde_ignored writes `?` for each `Option` layer.
fn dotted(path: &str) -> String {
    path.split('.')
        .filter(|seg| *seg != "?")
        .collect::<Vec<_>>()
        .join(".")
}

fn positive(field: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::invalid(
            field,
            format!("must be positive and finite, got {v}"),
        ))
    }
}

fn nonneg(field: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::invalid(
            field,
            format!("must be non-negative and finite, got {v}"),
        ))
    }
}

fn finite(field: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ConfigError::invalid(
            field,
            format!("must be finite, got {v}"),
        ))
    }
}

fn resolve(raw: RawConfig) -> Result<RunConfig, ConfigError> {
    let mode = raw
        .mode
        .ok_or_else(|| ConfigError::invalid("mode", "missing"))?;

    let tau_r = positive(
        "kernel.tau_r",
        raw.kernel
            .unwrap_or_default()
            .tau_r
            .unwrap_or(defaults::TAU_R),
    )?;
    let pulse = resolve_pulse(mode, tau_r, raw.pulse.unwrap_or_default())?;

    let dispersion = match (mode.uses_dispersion(), raw.dispersion) {
        (true, d) => Some(resolve_dispersion(mode, &pulse, d.unwrap_or_default())?),
        (false, Some(_)) => {
            return Err(ConfigError::invalid(
                "dispersion",
                format!("only applies to mandel and fig2 runs, not {}", mode.name()),
            ))
        }
        (false, None) => None,
    };

    let grid = resolve_grid(mode, raw.grid.unwrap_or_default())?;

    let bandwidth = match (mode, raw.bandwidth) {
        (Mode::Bandwidth, b) => {
            let b = b.unwrap_or_default();
            let d = BandScan::default();
            Some(BandScan {
                omega_max: positive("bandwidth.omega_max", b.omega_max.unwrap_or(d.omega_max))?,
                step: positive("bandwidth.step", b.step.unwrap_or(d.step))?,
                tolerance: positive("bandwidth.tolerance", b.tolerance.unwrap_or(d.tolerance))?,
            })
        }
        (_, Some(_)) => {
            return Err(ConfigError::invalid(
                "bandwidth",
                "only applies to bandwidth runs",
            ));
        }
        (_, None) => None,
    };

    let out = raw.output.unwrap_or_default();
    let formats = out
        .formats
        .unwrap_or_else(|| vec![Format::Csv, Format::Json]);
    if formats.is_empty() {
        return Err(ConfigError::invalid(
            "output.formats",
            "at least one format is required",
        ));
    }
    if formats.contains(&Format::Plotscript) && !mode.supports_plotscript() {
        return Err(ConfigError::invalid(
            "output.formats",
            format!(
                "plotscript output is not available for {} runs",
                mode.name()
            ),
        ));
    }
    let mut unique = Vec::with_capacity(formats.len());
    for f in formats {
        if !unique.contains(&f) {
            unique.push(f);
        }
    }
    let prefix = out.prefix.unwrap_or_else(|| mode.name().to_string());
    if prefix.is_empty() {
        return Err(ConfigError::invalid("output.prefix", "must not be empty"));
    }

    Ok(RunConfig {
        mode,
        kernel: KernelConfig { tau_r },
        pulse,
        dispersion,
        grid,
        bandwidth,
        output: OutputConfig {
            prefix,
            formats: unique,
        },
    })
}

fn resolve_pulse(mode: Mode, tau_r: f64, raw: RawPulse) -> Result<PulseConfig, ConfigError> {
    let tau_p = positive(
        "pulse.tau_p",
        raw.tau_p.unwrap_or(DURATION_RATIO_MIN * tau_r),
    )?;
    let t = finite("pulse.t", raw.t.unwrap_or(0.0))?;
    let phase = raw.phase.unwrap_or(PhasePolicy::OptimalAt {
        omega0_reduced: defaults::OMEGA0_REDUCED,
    });
    match phase {
        PhasePolicy::Constant { phi } => {
            finite("pulse.phase.phi", phi)?;
        }
        PhasePolicy::OptimalAt { omega0_reduced } => {
            finite("pulse.phase.omega0_reduced", omega0_reduced)?;
        }
    }
    if mode == Mode::Fig1 {
        if t != 0.0 {
            return Err(ConfigError::invalid(
                "pulse.t",
                "fig1 surfaces are taken at t = 0",
            ));
        }
        if !matches!(phase, PhasePolicy::OptimalAt { .. }) {
            return Err(ConfigError::invalid(
                "pulse.phase",
                "fig1 requires the optimal_at policy",
            ));
        }
    }

    let psi0 = raw.psi0.map(|v| nonneg("pulse.psi0", v)).transpose()?;
    let gamma = raw.gamma.map(|v| nonneg("pulse.gamma", v)).transpose()?;
    let n_bar0 = raw.n_bar0.map(|v| nonneg("pulse.n_bar0", v)).transpose()?;

    let (psi0, gamma, n_bar0) = match (psi0, gamma, n_bar0) {
        (Some(p), Some(g), Some(n)) => {
            let implied = 2.0 * g * n;
            if (implied - p).abs() > 1e-9 * p.max(implied).max(1.0) {
                return Err(ConfigError::invalid(
                    "pulse.psi0",
                    format!("inconsistent with 2*gamma*n_bar0 = {implied}"),
                ));
            }
            (p, g, n)
        }
        (None, Some(g), Some(n)) => (2.0 * g * n, g, n),
        (Some(p), g, None) => {
            let g = g.unwrap_or(DEFAULT_GAMMA);
            if g == 0.0 {
                if p > 0.0 {
                    return Err(ConfigError::invalid(
                        "pulse.gamma",
                        "must be positive when psi0 > 0",
                    ));
                }
                (p, g, 0.0)
            } else {
                (p, g, p / (2.0 * g))
            }
        }
        (Some(p), None, Some(n)) => {
            if n == 0.0 {
                if p > 0.0 {
                    return Err(ConfigError::invalid(
                        "pulse.n_bar0",
                        "must be positive when psi0 > 0",
                    ));
                }
                (p, DEFAULT_GAMMA, n)
            } else {
                (p, p / (2.0 * n), n)
            }
        }
        (None, g, None) => {
            let g = g.unwrap_or(DEFAULT_GAMMA);
            if g == 0.0 {
                (0.0, 0.0, 0.0)
            } else {
                (defaults::PSI0, g, defaults::PSI0 / (2.0 * g))
            }
        }
        (None, None, Some(n)) => (2.0 * DEFAULT_GAMMA * n, DEFAULT_GAMMA, n),
    };

    Ok(PulseConfig {
        psi0,
        gamma,
        n_bar0,
        tau_p,
        t,
        phase,
    })
}

fn resolve_dispersion(
    mode: Mode,
    pulse: &PulseConfig,
    raw: RawDispersion,
) -> Result<DispersionConfig, ConfigError> {
    let (s, k2_length) = match (raw.s, raw.k2) {
        (Some(_), Some(_)) => {
            return Err(ConfigError::invalid(
                "dispersion.k2",
                "give either s or k2, not both",
            ))
        }
        (s, None) => (s.unwrap_or(DispersionSign::Anomalous), None),
        (None, Some(k2)) => {
            let sign = DispersionSign::from_k2(k2)
                .map_err(|_| ConfigError::invalid("dispersion.k2", "must be nonzero and finite"))?;
            let k2 = finite("dispersion.k2", k2)?;
            (sign, Some(pulse.tau_p * pulse.tau_p / k2.abs()))
        }
    };
    let dispersion_length = match (raw.dispersion_length, k2_length) {
        (Some(_), Some(_)) => {
            return Err(ConfigError::invalid(
                "dispersion.dispersion_length",
                "is derived from k2; give one or the other",
            ))
        }
        (Some(d), None) => positive("dispersion.dispersion_length", d)?,
        (None, Some(d)) => positive("dispersion.k2", d)?,
        (None, None) => defaults::DISPERSION_LENGTH,
    };
    let measurement_time = positive(
        "dispersion.measurement_time",
        raw.measurement_time
            .unwrap_or(defaults::MEASUREMENT_FRACTION * pulse.tau_p),
    )?;

    let phi = match (raw.phi, raw.z) {
        (Some(_), Some(_)) => {
            return Err(ConfigError::invalid(
                "dispersion.z",
                "give either phi or z, not both",
            ))
        }
        (Some(phi), None) => Some(nonneg("dispersion.phi", phi)?),
        (None, Some(z)) => Some(nonneg("dispersion.z", z)? / dispersion_length),
        (None, None) => None,
    };
    let phi = match mode {
        Mode::Mandel => Some(phi.unwrap_or(defaults::PHI)),
        _ if phi.is_some() => {
            return Err(ConfigError::invalid(
                "dispersion.phi",
                "single-point phase only applies to mandel runs; use grid.phi",
            ))
        }
        _ => None,
    };
    Ok(DispersionConfig {
        s,
        measurement_time,
        dispersion_length,
        phi,
    })
}

fn resolve_axis(field: &str, raw: Option<RawAxis>, default: Axis) -> Result<Axis, ConfigError> {
    let raw = raw.unwrap_or_default();
    let axis = Axis {
        min: raw.min.unwrap_or(default.min),
        max: raw.max.unwrap_or(default.max),
        count: raw.count.unwrap_or(default.count),
    };
    finite(&format!("{field}.min"), axis.min)?;
    finite(&format!("{field}.max"), axis.max)?;
    if axis.count < 2 {
        return Err(ConfigError::invalid(
            format!("{field}.count"),
            "grid count must be >= 2",
        ));
    }
    if !(axis.min < axis.max) {
        return Err(ConfigError::invalid(
            field,
            format!("need min < max, got {} .. {}", axis.min, axis.max),
        ));
    }
    Ok(axis)
}

fn resolve_grid(mode: Mode, raw: RawGrid) -> Result<GridConfig, ConfigError> {
    let (want_psi0, want_omega, want_phi) = match mode {
        Mode::Fig1 => (
            Some(defaults::SPECTRUM_PSI0),
            Some(defaults::SPECTRUM_OMEGA),
            None,
        ),
        Mode::Spectrum => (None, Some(defaults::SPECTRUM_OMEGA), None),
        Mode::Fig2 => (Some(defaults::Q_PSI0), None, Some(defaults::Q_PHI)),
        Mode::Bandwidth | Mode::Mandel => (None, None, None),
    };
    let pick = |name: &str, raw: Option<RawAxis>, want: Option<Axis>, nonneg_min: bool| {
        let field = format!("grid.{name}");
        match want {
            Some(default) => {
                let axis = resolve_axis(&field, raw, default)?;
                if nonneg_min && axis.min < 0.0 {
                    return Err(ConfigError::invalid(
                        format!("{field}.min"),
                        "must be non-negative",
                    ));
                }
                Ok(Some(axis))
            }
            None if raw.is_some() => Err(ConfigError::invalid(
                field,
                format!("axis is not used by {} runs", mode.name()),
            )),
            None => Ok(None),
        }
    };
    Ok(GridConfig {
        psi0: pick("psi0", raw.psi0, want_psi0, true)?,
        omega: pick("omega", raw.omega, want_omega, false)?,
        phi: pick("phi", raw.phi, want_phi, true)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        parse_config(text, Strictness::Strict).map(|p| p.config)
    }

    #[test]
    fn minimal_fig1_gets_defaults() {
        let c = parse(r#"{"mode": "fig1", "kernel": {"tau_r": 1}, "grid": {"psi0": {"max": 10}}}"#)
            .unwrap();
        assert_eq!(c.grid.psi0, Some(Axis::new(0.0, 10.0, 201)));
        assert_eq!(c.grid.omega, Some(Axis::new(0.0, 10.0, 201)));
        assert_eq!(
            c.pulse.phase,
            PhasePolicy::OptimalAt {
                omega0_reduced: 1.0
            }
        );
        assert_eq!(c.pulse.t, 0.0);
        assert_eq!(c.dispersion, None);
        assert_eq!(c.output.formats, vec![Format::Csv, Format::Json]);
        assert_eq!(c.output.prefix, "fig1");
    }

    #[test]
    fn grid_count_must_be_two_or_more() {
        let err = parse(r#"{"mode": "fig1", "grid": {"omega": {"count": 1}}}"#).unwrap_err();
        assert!(err.to_string().contains("grid count must be >= 2"), "{err}");
        assert!(
            matches!(err, ConfigError::Invalid { ref field, .. } if field == "grid.omega.count")
        );
    }

    #[test]
    fn min_must_be_below_max() {
        assert!(parse(r#"{"mode": "fig2", "grid": {"phi": {"min": 0.3, "max": 0.1}}}"#).is_err());
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse("{\n  \"mode\": \"fig1\",\n  oops\n}").unwrap_err();
        match err {
            ConfigError::Syntax { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn type_error_names_field() {
        let err = parse(r#"{"mode": "fig1", "kernel": {"tau_r": "fast"}}"#).unwrap_err();
        assert!(
            matches!(err, ConfigError::Invalid { ref field, .. } if field == "kernel.tau_r"),
            "{err:?}"
        );
    }

    #[test]
    fn unknown_fields() {
        let text = r#"{"mode": "fig1", "pulse": {"colour": "red"}}"#;
        assert_eq!(
            parse(text).unwrap_err(),
            ConfigError::UnknownField("pulse.colour".into())
        );
        let lenient = parse_config(text, Strictness::Lenient).unwrap();
        assert_eq!(lenient.ignored, vec!["pulse.colour".to_string()]);
    }

    #[test]
    fn fig2_with_normal_dispersion_is_accepted() {
        let c = parse(r#"{"mode": "fig2", "dispersion": {"s": -1}}"#).unwrap();
        assert_eq!(c.dispersion.unwrap().s, DispersionSign::Normal);
        assert!(parse(r#"{"mode": "fig2", "dispersion": {"s": 0}}"#).is_err());
    }

    #[test]
    fn dispersion_only_for_dispersive_modes() {
        assert!(parse(r#"{"mode": "spectrum", "dispersion": {"s": 1}}"#).is_err());
        let c = parse(r#"{"mode": "mandel"}"#).unwrap();
        let d = c.dispersion.unwrap();
        assert_eq!(d.phi, Some(0.1));
        assert_eq!(d.measurement_time, 1.0);
        assert_eq!(c.pulse.tau_p, 10.0);
    }

    #[test]
    fn k2_and_z_are_converted() {
        let c = parse(
            r#"{"mode": "mandel", "pulse": {"tau_p": 10}, "dispersion": {"k2": -50, "z": 0.5}}"#,
        )
        .unwrap();
        let d = c.dispersion.unwrap();
        assert_eq!(d.s, DispersionSign::Anomalous);
        assert_eq!(d.dispersion_length, 2.0);
        assert_eq!(d.phi, Some(0.25));
        assert!(parse(r#"{"mode": "mandel", "dispersion": {"phi": 0.1, "z": 0.5}}"#).is_err());
    }

    #[test]
    fn peak_phase_expansion() {
        let c = parse(r#"{"mode": "spectrum", "pulse": {"psi0": 5}}"#).unwrap();
        assert_eq!(
            (c.pulse.psi0, c.pulse.gamma, c.pulse.n_bar0),
            (5.0, 0.01, 250.0)
        );
        let c = parse(r#"{"mode": "spectrum", "pulse": {"gamma": 0.02, "n_bar0": 100}}"#).unwrap();
        assert_eq!(c.pulse.psi0, 4.0);
        assert!(parse(
            r#"{"mode": "spectrum", "pulse": {"psi0": 5, "gamma": 0.02, "n_bar0": 100}}"#
        )
        .is_err());
        assert!(parse(r#"{"mode": "spectrum", "pulse": {"psi0": 5, "gamma": 0}}"#).is_err());
    }

    #[test]
    fn fig1_requires_optimal_phase_at_center() {
        assert!(
            parse(r#"{"mode": "fig1", "pulse": {"phase": {"policy": "constant", "phi": 0}}}"#)
                .is_err()
        );
        assert!(parse(r#"{"mode": "fig1", "pulse": {"t": 1}}"#).is_err());
    }

    #[test]
    fn plotscript_only_for_surfaces_and_spectra() {
        assert!(parse(r#"{"mode": "mandel", "output": {"formats": ["plotscript"]}}"#).is_err());
        assert!(parse(r#"{"mode": "spectrum", "output": {"formats": ["plotscript"]}}"#).is_ok());
        assert!(parse(r#"{"mode": "spectrum", "output": {"formats": []}}"#).is_err());
    }

    #[test]
    fn irrelevant_sections_rejected() {
        assert!(parse(r#"{"mode": "mandel", "grid": {"omega": {}}}"#).is_err());
        assert!(parse(r#"{"mode": "fig1", "bandwidth": {}}"#).is_err());
        assert!(parse(r#"{"mode": "bandwidth", "bandwidth": {"step": 0}}"#).is_err());
    }

    #[test]
    fn resolved_config_round_trips() {
        for text in [
            r#"{"mode": "fig1"}"#,
            r#"{"mode": "fig2", "dispersion": {"k2": 3.0}}"#,
            r#"{"mode": "mandel", "pulse": {"gamma": 0.003, "n_bar0": 333.3}}"#,
            r#"{"mode": "bandwidth", "pulse": {"psi0": 0.7, "phase": {"policy": "constant", "phi": 0.1}}}"#,
            r#"{"mode": "spectrum", "pulse": {"psi0": 0.3, "n_bar0": 7}}"#,
        ] {
            let first = parse(text).unwrap();
            let again = parse(&serde_json::to_string(&first).unwrap()).unwrap();
            assert_eq!(first, again, "{text}");
        }
    }
}
