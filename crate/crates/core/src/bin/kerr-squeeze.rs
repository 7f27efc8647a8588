use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use kerr_squeeze::config::{parse_config_value, Format, Strictness};
use kerr_squeeze::emit::emit;
use kerr_squeeze::error::{ConfigError, Error};
use kerr_squeeze::run::run_with_workers;

#[derive(Parser)]
#[command(
    name = "kerr-squeeze",
    version,
    about = "Squeezing spectra and photon statistics of pulses in a relaxing Kerr medium"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Noise spectrum S(Omega) of one pulse slice
    Spectrum(Common),
    /// Frequency bands with sub-shot-noise fluctuations
    Bandwidth(Common),
    /// Mean photon number and Mandel Q after the dispersive medium
    Mandel(Common),
    /// S(Omega; psi0) surface at t = 0 with optimized phase
    Fig1(Common),
    /// Q(0, z) surface over psi0 and the dispersion phase
    Fig2(Common),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// JSON config document; command-line flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path prefix (extensions are appended)
    #[arg(long)]
    out: Option<String>,
    /// Comma-separated subset of csv,json,plotscript
    #[arg(long, value_delimiter = ',')]
    format: Option<Vec<String>>,
    /// Worker threads for surface evaluation
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Reject unknown config fields
    #[arg(long)]
    strict: bool,

    #[arg(long)]
    tau_r: Option<f64>,
    #[arg(long)]
    tau_p: Option<f64>,
    /// Peak nonlinear phase
    #[arg(long)]
    psi0: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    n_bar0: Option<f64>,
    /// Observation time within the pulse
    #[arg(long)]
    t: Option<f64>,
    /// Optimize the initial phase at this reduced frequency
    #[arg(long, conflicts_with = "phase")]
    omega0: Option<f64>,
    /// Constant initial phase (radians)
    #[arg(long, allow_hyphen_values = true)]
    phase: Option<f64>,

    /// Dispersion sign: 1 (anomalous) or -1 (normal)
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i8>,
    /// Group-velocity dispersion coefficient (sets s and the dispersion length)
    #[arg(long, allow_hyphen_values = true)]
    k2: Option<f64>,
    #[arg(long)]
    measurement_time: Option<f64>,
    #[arg(long)]
    dispersion_length: Option<f64>,
    /// Dispersion phase z/D for a single mandel point
    #[arg(long, conflicts_with = "z")]
    phi: Option<f64>,
    /// Propagation distance for a single mandel point
    #[arg(long)]
    z: Option<f64>,

    /// psi0 axis as MIN:MAX:COUNT
    #[arg(long, allow_hyphen_values = true)]
    psi0_axis: Option<String>,
    /// Reduced-frequency axis as MIN:MAX:COUNT
    #[arg(long, allow_hyphen_values = true)]
    omega_axis: Option<String>,
    /// Dispersion-phase axis as MIN:MAX:COUNT
    #[arg(long, allow_hyphen_values = true)]
    phi_axis: Option<String>,

    /// Upper end of the bandwidth scan
    #[arg(long)]
    omega_max: Option<f64>,
    #[arg(long)]
    scan_step: Option<f64>,
    #[arg(long)]
    tolerance: Option<f64>,
}

fn section<'a>(root: &'a mut Map<String, Value>, name: &str) -> &'a mut Map<String, Value> {
    let entry = root.entry(name).or_insert_with(|| json!({}));
    if !entry.is_object() {
        *entry = json!({});
    }
    entry.as_object_mut().expect("object")
}

fn parse_axis(flag: &str, spec: &str) -> Result<Value, ConfigError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || ConfigError::invalid(flag, format!("expected MIN:MAX:COUNT, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let min: f64 = parts[0].parse().map_err(|_| bad())?;
    let max: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    Ok(json!({"min": min, "max": max, "count": count}))
}

fn apply_overrides(doc: &mut Value, mode: &str, c: &Common) -> Result<(), ConfigError> {
    let root = doc
        .as_object_mut()
        .ok_or_else(|| ConfigError::invalid("<root>", "config must be a JSON object"))?;
    root.insert("mode".into(), json!(mode));

    if let Some(v) = c.tau_r {
        section(root, "kernel").insert("tau_r".into(), json!(v));
    }

    let pulse_flags = [c.tau_p, c.psi0, c.gamma, c.n_bar0, c.t, c.omega0, c.phase];
    if pulse_flags.iter().any(Option::is_some) {
        let pulse = section(root, "pulse");
        if let Some(v) = c.tau_p {
            pulse.insert("tau_p".into(), json!(v));
        }
        if let Some(v) = c.psi0 {
            pulse.insert("psi0".into(), json!(v));
            if c.n_bar0.is_none() {
                pulse.remove("n_bar0");
            }
        }
        if let Some(v) = c.gamma {
            pulse.insert("gamma".into(), json!(v));
        }
        if let Some(v) = c.n_bar0 {
            pulse.insert("n_bar0".into(), json!(v));
            if c.psi0.is_none() {
                pulse.remove("psi0");
            }
        }
        if let Some(v) = c.t {
            pulse.insert("t".into(), json!(v));
        }
        if let Some(v) = c.omega0 {
            pulse.insert(
                "phase".into(),
                json!({"policy": "optimal_at", "omega0_reduced": v}),
            );
        }
        if let Some(v) = c.phase {
            pulse.insert("phase".into(), json!({"policy": "constant", "phi": v}));
        }
    }

    let dispersion_flags = [c.k2, c.measurement_time, c.dispersion_length, c.phi, c.z];
    if c.s.is_some() || dispersion_flags.iter().any(Option::is_some) {
        let d = section(root, "dispersion");
        if let Some(v) = c.s {
            d.insert("s".into(), json!(v));
            d.remove("k2");
        }
        if let Some(v) = c.k2 {
            d.insert("k2".into(), json!(v));
            d.remove("s");
            d.remove("dispersion_length");
        }
        if let Some(v) = c.measurement_time {
            d.insert("measurement_time".into(), json!(v));
        }
        if let Some(v) = c.dispersion_length {
            d.insert("dispersion_length".into(), json!(v));
            d.remove("k2");
        }
        if let Some(v) = c.phi {
            d.insert("phi".into(), json!(v));
            d.remove("z");
        }
        if let Some(v) = c.z {
            d.insert("z".into(), json!(v));
            d.remove("phi");
        }
    }

    for (name, flag, spec) in [
        ("psi0", "--psi0-axis", &c.psi0_axis),
        ("omega", "--omega-axis", &c.omega_axis),
        ("phi", "--phi-axis", &c.phi_axis),
    ] {
        if let Some(spec) = spec {
            let axis = parse_axis(flag, spec)?;
            section(root, "grid").insert(name.into(), axis);
        }
    }

    let scan = [
        ("omega_max", c.omega_max),
        ("step", c.scan_step),
        ("tolerance", c.tolerance),
    ];
    if scan.iter().any(|(_, v)| v.is_some()) {
        let b = section(root, "bandwidth");
        for (key, v) in scan {
            if let Some(v) = v {
                b.insert(key.into(), json!(v));
            }
        }
    }

    if c.out.is_some() || c.format.is_some() {
        let out = section(root, "output");
        if let Some(prefix) = &c.out {
            out.insert("prefix".into(), json!(prefix));
        }
        if let Some(formats) = &c.format {
            out.insert("formats".into(), json!(formats));
        }
    }
    Ok(())
}

fn execute(mode: &str, common: &Common) -> Result<Vec<PathBuf>, Error> {
    let mut doc = match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            serde_json::from_str::<Value>(&text).map_err(|e| ConfigError::Syntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?
        }
        None => json!({}),
    };
    apply_overrides(&mut doc, mode, common)?;

    let strictness = if common.strict {
        Strictness::Strict
    } else {
        Strictness::Lenient
    };
    let parsed = parse_config_value(doc, strictness)?;
    for field in &parsed.ignored {
        eprintln!("warning: ignoring unknown config field `{field}`");
    }
    let config = parsed.config;

    let envelope = run_with_workers(&config, common.workers.max(1))?;
    for note in &envelope.notes {
        eprintln!("note: {note}");
    }
    let formats: Vec<Format> = config.output.formats.clone();
    emit(&envelope, &PathBuf::from(&config.output.prefix), &formats)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, common) = match &cli.command {
        Command::Spectrum(c) => ("spectrum", c),
        Command::Bandwidth(c) => ("bandwidth", c),
        Command::Mandel(c) => ("mandel", c),
        Command::Fig1(c) => ("fig1", c),
        Command::Fig2(c) => ("fig2", c),
    };
    match execute(mode, common) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
