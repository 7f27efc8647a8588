//! Serialization of result envelopes to CSV, JSON and gnuplot scripts.
//!
//! Numbers are written in their shortest round-trip decimal form (at most 17
//! significant digits), lines end in LF, and the output depends only on the
//! envelope contents.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::Format;
use crate::error::{Error, Result};
use crate::run::{Payload, ResultEnvelope};

/// Shortest decimal string that parses back to `v`; `-0` is written as `0.0`.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        "0.0".to_string()
    } else {
        format!("{v:?}")
    }
}

pub fn render_csv(env: &ResultEnvelope) -> String {
    let mut out = String::new();
    let n = format_number;
    match &env.payload {
        Payload::Fig1(s) => {
            out.push_str("psi0,omega_reduced,S\n");
            for (psi0, row) in s.psi0_axis.iter().zip(&s.values) {
                for (omega, v) in s.omega_axis.iter().zip(row) {
                    let _ = writeln!(out, "{},{},{}", n(*psi0), n(*omega), n(*v));
                }
            }
        }
        Payload::Fig2(q) => {
            out.push_str("psi0,phi,Q,masked\n");
            for (psi0, row) in q.psi0_axis.iter().zip(&q.values) {
                for (phi, v) in q.phi_axis.iter().zip(row) {
                    match v {
                        Some(v) => writeln!(out, "{},{},{},0", n(*psi0), n(*phi), n(*v)),
                        None => writeln!(out, "{},{},,1", n(*psi0), n(*phi)),
                    }
                    .ok();
                }
            }
        }
        Payload::Spectrum(line) => {
            out.push_str("omega_reduced,S\n");
            for (omega, v) in line.omega_axis.iter().zip(&line.values) {
                let _ = writeln!(out, "{},{}", n(*omega), n(*v));
            }
        }
        Payload::Bandwidth(b) => {
            out.push_str("omega_lo,omega_hi\n");
            for band in &b.bands {
                let hi = band.hi.map(n).unwrap_or_default();
                let _ = writeln!(out, "{},{}", n(band.lo), hi);
            }
        }
        Payload::Mandel(m) => {
            out.push_str("psi0,phi,phi_d,w2,V2,mean_photons,Q\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                n(m.psi0),
                n(m.phi),
                n(m.phi_d),
                n(m.w2),
                n(m.v2),
                n(m.mean_photons),
                n(m.q)
            );
        }
    }
    out
}

pub fn render_json(env: &ResultEnvelope) -> Result<String> {
    let mut s = serde_json::to_string_pretty(env)?;
    s.push('\n');
    Ok(s)
}

pub fn parse_json(text: &str) -> Result<ResultEnvelope> {
    Ok(serde_json::from_str(text)?)
}

/// Self-contained gnuplot script with the data inlined as a datablock.
pub fn render_plotscript(env: &ResultEnvelope) -> Result<String> {
    let n = format_number;
    let mut out = String::new();
    let _ = writeln!(out, "# generated by {} {}", env.tool, env.version);
    let _ = writeln!(out, "# content hash {}", env.content_hash);
    match &env.payload {
        Payload::Fig1(s) => {
            out.push_str("$data << EOD\n");
            for (psi0, row) in s.psi0_axis.iter().zip(&s.values) {
                for (omega, v) in s.omega_axis.iter().zip(row) {
                    let _ = writeln!(out, "{} {} {}", n(*psi0), n(*omega), n(*v));
                }
                out.push('\n');
            }
            out.push_str("EOD\n");
            out.push_str(concat!(
                "set title \"Squeezed-quadrature noise spectrum S at t = 0\"\n",
                "set xlabel \"psi\"\n",
                "set ylabel \"Omega\"\n",
                "set zlabel \"S\"\n",
                "set hidden3d\n",
                "set ticslevel 0\n",
                "splot $data using 1:2:3 with lines notitle\n",
            ));
        }
        Payload::Fig2(q) => {
            out.push_str("set datafile missing \"NaN\"\n");
            out.push_str("$data << EOD\n");
            for (psi0, row) in q.psi0_axis.iter().zip(&q.values) {
                for (phi, v) in q.phi_axis.iter().zip(row) {
                    let v = v.map(n).unwrap_or_else(|| "NaN".to_string());
                    let _ = writeln!(out, "{} {} {}", n(*psi0), n(*phi), v);
                }
                out.push('\n');
            }
            out.push_str("EOD\n");
            out.push_str(concat!(
                "set title \"Mandel parameter Q(0,z)\"\n",
                "set xlabel \"psi(0)\"\n",
                "set ylabel \"phi(z)\"\n",
                "set zlabel \"Q\"\n",
                "set hidden3d\n",
                "set ticslevel 0\n",
                "splot $data using 1:2:3 with lines notitle\n",
            ));
        }
        Payload::Spectrum(line) => {
            out.push_str("$data << EOD\n");
            for (omega, v) in line.omega_axis.iter().zip(&line.values) {
                let _ = writeln!(out, "{} {}", n(*omega), n(*v));
            }
            out.push_str("EOD\n");
            let _ = writeln!(
                out,
                "set title \"Quadrature noise spectrum, psi = {}, t = {}\"",
                n(line.psi),
                n(line.t)
            );
            out.push_str(concat!(
                "set xlabel \"Omega\"\n",
                "set ylabel \"S\"\n",
                "plot $data using 1:2 with lines title \"S\", 0.25 with lines dashtype 2 title \"shot noise\"\n",
            ));
        }
        Payload::Bandwidth(_) | Payload::Mandel(_) => {
            return Err(Error::domain(format!(
                "no plot script for {} results",
                env.config.mode.name()
            )));
        }
    }
    Ok(out)
}

pub fn render(env: &ResultEnvelope, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(render_csv(env)),
        Format::Json => render_json(env),
        Format::Plotscript => render_plotscript(env),
    }
}

/// Writes one file per format to `<prefix>.<ext>` and returns their paths.
pub fn emit(env: &ResultEnvelope, prefix: &Path, formats: &[Format]) -> Result<Vec<PathBuf>> {
    if let Some(parent) = prefix.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|source| Error::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    let mut written = Vec::with_capacity(formats.len());
    for &format in formats {
        let mut name = prefix.as_os_str().to_owned();
        name.push(".");
        name.push(format.extension());
        let path = PathBuf::from(name);
        let text = render(env, format)?;
        fs::write(&path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        written.push(path);
    }
    Ok(written)
}
