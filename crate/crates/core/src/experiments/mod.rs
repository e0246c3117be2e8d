//! Figure-reproduction commands behind the `nearfield` binary.
//!
//! Each command resolves a [`ScenarioConfig`], evaluates its grid in
//! parallel (results are gathered by index) and writes a CSV file, an
//! optional `.report.csv` and a `.meta` sidecar with the resolved settings.

mod commands;
mod config;
mod output;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub use commands::{bw, distances, distances_text, fig3, fig5, focus, heatmap};
pub use config::{Grid, Mode, ScenarioConfig, Spacing, SweepQuadrature, Units};
pub use output::{format_value, quantize, GainProfile, HeatMap, Report, Status};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Distances,
    Fig3,
    Fig5,
    Focus,
    Bw,
    Heatmap,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Distances,
        Command::Fig3,
        Command::Fig5,
        Command::Focus,
        Command::Bw,
        Command::Heatmap,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Distances => "distances",
            Command::Fig3 => "fig3",
            Command::Fig5 => "fig5",
            Command::Focus => "focus",
            Command::Bw => "bw",
            Command::Heatmap => "heatmap",
        }
    }
}

/// What a command wrote and how many rows failed to converge.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub summary: String,
    pub nonconvergent: usize,
}

/// `out.csv` → `out.<ext>`
pub fn sidecar_path(path: &Path, ext: &str) -> PathBuf {
    path.with_extension(ext)
}

fn count_nonconvergent(statuses: impl IntoIterator<Item = Status>) -> usize {
    statuses.into_iter().filter(|s| *s == Status::NonConvergent).count()
}

fn summarize_report(out: &mut String, r: &Report) {
    let _ = writeln!(out, "{}", r.columns().join(" "));
    for row in r.rows() {
        let cells: Vec<String> = row.iter().map(|v| format_value(*v)).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
}

/// Runs `cmd` and writes its files.
pub fn run(cmd: Command, cfg: &ScenarioConfig) -> Result<Outcome> {
    let out = cfg.output_path.clone();
    let mut files = vec![out.clone()];
    let mut summary = String::new();
    let mut report = None;
    let nonconvergent = match cmd {
        Command::Distances => {
            let (d, r) = distances(cfg);
            summary.push_str(&distances_text(&d, cfg.wavelength_m));
            r.write(&out)?;
            0
        }
        Command::Fig3 | Command::Fig5 => {
            let p = if cmd == Command::Fig3 { fig3(cfg)? } else { fig5(cfg)? };
            p.write(&out)?;
            let _ = writeln!(summary, "{} rows", p.len());
            count_nonconvergent(p.statuses())
        }
        Command::Focus | Command::Bw => {
            let (p, r) = if cmd == Command::Focus { focus(cfg)? } else { bw(cfg)? };
            p.write(&out)?;
            let _ = writeln!(summary, "{} rows", p.len());
            report = Some(r);
            count_nonconvergent(p.statuses())
        }
        Command::Heatmap => {
            let (m, r) = heatmap(cfg)?;
            m.write(&out)?;
            let _ = writeln!(summary, "{} x {} grid", m.z_wl.len(), m.x_wl.len());
            report = Some(r);
            count_nonconvergent(m.status.iter().flatten().copied())
        }
    };
    if let Some(r) = report {
        summarize_report(&mut summary, &r);
        let path = sidecar_path(&out, "report.csv");
        r.write(&path)?;
        files.push(path);
    }
    let meta = sidecar_path(&out, "meta");
    output::write_text(&meta, &cfg.meta(cmd))?;
    files.push(meta);
    if nonconvergent > 0 {
        let _ = writeln!(summary, "{nonconvergent} rows did not converge");
    }
    Ok(Outcome {
        files,
        summary,
        nonconvergent,
    })
}
