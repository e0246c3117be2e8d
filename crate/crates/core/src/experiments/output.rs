//! CSV tables written by the commands. Numbers carry nine significant digits
//! and are stored already rounded, so reading a file back reproduces the
//! in-memory table exactly.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Rounds to the nine significant digits used in every emitted file.
pub fn quantize(v: f64) -> f64 {
    if v.is_finite() {
        format!("{v:.8e}").parse().unwrap_or(v)
    } else {
        v
    }
}

pub fn format_value(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.8e}")
    }
}

fn parse_value(s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::config(format!("'{s}' is not a number")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    /// The point lies in the reactive near-field (z < λ).
    Reactive,
    NonConvergent,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Reactive => "reactive",
            Status::NonConvergent => "nonconvergent",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ok" => Ok(Status::Ok),
            "reactive" => Ok(Status::Reactive),
            "nonconvergent" => Ok(Status::NonConvergent),
            other => Err(Error::config(format!("unknown status '{other}'"))),
        }
    }
}

fn writer_to_string(header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

fn read_records(text: &str) -> Result<(Vec<String>, Vec<csv::StringRecord>)> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = r.headers()?.iter().map(str::to_string).collect();
    let rows = r.records().collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((header, rows))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

/// Numeric table with one status per row (the last column on disk).
#[derive(Debug, Clone, PartialEq)]
pub struct GainProfile {
    columns: Vec<String>,
    rows: Vec<(Vec<f64>, Status)>,
}

impl GainProfile {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, values: &[f64], status: Status) {
        assert_eq!(values.len(), self.columns.len(), "row width mismatch");
        self.rows
            .push((values.iter().copied().map(quantize).collect(), status));
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&[f64], Status)> {
        self.rows.iter().map(|(v, s)| (v.as_slice(), *s))
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|(v, _)| v[i]).collect())
    }

    pub fn statuses(&self) -> Vec<Status> {
        self.rows.iter().map(|(_, s)| *s).collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut header = self.columns.clone();
        header.push("status".into());
        writer_to_string(
            &header,
            self.rows.iter().map(|(v, s)| {
                v.iter()
                    .map(|x| format_value(*x))
                    .chain(std::iter::once(s.to_string()))
                    .collect()
            }),
        )
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let (mut header, records) = read_records(text)?;
        if header.pop().as_deref() != Some("status") {
            return Err(Error::config("last column must be 'status'"));
        }
        let mut p = Self::new(header);
        for rec in records {
            let n = p.columns.len();
            if rec.len() != n + 1 {
                return Err(Error::config("row width does not match header"));
            }
            let values = rec.iter().take(n).map(parse_value).collect::<Result<Vec<_>>>()?;
            p.rows.push((values, rec[n].parse()?));
        }
        Ok(p)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_csv()?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_csv(&std::fs::read_to_string(path)?)
    }
}

/// Numeric table without a status column (reports and summaries).
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Report {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, values: &[f64]) {
        assert_eq!(values.len(), self.columns.len(), "row width mismatch");
        self.rows.push(values.iter().copied().map(quantize).collect());
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|v| v[i]).collect())
    }

    pub fn to_csv(&self) -> Result<String> {
        writer_to_string(
            &self.columns,
            self.rows.iter().map(|v| v.iter().map(|x| format_value(*x)).collect()),
        )
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let (header, records) = read_records(text)?;
        let mut r = Self::new(header);
        for rec in records {
            if rec.len() != r.columns.len() {
                return Err(Error::config("row width does not match header"));
            }
            r.rows.push(rec.iter().map(parse_value).collect::<Result<Vec<_>>>()?);
        }
        Ok(r)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_csv()?)
    }
}

/// Gains over an (x_r, z_r) grid, one row per z value. Written in long
/// format with z outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatMap {
    pub z_over_df: Vec<f64>,
    pub z_wl: Vec<f64>,
    pub x_over_df: Vec<f64>,
    pub x_wl: Vec<f64>,
    pub gains: Vec<Vec<f64>>,
    pub status: Vec<Vec<Status>>,
}

const HEATMAP_HEADER: [&str; 6] = ["z_over_dF", "z_wl", "x_over_dF", "x_wl", "gain_ris", "status"];

impl HeatMap {
    /// Builds the map from grids in wavelengths and row-major gains.
    pub fn new(d_f: f64, z_wl: &[f64], x_wl: &[f64], gains: Vec<Vec<f64>>, status: Vec<Vec<Status>>) -> Self {
        assert_eq!(gains.len(), z_wl.len());
        assert!(gains.iter().all(|r| r.len() == x_wl.len()));
        assert_eq!(status.len(), z_wl.len());
        let q = |v: &[f64], s: f64| v.iter().map(|x| quantize(x / s)).collect::<Vec<_>>();
        Self {
            z_over_df: q(z_wl, d_f),
            z_wl: q(z_wl, 1.0),
            x_over_df: q(x_wl, d_f),
            x_wl: q(x_wl, 1.0),
            gains: gains.into_iter().map(|r| q(&r, 1.0)).collect(),
            status,
        }
    }

    /// (z index, x index, gain) of the largest entry; ties keep the first.
    pub fn argmax(&self) -> (usize, usize, f64) {
        let mut best = (0, 0, f64::NEG_INFINITY);
        for (i, row) in self.gains.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                if g > best.2 {
                    best = (i, j, g);
                }
            }
        }
        best
    }

    pub fn to_csv(&self) -> Result<String> {
        let header: Vec<String> = HEATMAP_HEADER.iter().map(|s| s.to_string()).collect();
        let rows = (0..self.z_wl.len()).flat_map(|i| {
            (0..self.x_wl.len()).map(move |j| {
                vec![
                    format_value(self.z_over_df[i]),
                    format_value(self.z_wl[i]),
                    format_value(self.x_over_df[j]),
                    format_value(self.x_wl[j]),
                    format_value(self.gains[i][j]),
                    self.status[i][j].to_string(),
                ]
            })
        });
        writer_to_string(&header, rows)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let (header, records) = read_records(text)?;
        if header != HEATMAP_HEADER {
            return Err(Error::config("unexpected heat-map header"));
        }
        let mut map = HeatMap {
            z_over_df: Vec::new(),
            z_wl: Vec::new(),
            x_over_df: Vec::new(),
            x_wl: Vec::new(),
            gains: Vec::new(),
            status: Vec::new(),
        };
        for rec in &records {
            let v = rec.iter().take(5).map(parse_value).collect::<Result<Vec<_>>>()?;
            if map.z_wl.last() != Some(&v[1]) {
                map.z_over_df.push(v[0]);
                map.z_wl.push(v[1]);
                map.gains.push(Vec::new());
                map.status.push(Vec::new());
            }
            if map.z_wl.len() == 1 {
                map.x_over_df.push(v[2]);
                map.x_wl.push(v[3]);
            }
            map.gains.last_mut().expect("row started").push(v[4]);
            map.status.last_mut().expect("row started").push(rec[5].parse()?);
        }
        if map.gains.iter().any(|r| r.len() != map.x_wl.len()) {
            return Err(Error::config("heat-map rows have different lengths"));
        }
        Ok(map)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_text(path, &self.to_csv()?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_csv(&std::fs::read_to_string(path)?)
    }
}
