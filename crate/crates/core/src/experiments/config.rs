//! Scenario configuration: INI-style files, per-command defaults and
//! `section.key=value` overrides, resolved into a [`ScenarioConfig`].

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use ini::Ini;

use super::Command;
use crate::error::{Error, Result};
use crate::fields::SourceGeometry;
use crate::gains::{Distance, FocusSpec};
use crate::geometry::ArrayGeometry;
use crate::math::QuadratureSpec;

/// Every accepted key, as `section.key`.
const KEYS: &[&str] = &[
    "array.wavelength_m",
    "array.element_diagonal",
    "array.n_side",
    "source.rho",
    "source.theta_i",
    "focus.points",
    "focus.mode",
    "grid.z_min",
    "grid.z_max",
    "grid.z_points",
    "grid.z_spacing",
    "grid.x_min",
    "grid.x_max",
    "grid.x_points",
    "quadrature.nodes_per_dim",
    "quadrature.refinement_limit",
    "quadrature.rel_tol",
    "quadrature.ris_nodes",
    "quadrature.spot_check_nodes",
    "quadrature.spot_checks",
    "quadrature.spot_check_tol",
    "output.path",
];

const COMMON_DEFAULTS: &[(&str, &str)] = &[
    ("array.wavelength_m", "0.01"),
    ("array.element_diagonal", "0.25"),
    ("array.n_side", "100"),
    ("source.rho", "1e4"),
    ("source.theta_i", "pi/6"),
    ("focus.points", "inf"),
    ("focus.mode", "simo"),
    ("grid.z_min", "1*dF"),
    ("grid.z_max", "10*dFA"),
    ("grid.z_points", "200"),
    ("grid.z_spacing", "log"),
    ("grid.x_min", "-150*dF"),
    ("grid.x_max", "150*dF"),
    ("grid.x_points", "201"),
    ("quadrature.nodes_per_dim", "16"),
    ("quadrature.refinement_limit", "4"),
    ("quadrature.rel_tol", "1e-6"),
    ("quadrature.ris_nodes", "4"),
    ("quadrature.spot_check_nodes", "16"),
    ("quadrature.spot_checks", "10"),
    ("quadrature.spot_check_tol", "1e-3"),
];

fn command_defaults(cmd: Command) -> &'static [(&'static str, &'static str)] {
    match cmd {
        Command::Distances => &[("output.path", "distances.csv")],
        Command::Fig3 => &[
            ("array.element_diagonal", "2"),
            ("array.n_side", "1"),
            ("grid.z_min", "0.1*dF"),
            ("grid.z_max", "10*dF"),
            ("output.path", "fig3.csv"),
        ],
        Command::Fig5 => &[
            ("array.n_side", "25"),
            ("grid.z_min", "1*dF"),
            ("grid.z_max", "10*dFA"),
            ("quadrature.nodes_per_dim", "4"),
            ("quadrature.refinement_limit", "5"),
            ("output.path", "fig5.csv"),
        ],
        Command::Focus => &[
            ("focus.points", "dB, dFA/10, inf"),
            ("grid.z_min", "10*dF"),
            ("grid.z_max", "10*dFA"),
            ("output.path", "focus.csv"),
        ],
        Command::Bw => &[
            ("focus.points", "400*dF, 1000*dF, 2000*dF"),
            ("focus.mode", "ris"),
            ("output.path", "bw.csv"),
        ],
        Command::Heatmap => &[
            ("focus.points", "400*dF"),
            ("focus.mode", "ris"),
            ("grid.z_min", "100*dF"),
            ("grid.z_max", "1e4*dF"),
            ("grid.z_points", "200"),
            ("grid.x_min", "-200*dF"),
            ("grid.x_max", "200*dF"),
            ("grid.x_points", "200"),
            ("output.path", "heatmap.csv"),
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Receive array with matched filtering.
    Simo,
    /// Reconfigurable surface illuminated by a far-field source.
    Ris,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min_wl: f64,
    pub max_wl: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min_wl + t * (self.max_wl - self.min_wl),
                    Spacing::Log => self.min_wl * (self.max_wl / self.min_wl).powf(t),
                }
            })
            .collect()
    }
}

/// Fixed-rule settings for the large RIS sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepQuadrature {
    pub ris_nodes: usize,
    pub spot_check_nodes: usize,
    pub spot_checks: usize,
    /// Largest accepted |g_ris_nodes − g_spot_check_nodes| on a normalized gain.
    pub spot_check_tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// Only used for reporting absolute lengths.
    pub wavelength_m: f64,
    pub geometry: ArrayGeometry,
    pub source: SourceGeometry,
    pub mode: Mode,
    pub foci: Vec<FocusSpec>,
    pub z_grid: Grid,
    pub x_grid: Grid,
    pub quadrature: QuadratureSpec,
    pub sweep: SweepQuadrature,
    pub output_path: PathBuf,
    raw: BTreeMap<String, String>,
}

impl ScenarioConfig {
    /// Defaults for `cmd`, then the file at `path` (if any), then overrides.
    pub fn load(cmd: Command, path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let text = match path {
            Some(p) => Some(std::fs::read_to_string(p).map_err(|e| {
                Error::config(format!("cannot read {}: {e}", p.display()))
            })?),
            None => None,
        };
        Self::from_parts(cmd, text.as_deref(), overrides)
    }

    pub fn from_parts(cmd: Command, file: Option<&str>, overrides: &[String]) -> Result<Self> {
        let mut raw: BTreeMap<String, String> = BTreeMap::new();
        for (k, v) in COMMON_DEFAULTS.iter().chain(command_defaults(cmd)) {
            raw.insert(k.to_string(), v.to_string());
        }
        if let Some(text) = file {
            let ini = Ini::load_from_str_noescape(text)
                .map_err(|e| Error::config(format!("malformed config file: {e}")))?;
            for (section, props) in ini.iter() {
                let Some(section) = section else {
                    if props.iter().next().is_some() {
                        return Err(Error::config("keys must belong to a [section]"));
                    }
                    continue;
                };
                for (k, v) in props.iter() {
                    insert_key(&mut raw, &format!("{}.{}", section.trim(), k.trim()), v)?;
                }
            }
        }
        for o in overrides {
            let (k, v) = o
                .split_once('=')
                .ok_or_else(|| Error::config(format!("override '{o}' is not key=value")))?;
            insert_key(&mut raw, k.trim(), v)?;
        }
        Self::resolve(raw)
    }

    fn resolve(raw: BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| raw[k].as_str();
        let wavelength_m = parse_positive(get("array.wavelength_m"), "array.wavelength_m")?;
        let element_diagonal = parse_positive(get("array.element_diagonal"), "array.element_diagonal")?;
        let n_side = parse_count(get("array.n_side"), "array.n_side", 1)?;
        let geometry = ArrayGeometry::new(n_side, element_diagonal).map_err(as_config)?;
        let units = Units::new(&geometry);

        let rho = units.length(get("source.rho"), "source.rho")?;
        let theta_i = parse_angle(get("source.theta_i"))?;
        let source = SourceGeometry::new(rho.as_f64(), theta_i).map_err(as_config)?;

        let mode = match get("focus.mode").trim() {
            "simo" => Mode::Simo,
            "ris" => Mode::Ris,
            other => return Err(Error::config(format!("focus.mode must be simo or ris, got '{other}'"))),
        };
        let foci = get("focus.points")
            .split(',')
            .map(|s| units.length(s, "focus.points"))
            .collect::<Result<Vec<_>>>()?;

        let z_spacing = match get("grid.z_spacing").trim() {
            "log" => Spacing::Log,
            "linear" => Spacing::Linear,
            other => {
                return Err(Error::config(format!("grid.z_spacing must be log or linear, got '{other}'")))
            }
        };
        let z_grid = Grid {
            min_wl: units.finite(get("grid.z_min"), "grid.z_min")?,
            max_wl: units.finite(get("grid.z_max"), "grid.z_max")?,
            points: parse_count(get("grid.z_points"), "grid.z_points", 2)?,
            spacing: z_spacing,
        };
        if !(z_grid.min_wl > 0.0 && z_grid.min_wl < z_grid.max_wl) {
            return Err(Error::config(format!(
                "z grid must satisfy 0 < z_min < z_max, got [{}, {}]",
                z_grid.min_wl, z_grid.max_wl
            )));
        }
        let x_grid = Grid {
            min_wl: units.signed(get("grid.x_min"), "grid.x_min")?,
            max_wl: units.signed(get("grid.x_max"), "grid.x_max")?,
            points: parse_count(get("grid.x_points"), "grid.x_points", 2)?,
            spacing: Spacing::Linear,
        };
        if !(x_grid.min_wl < x_grid.max_wl) {
            return Err(Error::config(format!(
                "x grid must satisfy x_min < x_max, got [{}, {}]",
                x_grid.min_wl, x_grid.max_wl
            )));
        }

        let quadrature = QuadratureSpec::new(
            parse_count(get("quadrature.nodes_per_dim"), "quadrature.nodes_per_dim", 2)?,
            parse_count(get("quadrature.refinement_limit"), "quadrature.refinement_limit", 1)?,
            parse_positive(get("quadrature.rel_tol"), "quadrature.rel_tol")?,
        )
        .map_err(as_config)?;
        let sweep = SweepQuadrature {
            ris_nodes: parse_count(get("quadrature.ris_nodes"), "quadrature.ris_nodes", 1)?,
            spot_check_nodes: parse_count(get("quadrature.spot_check_nodes"), "quadrature.spot_check_nodes", 1)?,
            spot_checks: parse_count(get("quadrature.spot_checks"), "quadrature.spot_checks", 0)?,
            spot_check_tol: parse_positive(get("quadrature.spot_check_tol"), "quadrature.spot_check_tol")?,
        };

        let output_path = match raw.get("output.path").map(|s| s.trim()) {
            Some(p) if !p.is_empty() => PathBuf::from(p),
            _ => return Err(Error::config("output.path is empty")),
        };

        Ok(Self {
            wavelength_m,
            geometry,
            source,
            mode,
            foci,
            z_grid,
            x_grid,
            quadrature,
            sweep,
            output_path,
            raw,
        })
    }

    pub fn with_output(mut self, path: impl Into<PathBuf>) -> Self {
        self.output_path = path.into();
        self.raw
            .insert("output.path".into(), self.output_path.display().to_string());
        self
    }

    /// Sidecar text: the merged key-value pairs followed by resolved values.
    pub fn meta(&self, cmd: Command) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command = {}", cmd.name());
        let mut section = "";
        for (k, v) in &self.raw {
            let (s, key) = k.split_once('.').unwrap_or(("", k));
            if s != section {
                let _ = writeln!(out, "\n[{s}]");
                section = s;
            }
            let _ = writeln!(out, "{key} = {}", v.trim());
        }
        let d = self.geometry.characteristic_distances();
        let _ = writeln!(out, "\n[resolved]");
        let _ = writeln!(out, "d_F_wl = {:.8e}", d.d_f);
        let _ = writeln!(out, "d_FA_wl = {:.8e}", d.d_fa);
        let _ = writeln!(out, "d_B_wl = {:.8e}", d.d_b);
        let foci: Vec<String> = self.foci.iter().map(|f| format_length(f.as_f64())).collect();
        let _ = writeln!(out, "foci_wl = {}", foci.join(", "));
        let _ = writeln!(out, "z_wl = [{:.8e}, {:.8e}] x {}", self.z_grid.min_wl, self.z_grid.max_wl, self.z_grid.points);
        let _ = writeln!(out, "x_wl = [{:.8e}, {:.8e}] x {}", self.x_grid.min_wl, self.x_grid.max_wl, self.x_grid.points);
        let _ = writeln!(out, "theta_i_rad = {:.8e}", self.source.theta_i());
        out
    }
}

fn format_length(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v:.8e}")
    }
}

fn insert_key(raw: &mut BTreeMap<String, String>, key: &str, value: &str) -> Result<()> {
    if !KEYS.contains(&key) {
        return Err(Error::config(format!("unknown key '{key}'")));
    }
    raw.insert(key.to_string(), value.trim().to_string());
    Ok(())
}

fn as_config(e: Error) -> Error {
    match e {
        Error::Domain(msg) => Error::Config(msg),
        other => other,
    }
}

fn parse_number(s: &str, key: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::config(format!("{key}: '{}' is not a number", s.trim())))
}

fn parse_positive(s: &str, key: &str) -> Result<f64> {
    let v = parse_number(s, key)?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::config(format!("{key} must be positive, got {v}")))
    }
}

fn parse_count(s: &str, key: &str, min: usize) -> Result<usize> {
    let v: usize = s
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("{key}: '{}' is not a non-negative integer", s.trim())))?;
    if v < min {
        return Err(Error::config(format!("{key} must be at least {min}, got {v}")));
    }
    Ok(v)
}

/// Radians, either a number or `[c*]pi[/k]`.
fn parse_angle(s: &str) -> Result<f64> {
    let t = s.trim();
    let Some(pos) = t.find("pi") else {
        return parse_number(t, "source.theta_i");
    };
    let (pre, post) = (&t[..pos], &t[pos + 2..]);
    let coef = match pre.trim() {
        "" => 1.0,
        "-" => -1.0,
        p => parse_number(p.trim_end_matches('*'), "source.theta_i")?,
    };
    let div = match post.trim() {
        "" => 1.0,
        p => match p.strip_prefix('/') {
            Some(d) => parse_positive(d, "source.theta_i")?,
            None => return Err(Error::config(format!("source.theta_i: cannot parse '{t}'"))),
        },
    };
    Ok(coef * PI / div)
}

/// Length expressions: `inf`, a plain number of wavelengths, or
/// `[c*]unit[/k]` with unit one of `wl`, `dF`, `dFA`, `dB`.
#[derive(Debug, Clone, Copy)]
pub struct Units {
    d_f: f64,
    d_fa: f64,
    d_b: f64,
}

impl Units {
    pub fn new(geom: &ArrayGeometry) -> Self {
        Self {
            d_f: geom.fraunhofer_distance(),
            d_fa: geom.fraunhofer_array_distance(),
            d_b: geom.diagonal_distance(),
        }
    }

    fn eval(&self, s: &str, key: &str) -> Result<f64> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") {
            return Ok(f64::INFINITY);
        }
        let (body, div) = match t.rsplit_once('/') {
            Some((b, d)) => (b.trim(), parse_positive(d, key)?),
            None => (t, 1.0),
        };
        let (coef, unit) = match body.rsplit_once('*') {
            Some((c, u)) => (parse_number(c, key)?, u.trim()),
            None => match body.trim_start_matches('-') {
                u @ ("wl" | "dF" | "dFA" | "dB") => (if body.starts_with('-') { -1.0 } else { 1.0 }, u),
                _ => (parse_number(body, key)?, "wl"),
            },
        };
        let scale = match unit {
            "wl" => 1.0,
            "dF" => self.d_f,
            "dFA" => self.d_fa,
            "dB" => self.d_b,
            other => return Err(Error::config(format!("{key}: unknown unit '{other}'"))),
        };
        let v = coef * scale / div;
        if v.is_nan() {
            return Err(Error::config(format!("{key}: '{t}' is not a length")));
        }
        Ok(v)
    }

    /// A positive length, possibly infinite.
    pub fn length(&self, s: &str, key: &str) -> Result<Distance> {
        let v = self.eval(s, key)?;
        Distance::from_f64(v).map_err(|_| Error::config(format!("{key} must be positive, got '{}'", s.trim())))
    }

    /// A positive finite length.
    pub fn finite(&self, s: &str, key: &str) -> Result<f64> {
        match self.length(s, key)? {
            Distance::Finite(v) => Ok(v),
            Distance::Infinite => Err(Error::config(format!("{key} must be finite"))),
        }
    }

    /// A finite coordinate of any sign.
    pub fn signed(&self, s: &str, key: &str) -> Result<f64> {
        let v = self.eval(s, key)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::config(format!("{key} must be finite")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn length_expressions() {
        let g = ArrayGeometry::new(100, 0.25).unwrap();
        let u = Units::new(&g);
        let d_f = 0.125;
        assert_abs_diff_eq!(u.finite("400*dF", "k").unwrap(), 400.0 * d_f, epsilon = 1e-12);
        assert_abs_diff_eq!(u.finite("dFA/10", "k").unwrap(), 1000.0 * d_f, epsilon = 1e-9);
        assert_abs_diff_eq!(u.finite("dB", "k").unwrap(), 50.0, epsilon = 1e-12);
        assert_abs_diff_eq!(u.finite(" 12.5 ", "k").unwrap(), 12.5, epsilon = 0.0);
        assert_abs_diff_eq!(u.signed("-150*dF", "k").unwrap(), -150.0 * d_f, epsilon = 1e-12);
        assert_abs_diff_eq!(u.signed("-dF", "k").unwrap(), -d_f, epsilon = 0.0);
        assert!(u.length("inf", "k").unwrap().is_infinite());
        assert!(u.finite("inf", "k").is_err());
        assert!(u.finite("3*parsec", "k").is_err());
        assert!(u.finite("-2", "k").is_err());
    }

    #[test]
    fn angles() {
        assert_abs_diff_eq!(parse_angle("pi/6").unwrap(), PI / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(parse_angle("-pi/4").unwrap(), -PI / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(parse_angle("0.25*pi").unwrap(), PI / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(parse_angle("0.3").unwrap(), 0.3, epsilon = 0.0);
        assert!(parse_angle("pi*2").is_err());
    }

    #[test]
    fn file_then_override() {
        let file = "[array]\nn_side = 10\n\n[grid]\nz_points = 7\n";
        let c = ScenarioConfig::from_parts(Command::Fig5, Some(file), &["grid.z_points=9".into()]).unwrap();
        assert_eq!(c.geometry.n_side(), 10);
        assert_eq!(c.z_grid.points, 9);
        assert_eq!(c.quadrature.nodes_per_dim, 4);
        let z = c.z_grid.values();
        assert_abs_diff_eq!(z[0], 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(z[8], 10.0 * 100.0 * 0.125, epsilon = 1e-9);
    }

    #[test]
    fn bad_configs_rejected() {
        let bad = [
            "[array]\nn_sides = 3\n",
            "[grid]\nz_min = 10*dFA\n",
            "[grid]\nz_points = 1\n",
            "[source]\ntheta_i = 2.0\n",
            "[focus]\nmode = miso\n",
            "orphan = 1\n",
            "[quadrature]\nrel_tol = 0\n",
        ];
        for text in bad {
            let e = ScenarioConfig::from_parts(Command::Focus, Some(text), &[]).unwrap_err();
            assert!(matches!(e, Error::Config(_)), "{text}: {e:?}");
        }
        assert!(ScenarioConfig::from_parts(Command::Focus, None, &["nokey".into()]).is_err());
    }

    #[test]
    fn meta_is_stable() {
        let a = ScenarioConfig::from_parts(Command::Heatmap, None, &[]).unwrap();
        let b = ScenarioConfig::from_parts(Command::Heatmap, None, &[]).unwrap();
        assert_eq!(a.meta(Command::Heatmap), b.meta(Command::Heatmap));
        assert!(a.meta(Command::Heatmap).contains("[quadrature]\nnodes_per_dim = 16"));
    }
}
