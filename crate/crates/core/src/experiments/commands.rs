use std::fmt::Write as _;

use rayon::prelude::*;

use super::config::{Mode, ScenarioConfig};
use super::output::{GainProfile, HeatMap, Report, Status};
use crate::error::{Error, Result};
use crate::fields::{is_reactive, ReceiverPoint};
use crate::gains::{
    beam_width, depth_of_focus, gain_antenna_fresnel, gain_array_bound, gain_array_exact_with,
    gain_focused_fresnel, gain_ris_at_receiver_with, measure_beam_width, ris_optimal_phases_with,
    Distance, FieldModel, FocusSpec, RisConfiguration,
};
use crate::geometry::DistanceReport;
use crate::math::{Convergence, Integrator};

fn status(z: f64, convergence: Convergence) -> Status {
    match convergence {
        Convergence::NonConvergent { .. } => Status::NonConvergent,
        _ if is_reactive(z) => Status::Reactive,
        _ => Status::Ok,
    }
}

fn require_mode(cfg: &ScenarioConfig, mode: Mode, what: &str) -> Result<()> {
    if cfg.mode == mode {
        Ok(())
    } else {
        Err(Error::config(format!("{what} needs focus.mode = {}", match mode {
            Mode::Simo => "simo",
            Mode::Ris => "ris",
        })))
    }
}

/// Evenly spread indices into a grid of `len` points.
pub(crate) fn spot_indices(len: usize, count: usize) -> Vec<usize> {
    match count.min(len) {
        0 => Vec::new(),
        1 => vec![len / 2],
        c => {
            let mut v: Vec<usize> = (0..c)
                .map(|k| ((k * (len - 1)) as f64 / (c - 1) as f64).round() as usize)
                .collect();
            v.dedup();
            v
        }
    }
}

/// Re-evaluates a few sweep points with the finer rule and flags the rows
/// whose normalized gain moved by more than the tolerance.
fn spot_check<F>(cfg: &ScenarioConfig, values: &[f64], statuses: &mut [Status], eval: F) -> Result<()>
where
    F: Fn(usize, &Integrator) -> Result<f64> + Sync,
{
    let fine = Integrator::fixed(cfg.sweep.spot_check_nodes);
    let picks = spot_indices(values.len(), cfg.sweep.spot_checks);
    let checked = picks
        .par_iter()
        .map(|&i| eval(i, &fine).map(|g| (i, g)))
        .collect::<Result<Vec<_>>>()?;
    for (i, g) in checked {
        if (g - values[i]).abs() > cfg.sweep.spot_check_tol {
            statuses[i] = Status::NonConvergent;
        }
    }
    Ok(())
}

fn over_df(v: f64, d_f: f64) -> f64 {
    v / d_f
}

pub fn distances(cfg: &ScenarioConfig) -> (DistanceReport, Report) {
    let d = cfg.geometry.characteristic_distances();
    let quantities = [
        ("d_F", d.d_f),
        ("d_FA", d.d_fa),
        ("d_B", d.d_b),
        ("fresnel_lower", d.fresnel_lower),
        ("reactive_boundary", d.reactive_boundary),
        ("d_FA_over_10", d.d_fa_over_10()),
    ];
    let mut columns = Vec::new();
    let mut row = Vec::new();
    for (name, v) in quantities {
        columns.push(format!("{name}_wl"));
        row.push(v);
        columns.push(format!("{name}_over_dF"));
        row.push(v / d.d_f);
        columns.push(format!("{name}_m"));
        row.push(v * cfg.wavelength_m);
    }
    columns.push("fresnel_region_exists".into());
    row.push(if d.fresnel_region_exists { 1.0 } else { 0.0 });
    let mut report = Report::new(columns);
    report.push(&row);
    (d, report)
}

pub fn distances_text(d: &DistanceReport, wavelength_m: f64) -> String {
    let mut out = String::new();
    let line = |out: &mut String, name: &str, v: f64| {
        let _ = writeln!(out, "{name:<20} {v:>14.6e} wl  {:>12.4} d_F  {:>12.6e} m", v / d.d_f, v * wavelength_m);
    };
    line(&mut out, "d_F", d.d_f);
    line(&mut out, "d_FA", d.d_fa);
    line(&mut out, "d_B", d.d_b);
    line(&mut out, "1.2 D", d.fresnel_lower);
    line(&mut out, "reactive boundary", d.reactive_boundary);
    line(&mut out, "d_FA/10", d.d_fa_over_10());
    let _ = writeln!(out, "{:<20} {}", "fresnel region", if d.fresnel_region_exists { "yes" } else { "no" });
    out
}

/// Exact and Fresnel-approximated gain of a single antenna versus distance.
pub fn fig3(cfg: &ScenarioConfig) -> Result<GainProfile> {
    if cfg.geometry.n_side() != 1 {
        return Err(Error::config("fig3 needs a single antenna (array.n_side = 1)"));
    }
    let g = cfg.geometry;
    let d_f = g.fraunhofer_distance();
    let integrator = Integrator::new(&cfg.quadrature)?;
    let z = cfg.z_grid.values();
    let rows = z
        .par_iter()
        .map(|&z| {
            let exact = gain_array_exact_with(&g, z, FieldModel::Polarized, &integrator)?;
            let approx = gain_antenna_fresnel(g.element_diagonal(), z)?;
            Ok((vec![over_df(z, d_f), z, exact.value, approx], status(z, exact.convergence)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut p = GainProfile::new(["z_over_dF", "z_wl", "gain_exact", "gain_fresnel"]);
    for (v, s) in rows {
        p.push(&v, s);
    }
    Ok(p)
}

/// Exact array gain, its Cauchy–Schwarz bound and the scalar-field variant.
pub fn fig5(cfg: &ScenarioConfig) -> Result<GainProfile> {
    let g = cfg.geometry;
    let d_f = g.fraunhofer_distance();
    let integrator = Integrator::new(&cfg.quadrature)?;
    let z = cfg.z_grid.values();
    let rows = z
        .par_iter()
        .map(|&z| {
            let exact = gain_array_exact_with(&g, z, FieldModel::Polarized, &integrator)?;
            let scalar = gain_array_exact_with(&g, z, FieldModel::Scalar, &integrator)?;
            let bound = gain_array_bound(&g, z)?;
            let conv = exact.convergence.merge(scalar.convergence);
            Ok((
                vec![over_df(z, d_f), z, exact.value, bound, scalar.value],
                status(z, conv),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut p = GainProfile::new(["z_over_dF", "z_wl", "gain_exact", "gain_bound", "gain_scalar"]);
    for (v, s) in rows {
        p.push(&v, s);
    }
    Ok(p)
}

fn focus_report(cfg: &ScenarioConfig, foci: &[FocusSpec]) -> Result<Report> {
    let d_f = cfg.geometry.fraunhofer_distance();
    let mut r = Report::new([
        "focus_over_dF",
        "focus_wl",
        "df_min_over_dF",
        "df_max_over_dF",
        "bd_3db_over_dF",
        "bw_3db_over_dF",
        "bw_angular_rad",
    ]);
    for &f in foci {
        let rep = depth_of_focus(&cfg.geometry, f)?;
        r.push(&[
            f.as_f64() / d_f,
            f.as_f64(),
            rep.df_min / d_f,
            rep.df_max.as_f64() / d_f,
            rep.bd_3db.as_f64() / d_f,
            rep.bw_3db.as_f64() / d_f,
            rep.bw_angular,
        ]);
    }
    Ok(r)
}

fn ris_phases(cfg: &ScenarioConfig, focus: FocusSpec, integrator: &Integrator) -> Result<RisConfiguration> {
    Ok(ris_optimal_phases_with(&cfg.geometry, &cfg.source, focus, integrator)?.value)
}

/// RIS gain at every (x, z) pair in `points`, with spot-checked statuses.
fn ris_sweep(
    cfg: &ScenarioConfig,
    phases: &RisConfiguration,
    points: &[(f64, f64)],
) -> Result<(Vec<f64>, Vec<Status>)> {
    let coarse = Integrator::fixed(cfg.sweep.ris_nodes);
    let eval = |i: usize, integ: &Integrator| -> Result<f64> {
        let (x, z) = points[i];
        let rcv = ReceiverPoint::new(x, 0.0, z)?;
        Ok(gain_ris_at_receiver_with(&cfg.geometry, &cfg.source, phases, &rcv, integ)?.value)
    };
    let values = (0..points.len())
        .into_par_iter()
        .map(|i| eval(i, &coarse))
        .collect::<Result<Vec<_>>>()?;
    let mut statuses: Vec<Status> = points
        .iter()
        .map(|&(_, z)| status(z, Convergence::Unchecked))
        .collect();
    spot_check(cfg, &values, &mut statuses, eval)?;
    Ok((values, statuses))
}

/// Gain along the broadside axis for each focal point, plus the
/// depth-of-focus report.
pub fn focus(cfg: &ScenarioConfig) -> Result<(GainProfile, Report)> {
    let g = cfg.geometry;
    let d_f = g.fraunhofer_distance();
    let z = cfg.z_grid.values();
    let gain_col = match cfg.mode {
        Mode::Simo => "gain_fresnel",
        Mode::Ris => "gain_ris",
    };
    let mut p = GainProfile::new(["focus_over_dF", "z_over_dF", "z_wl", gain_col]);
    for &f in &cfg.foci {
        let (gains, statuses) = match cfg.mode {
            Mode::Simo => {
                let gains = z
                    .iter()
                    .map(|&z| Ok(gain_focused_fresnel(&g, f, z)?.gain))
                    .collect::<Result<Vec<_>>>()?;
                let st = z.iter().map(|&z| status(z, Convergence::Converged)).collect();
                (gains, st)
            }
            Mode::Ris => {
                let phases = ris_phases(cfg, f, &Integrator::fixed(cfg.sweep.ris_nodes))?;
                let points: Vec<(f64, f64)> = z.iter().map(|&z| (0.0, z)).collect();
                ris_sweep(cfg, &phases, &points)?
            }
        };
        for ((&z, gain), s) in z.iter().zip(gains).zip(statuses) {
            p.push(&[f.as_f64() / d_f, z / d_f, z, gain], s);
        }
    }
    Ok((p, focus_report(cfg, &cfg.foci)?))
}

/// Transverse RIS gain in each focal plane and the measured half-power
/// width next to the closed-form prediction.
pub fn bw(cfg: &ScenarioConfig) -> Result<(GainProfile, Report)> {
    require_mode(cfg, Mode::Ris, "bw")?;
    let g = cfg.geometry;
    let d_f = g.fraunhofer_distance();
    let x = cfg.x_grid.values();
    let coarse = Integrator::fixed(cfg.sweep.ris_nodes);
    let mut p = GainProfile::new(["focus_over_dF", "x_over_dF", "x_wl", "gain_ris"]);
    let mut r = Report::new([
        "focus_over_dF",
        "bw_predicted_over_dF",
        "bw_measured_over_dF",
        "x_minus_over_dF",
        "x_plus_over_dF",
        "gain_at_focus",
    ]);
    for &f in &cfg.foci {
        let Distance::Finite(fz) = f else {
            return Err(Error::config("bw needs finite focal points"));
        };
        let phases = ris_phases(cfg, f, &coarse)?;
        let points: Vec<(f64, f64)> = x.iter().map(|&x| (x, fz)).collect();
        let (gains, statuses) = ris_sweep(cfg, &phases, &points)?;
        for ((&x, &gain), s) in x.iter().zip(&gains).zip(statuses) {
            p.push(&[fz / d_f, x / d_f, x, gain], s);
        }
        let (lo, hi) = measure_beam_width(&g, &cfg.source, &phases, fz, &coarse)?.value;
        let at_focus = gain_ris_at_receiver_with(&g, &cfg.source, &phases, &ReceiverPoint::on_axis(fz)?, &coarse)?;
        let predicted = beam_width(&g, f)?.bw_3db.as_f64();
        r.push(&[fz / d_f, predicted / d_f, (hi - lo) / d_f, lo / d_f, hi / d_f, at_focus.value]);
    }
    Ok((p, r))
}

/// RIS gain over the (x_r, z_r) grid for a single focal point. The report
/// holds the depth-of-focus interval, the BW × BD box and the peak.
pub fn heatmap(cfg: &ScenarioConfig) -> Result<(HeatMap, Report)> {
    require_mode(cfg, Mode::Ris, "heatmap")?;
    let [f] = cfg.foci[..] else {
        return Err(Error::config("heatmap needs exactly one focal point"));
    };
    let g = cfg.geometry;
    let d_f = g.fraunhofer_distance();
    let z = cfg.z_grid.values();
    let x = cfg.x_grid.values();
    let phases = ris_phases(cfg, f, &Integrator::fixed(cfg.sweep.ris_nodes))?;
    let points: Vec<(f64, f64)> = z
        .iter()
        .flat_map(|&z| x.iter().map(move |&x| (x, z)))
        .collect();
    let (values, statuses) = ris_sweep(cfg, &phases, &points)?;
    let nx = x.len();
    let gains = values.chunks(nx).map(<[f64]>::to_vec).collect();
    let status = statuses.chunks(nx).map(<[Status]>::to_vec).collect();
    let map = HeatMap::new(d_f, &z, &x, gains, status);

    let dof = depth_of_focus(&g, f)?;
    let half_bw = 0.5 * dof.bw_3db.as_f64();
    let (iz, ix, peak) = map.argmax();
    let mut r = Report::new([
        "focus_over_dF",
        "df_min_over_dF",
        "df_max_over_dF",
        "box_x_min_over_dF",
        "box_x_max_over_dF",
        "box_z_min_over_dF",
        "box_z_max_over_dF",
        "argmax_z_over_dF",
        "argmax_x_over_dF",
        "max_gain",
    ]);
    r.push(&[
        f.as_f64() / d_f,
        dof.df_min / d_f,
        dof.df_max.as_f64() / d_f,
        -half_bw / d_f,
        half_bw / d_f,
        dof.df_min / d_f,
        dof.df_max.as_f64() / d_f,
        map.z_over_df[iz],
        map.x_over_df[ix],
        peak,
    ]);
    Ok((map, r))
}
