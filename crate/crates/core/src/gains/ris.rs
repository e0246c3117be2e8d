//! RIS phase configuration and normalized RIS gains.
//!
//! The transmitter is in the far-field of the surface, so it illuminates the
//! RIS with a tilted plane wave; the receiver may be anywhere in front of it.

use num_complex::Complex64;
use std::f64::consts::TAU;

use super::array::{check_distance, element_integrals, power_integral};
use super::beam::beam_width;
use super::{Distance, FocusSpec};
use crate::error::{Error, Result};
use crate::fields::{self, ReceiverPoint, SourceGeometry};
use crate::geometry::ArrayGeometry;
use crate::math::{ConvergenceTally, Estimate, Integrator, QuadratureSpec};

/// Continuous per-element phase shifts φ_{n,m} ∈ [0, 2π), in element order.
#[derive(Debug, Clone, PartialEq)]
pub struct RisConfiguration {
    n_side: usize,
    phases: Vec<f64>,
}

impl RisConfiguration {
    pub fn new(n_side: usize, phases: Vec<f64>) -> Result<Self> {
        if phases.len() != n_side * n_side {
            return Err(Error::domain(format!(
                "configuration needs {} phases, got {}",
                n_side * n_side,
                phases.len()
            )));
        }
        if let Some(p) = phases.iter().find(|p| !(**p >= 0.0 && **p < TAU)) {
            return Err(Error::domain(format!("phase {p} outside [0, 2pi)")));
        }
        Ok(Self { n_side, phases })
    }

    /// Wraps arbitrary real phases into [0, 2π).
    pub fn from_unwrapped(n_side: usize, phases: impl IntoIterator<Item = f64>) -> Result<Self> {
        Self::new(n_side, phases.into_iter().map(wrap_phase).collect())
    }

    pub fn n_side(&self) -> usize {
        self.n_side
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// Phase of element (n, m), 1-based.
    pub fn phase(&self, n: usize, m: usize) -> Option<f64> {
        if n == 0 || m == 0 || n > self.n_side || m > self.n_side {
            return None;
        }
        Some(self.phases[(n - 1) * self.n_side + (m - 1)])
    }

    pub(crate) fn check_size(&self, geom: &ArrayGeometry) -> Result<()> {
        if self.n_side != geom.n_side() {
            return Err(Error::domain(format!(
                "configuration is {}x{} but the surface is {}x{}",
                self.n_side,
                self.n_side,
                geom.n_side(),
                geom.n_side()
            )));
        }
        Ok(())
    }
}

fn wrap_phase(p: f64) -> f64 {
    let w = p.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Phase shifts that co-phase every element toward (0, 0, F).
///
/// For an infinite focus the receive-side field is replaced by a broadside
/// plane wave, leaving only the compensation of the incident tilt.
pub fn ris_optimal_phases(
    geom: &ArrayGeometry,
    src: &SourceGeometry,
    focus: FocusSpec,
    spec: &QuadratureSpec,
) -> Result<Estimate<RisConfiguration>> {
    ris_optimal_phases_with(geom, src, focus, &Integrator::new(spec)?)
}

pub fn ris_optimal_phases_with(
    geom: &ArrayGeometry,
    src: &SourceGeometry,
    focus: FocusSpec,
    integrator: &Integrator,
) -> Result<Estimate<RisConfiguration>> {
    let src = *src;
    let est = match focus {
        Distance::Finite(f) => {
            check_distance(f)?;
            element_integrals(geom, integrator, move |x, y| {
                fields::polarized(x, y, f) * Complex64::from_polar(1.0, fields::incident_phase(x, &src))
            })
        }
        Distance::Infinite => element_integrals(geom, integrator, move |x, _y| {
            Complex64::from_polar(1.0, fields::incident_phase(x, &src))
        }),
    };
    let n_side = geom.n_side();
    let phases: Vec<f64> = est.value.iter().map(|v| wrap_phase(v.arg())).collect();
    Ok(Estimate {
        value: RisConfiguration { n_side, phases },
        convergence: est.convergence,
        nodes_per_dim: est.nodes_per_dim,
    })
}

/// Normalized RIS gain with the receiver at the focal point (0, 0, F) and
/// optimal phases: (Σ|∫_{A_nm} E_t Ẽ|)² / (N² (D²/2) ∫_A |E_t Ẽ|²).
pub fn gain_ris_at_focus(
    geom: &ArrayGeometry,
    src: &SourceGeometry,
    focus: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate<f64>> {
    gain_ris_at_focus_with(geom, src, focus, &Integrator::new(spec)?)
}

pub fn gain_ris_at_focus_with(
    geom: &ArrayGeometry,
    src: &SourceGeometry,
    focus: f64,
    integrator: &Integrator,
) -> Result<Estimate<f64>> {
    check_distance(focus)?;
    let rcv = ReceiverPoint::on_axis(focus)?;
    let src = *src;
    let field = move |x: f64, y: f64| fields::ris_receiver(x, y, &rcv, &src);
    let per_element = element_integrals(geom, integrator, field);
    let reference = power_integral(integrator, &geom.reference_aperture(), field);

    let mut tally = ConvergenceTally::new();
    tally.add(&per_element);
    tally.add(&reference);

    // |∫ E e^{-iφ}| = |∫ E|, and the optimal φ makes every term real positive.
    let coherent: f64 = per_element.value.iter().map(|v| v.norm()).sum();
    Ok(tally.finish(normalize(geom, coherent * coherent, reference.value)))
}

/// Normalized RIS gain seen by a receiver at `rcv` when the surface uses
/// configuration `cfg`: |Σ ∫_{A_nm} E_r e^{−iφ}|² / (N² (D²/2) ∫_A |E_r|²).
pub fn gain_ris_at_receiver(
    geom: &ArrayGeometry,
    src: &SourceGeometry,
    cfg: &RisConfiguration,
    rcv: &ReceiverPoint,
    spec: &QuadratureSpec,
) -> Result<Estimate<f64>> {
    gain_ris_at_receiver_with(geom, src, cfg, rcv, &Integrator::new(spec)?)
}

pub fn gain_ris_at_receiver_with(
    geom: &ArrayGeometry,
    src: &SourceGeometry,
    cfg: &RisConfiguration,
    rcv: &ReceiverPoint,
    integrator: &Integrator,
) -> Result<Estimate<f64>> {
    check_distance(rcv.z)?;
    cfg.check_size(geom)?;
    let (rcv, src) = (*rcv, *src);
    let field = move |x: f64, y: f64| fields::ris_receiver(x, y, &rcv, &src);
    let per_element = element_integrals(geom, integrator, field);
    let reference = power_integral(integrator, &geom.reference_aperture(), field);

    let mut tally = ConvergenceTally::new();
    tally.add(&per_element);
    tally.add(&reference);

    let sum: Complex64 = per_element
        .value
        .iter()
        .zip(cfg.phases())
        .map(|(v, &phi)| v * Complex64::from_polar(1.0, -phi))
        .sum();
    Ok(tally.finish(normalize(geom, sum.norm_sqr(), reference.value)))
}

fn normalize(geom: &ArrayGeometry, numerator: f64, reference_power: f64) -> f64 {
    let n = geom.element_count() as f64;
    (numerator / (n * n * geom.element_area() * reference_power)).clamp(0.0, 1.0)
}

/// Measured half-power width along x_r in the focal plane z_r = F: the
/// distance between the two points where the gain falls to half of its
/// value at x_r = 0. Returns `(x_minus, x_plus)`.
pub fn measure_beam_width(
    geom: &ArrayGeometry,
    src: &SourceGeometry,
    cfg: &RisConfiguration,
    focus: f64,
    integrator: &Integrator,
) -> Result<Estimate<(f64, f64)>> {
    check_distance(focus)?;
    let mut tally = ConvergenceTally::new();
    let mut eval = |x: f64| -> Result<f64> {
        let e = gain_ris_at_receiver_with(geom, src, cfg, &ReceiverPoint::new(x, 0.0, focus)?, integrator)?;
        tally.add(&e);
        Ok(e.value)
    };
    let target = 0.5 * eval(0.0)?;
    let step = beam_width(geom, Distance::Finite(focus))?.bw_3db.as_f64() / 8.0;

    let mut edges = [0.0; 2];
    for (slot, dir) in edges.iter_mut().zip([-1.0, 1.0]) {
        let mut inside = 0.0;
        let mut outside = dir * step;
        let mut steps = 0;
        while eval(outside)? > target {
            inside = outside;
            outside += dir * step;
            steps += 1;
            if steps > 64 {
                return Err(Error::domain("gain never dropped to half power along x_r"));
            }
        }
        for _ in 0..40 {
            let mid = 0.5 * (inside + outside);
            if eval(mid)? > target {
                inside = mid;
            } else {
                outside = mid;
            }
            if (outside - inside).abs() < 1e-5 * step {
                break;
            }
        }
        *slot = 0.5 * (inside + outside);
    }
    Ok(tally.finish((edges[0], edges[1])))
}
