use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields;
use crate::geometry::ArrayGeometry;
use crate::math::{ConvergenceTally, Estimate, Integrator, QuadratureSpec, Rectangle};

/// Which field model feeds the aperture integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldModel {
    /// Polarized spherical wave including polarization loss.
    Polarized,
    /// Scalar spherical wave, no polarization or effective-area variation.
    Scalar,
}

impl FieldModel {
    #[inline]
    pub(crate) fn eval(self, x: f64, y: f64, z: f64) -> Complex64 {
        match self {
            FieldModel::Polarized => fields::polarized(x, y, z),
            FieldModel::Scalar => fields::scalar(x, y, z),
        }
    }
}

pub(crate) fn check_distance(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("distance must be positive, got {z}")))
    }
}

/// ∫ f over every element aperture, in element order.
pub(crate) fn element_integrals<F>(
    geom: &ArrayGeometry,
    integrator: &Integrator,
    f: F,
) -> Estimate<Vec<Complex64>>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let estimates: Vec<Estimate<Complex64>> = geom
        .element_apertures()
        .par_iter()
        .map(|rect| integrator.integrate(&f, rect))
        .collect();
    let mut tally = ConvergenceTally::new();
    for e in &estimates {
        tally.add(e);
    }
    tally.finish(estimates.into_iter().map(|e| e.value).collect())
}

/// ∫ |f|² over `rect`.
pub(crate) fn power_integral<F>(integrator: &Integrator, rect: &Rectangle, f: F) -> Estimate<f64>
where
    F: Fn(f64, f64) -> Complex64,
{
    integrator
        .integrate(&|x, y| Complex64::new(f(x, y).norm_sqr(), 0.0), rect)
        .map(|v| v.re)
}

/// Normalized array gain Σ|∫_{A_nm} E|² / (N (D²/2) ∫_A |E|²) for a source
/// on the broadside axis at distance `z`. With one element this is the
/// normalized antenna gain.
pub fn gain_array_exact(geom: &ArrayGeometry, z: f64, spec: &QuadratureSpec) -> Result<Estimate<f64>> {
    let integrator = Integrator::new(spec)?;
    gain_array_exact_with(geom, z, FieldModel::Polarized, &integrator)
}

pub fn gain_array_exact_with(
    geom: &ArrayGeometry,
    z: f64,
    model: FieldModel,
    integrator: &Integrator,
) -> Result<Estimate<f64>> {
    check_distance(z)?;
    let field = move |x: f64, y: f64| model.eval(x, y, z);
    let per_element = element_integrals(geom, integrator, field);
    let reference = power_integral(integrator, &geom.reference_aperture(), field);

    let mut tally = ConvergenceTally::new();
    tally.add(&per_element);
    tally.add(&reference);

    let numerator: f64 = per_element.value.iter().map(|v| v.norm_sqr()).sum();
    let denominator = geom.element_count() as f64 * geom.element_area() * reference.value;
    Ok(tally.finish(numerator / denominator))
}

/// Closed-form value of 4π ∫∫_{|x|,|y|≤a} |E|² dx dy for the polarized
/// field at distance z, as a function of β = a²/z².
pub fn aperture_power_closed_form(beta: f64) -> f64 {
    let root = (2.0 * beta + 1.0).sqrt();
    8.0 / 3.0 * (beta / (2.0 * (beta + 1.0) * root) + (beta / root).atan())
}

/// Cauchy–Schwarz upper bound on [`gain_array_exact`]: the power collected
/// by the whole array over N times that of a reference element.
pub fn gain_array_bound(geom: &ArrayGeometry, z: f64) -> Result<f64> {
    check_distance(z)?;
    let n = geom.element_count() as f64;
    let d = geom.element_diagonal();
    let alpha = d * d / (8.0 * z * z);
    let bound = aperture_power_closed_form(n * alpha) / (n * aperture_power_closed_form(alpha));
    Ok(bound.min(1.0))
}
