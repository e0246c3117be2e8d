//! Electric-field models. All lengths are in wavelengths (λ = 1) and fields
//! are normalized by the source intensity (E₀ or E_i).
//!
//! The source emits with polarization along y. [`polarized_field`] includes
//! the polarization loss and effective-area variation over a planar receiver;
//! [`scalar_field`] and [`fresnel_approx_field`] are the classic
//! simplifications of it.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::math::ComplexAmplitude;

/// 1/√(4π)
pub(crate) const INV_SQRT_4PI: f64 = 0.282_094_791_773_878_14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioConstants {
    /// Source intensity for receive-array scenarios, in volt.
    pub e0: f64,
    /// Source intensity for RIS scenarios, in volt.
    pub ei: f64,
    /// Free-space impedance in ohm.
    pub eta: f64,
    pub sigma_sq: f64,
}

impl Default for RadioConstants {
    fn default() -> Self {
        Self {
            e0: 1.0,
            ei: 1.0,
            eta: 1.0,
            sigma_sq: 1.0,
        }
    }
}

impl RadioConstants {
    pub fn new(e0: f64, ei: f64, eta: f64, sigma_sq: f64) -> Result<Self> {
        for (name, v) in [("E0", e0), ("Ei", ei), ("eta", eta), ("sigma^2", sigma_sq)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self {
            e0,
            ei,
            eta,
            sigma_sq,
        })
    }
}

/// Far-field transmitter seen by an RIS, located at (−ρ sin θᵢ, 0, ρ cos θᵢ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceGeometry {
    rho: f64,
    theta_i: f64,
    sin_theta: f64,
}

impl SourceGeometry {
    pub fn new(rho: f64, theta_i: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::domain(format!("rho must be positive, got {rho}")));
        }
        if !(theta_i.abs() < PI / 2.0) {
            return Err(Error::domain(format!(
                "incident angle must satisfy |theta_i| < pi/2, got {theta_i}"
            )));
        }
        Ok(Self {
            rho,
            theta_i,
            sin_theta: theta_i.sin(),
        })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn theta_i(&self) -> f64 {
        self.theta_i
    }

    pub fn position(&self) -> (f64, f64, f64) {
        (
            -self.rho * self.theta_i.sin(),
            0.0,
            self.rho * self.theta_i.cos(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ReceiverPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(z > 0.0) || !x.is_finite() || !y.is_finite() || !z.is_finite() {
            return Err(Error::domain(format!(
                "receiver must satisfy z > 0, got ({x}, {y}, {z})"
            )));
        }
        Ok(Self { x, y, z })
    }

    pub fn on_axis(z: f64) -> Result<Self> {
        Self::new(0.0, 0.0, z)
    }
}

fn check_z(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("distance must be positive, got {z}")))
    }
}

/// Distances below one wavelength are in the reactive near-field, where the
/// neglected 1/z² and 1/z³ terms start to matter.
pub fn is_reactive(z: f64) -> bool {
    z < 1.0
}

/// Squared magnitude of the point-source correction factor,
/// 1 − 1/(2πz)² + 1/(2πz)⁴.
pub fn pointsource_factor_sq(z: f64) -> Result<f64> {
    check_z(z)?;
    let u = 1.0 / (TAU * z);
    let u2 = u * u;
    Ok(1.0 - u2 + u2 * u2)
}

/// Field at (x, y, 0) from a y-polarized isotropic source at (0, 0, z).
pub fn polarized_field(x: f64, y: f64, z: f64) -> Result<ComplexAmplitude> {
    check_z(z)?;
    Ok(polarized(x, y, z))
}

/// Scalar spherical wave E₀/(√(4π) d) e^{−i2πd}.
pub fn scalar_field(x: f64, y: f64, z: f64) -> Result<ComplexAmplitude> {
    check_z(z)?;
    Ok(scalar(x, y, z))
}

/// Fresnel (paraxial) approximation with constant amplitude 1/(√(4π) z).
pub fn fresnel_approx_field(x: f64, y: f64, z: f64) -> Result<ComplexAmplitude> {
    check_z(z)?;
    let phase = -TAU * (z + (x * x + y * y) / (2.0 * z));
    Ok(Complex64::from_polar(INV_SQRT_4PI / z, phase))
}

/// Incident plane wave over the RIS surface, normalized by E_i.
pub fn ris_incident_field(x: f64, _y: f64, src: &SourceGeometry) -> ComplexAmplitude {
    Complex64::from_polar(INV_SQRT_4PI / src.rho, incident_phase(x, src))
}

/// End-to-end field through the RIS surface point (x, y) toward `rcv`,
/// normalized by E_i.
pub fn ris_receiver_field(
    x: f64,
    y: f64,
    rcv: &ReceiverPoint,
    src: &SourceGeometry,
) -> Result<ComplexAmplitude> {
    check_z(rcv.z)?;
    Ok(ris_receiver(x, y, rcv, src))
}

#[inline]
pub(crate) fn incident_phase(x: f64, src: &SourceGeometry) -> f64 {
    -TAU * (src.rho + src.sin_theta * x)
}

#[inline]
pub(crate) fn polarized_amplitude(x: f64, y: f64, z: f64) -> (f64, f64) {
    let xz2 = x * x + z * z;
    let d2 = xz2 + y * y;
    let d = d2.sqrt();
    // d2^{5/4} = d2 · d^{1/2}
    let amp = INV_SQRT_4PI * (z * xz2).sqrt() / (d2 * d.sqrt());
    (amp, d)
}

#[inline]
pub(crate) fn polarized(x: f64, y: f64, z: f64) -> Complex64 {
    let (amp, d) = polarized_amplitude(x, y, z);
    Complex64::from_polar(amp, -TAU * d)
}

#[inline]
pub(crate) fn scalar(x: f64, y: f64, z: f64) -> Complex64 {
    let d = (x * x + y * y + z * z).sqrt();
    Complex64::from_polar(INV_SQRT_4PI / d, -TAU * d)
}

#[inline]
pub(crate) fn ris_receiver(x: f64, y: f64, rcv: &ReceiverPoint, src: &SourceGeometry) -> Complex64 {
    let (amp, d) = polarized_amplitude(x - rcv.x, y - rcv.y, rcv.z);
    Complex64::from_polar(
        amp * INV_SQRT_4PI / src.rho,
        -TAU * d + incident_phase(x, src),
    )
}
