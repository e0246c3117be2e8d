use super::array::{check_distance, gain_array_exact};
use crate::error::Result;
use crate::geometry::ArrayGeometry;
use crate::math::{gain_envelope, Estimate, QuadratureSpec};

/// Normalized gain of a single square antenna of diagonal `d` (wavelengths)
/// receiving from an isotropic source at broadside distance `z`.
pub fn gain_antenna_exact(d: f64, z: f64, spec: &QuadratureSpec) -> Result<Estimate<f64>> {
    gain_array_exact(&ArrayGeometry::single(d)?, z, spec)
}

/// Fresnel-approximated antenna gain, A(d_F / 8z).
pub fn gain_antenna_fresnel(d: f64, z: f64) -> Result<f64> {
    let geom = ArrayGeometry::single(d)?;
    check_distance(z)?;
    Ok(gain_envelope(geom.fraunhofer_distance() / (8.0 * z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn single_antenna_reference_points() {
        let spec = QuadratureSpec::default();
        let d_f = 8.0;
        let at_df = gain_antenna_exact(2.0, d_f, &spec).unwrap();
        assert!(at_df.is_converged());
        assert!(at_df.value >= 0.99);
        let near = gain_antenna_exact(2.0, 0.3 * d_f, &spec).unwrap();
        assert_abs_diff_eq!(near.value, 0.93, epsilon = 0.01);
        let far = gain_antenna_exact(2.0, 1e4 * d_f, &spec).unwrap();
        assert_abs_diff_eq!(far.value, 1.0, epsilon = 1e-4);
    }

    #[test]
    fn fresnel_form() {
        let d_f = 8.0;
        assert_abs_diff_eq!(gain_antenna_fresnel(2.0, 0.1 * d_f).unwrap(), 0.5, epsilon = 0.01);
        assert_abs_diff_eq!(gain_antenna_fresnel(2.0, 1e12).unwrap(), 1.0, epsilon = 1e-9);
        assert_eq!(
            gain_antenna_fresnel(2.0, 3.0).unwrap(),
            gain_envelope(d_f / 24.0)
        );
        assert!(gain_antenna_fresnel(2.0, 0.0).is_err());
    }
}
