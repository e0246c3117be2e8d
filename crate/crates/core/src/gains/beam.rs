use super::{Distance, FocusSpec};
use crate::error::{Error, Result};
use crate::geometry::ArrayGeometry;
use crate::math::sinc_sq;

/// sinc²(0.443) ≈ 1/2.
pub const SINC_HALF_POWER_ARG: f64 = 0.443;
/// Full half-power width in units of λF / (array side): 2 × 0.443.
pub const BW_COEFFICIENT: f64 = 0.886;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamWidth {
    /// Half-power width in the focal plane, wavelengths.
    pub bw_3db: Distance,
    /// Half-power angular width, radians.
    pub bw_angular: f64,
}

fn angular(geom: &ArrayGeometry) -> f64 {
    // BW/(2F) does not depend on F
    2.0 * (0.5 * BW_COEFFICIENT / geom.array_side()).atan()
}

/// Focal-plane half-power width 0.886·λF/(D√(N/2)) and the angular width
/// 2·atan(BW/2F).
pub fn beam_width(geom: &ArrayGeometry, focus: FocusSpec) -> Result<BeamWidth> {
    let bw_3db = match focus {
        Distance::Infinite => Distance::Infinite,
        Distance::Finite(f) if f > 0.0 => Distance::Finite(BW_COEFFICIENT * f / geom.array_side()),
        Distance::Finite(f) => {
            return Err(Error::domain(format!("focal distance must be positive, got {f}")))
        }
    };
    Ok(BeamWidth {
        bw_3db,
        bw_angular: angular(geom),
    })
}

/// Equivalent form 1.77·F·√λ / √d_FA.
pub fn beam_width_from_dfa(geom: &ArrayGeometry, focus: f64) -> f64 {
    1.77 * focus / geom.fraunhofer_array_distance().sqrt()
}

/// Small-angle angular width BW/F ≈ 0.886·λ/(D√(N/2)).
pub fn bw_angular_small_angle(geom: &ArrayGeometry) -> f64 {
    BW_COEFFICIENT / geom.array_side()
}

/// Fresnel-approximated normalized gain in the focal plane z = F at (x_r, y_r).
pub fn focal_plane_pattern(geom: &ArrayGeometry, focus: f64, x_r: f64, y_r: f64) -> Result<f64> {
    if !(focus > 0.0) {
        return Err(Error::domain(format!("focal distance must be positive, got {focus}")));
    }
    let scale = geom.array_side() / focus;
    Ok(sinc_sq(scale * x_r) * sinc_sq(scale * y_r))
}
