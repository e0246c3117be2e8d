//! Fresnel-approximated gain of a focused array and the resulting depth of
//! focus.

use super::beam::beam_width;
use super::{Distance, FocusSpec};
use crate::error::{Error, Result};
use crate::geometry::ArrayGeometry;
use crate::math::gain_envelope;

/// The half-power point of the envelope is taken at x = 1.25, which puts the
/// depth-of-focus endpoints at d_FA·F / (d_FA ± 10·F).
pub const DF_COEFFICIENT: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocusEvaluation {
    pub focus: FocusSpec,
    pub z: f64,
    /// Effective distance F·z/|F − z| (z itself for infinite focus).
    pub z_eff: Distance,
    pub gain: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocusReport {
    pub focus: FocusSpec,
    pub df_min: f64,
    pub df_max: Distance,
    pub bd_3db: Distance,
    pub bw_3db: Distance,
    pub bw_angular: f64,
}

/// Gain at broadside distance `z` of an array whose (continuous) matched
/// filter is tuned for distance `focus`.
pub fn gain_focused_fresnel(geom: &ArrayGeometry, focus: FocusSpec, z: f64) -> Result<FocusEvaluation> {
    if !(z > 0.0) {
        return Err(Error::domain(format!("distance must be positive, got {z}")));
    }
    let z_eff = match focus {
        Distance::Infinite if z.is_infinite() => Distance::Infinite,
        Distance::Infinite => Distance::Finite(z),
        Distance::Finite(f) => {
            if f == z {
                Distance::Infinite
            } else if z.is_infinite() {
                Distance::Finite(f)
            } else {
                Distance::Finite(f * z / (f - z).abs())
            }
        }
    };
    let gain = match z_eff {
        Distance::Infinite => 1.0,
        Distance::Finite(ze) => gain_envelope(geom.fraunhofer_array_distance() / (8.0 * ze)),
    };
    Ok(FocusEvaluation {
        focus,
        z,
        z_eff,
        gain,
    })
}

/// Depth-of-focus interval, beam depth and focal-plane beam width.
pub fn depth_of_focus(geom: &ArrayGeometry, focus: FocusSpec) -> Result<FocusReport> {
    let d_fa = geom.fraunhofer_array_distance();
    let bw = beam_width(geom, focus)?;
    let (df_min, df_max, bd) = match focus {
        Distance::Infinite => (d_fa / DF_COEFFICIENT, Distance::Infinite, Distance::Infinite),
        Distance::Finite(f) => {
            if !(f > 0.0) {
                return Err(Error::domain(format!("focal distance must be positive, got {f}")));
            }
            let lower = d_fa * f / (d_fa + DF_COEFFICIENT * f);
            if DF_COEFFICIENT * f < d_fa {
                let upper = d_fa * f / (d_fa - DF_COEFFICIENT * f);
                let depth = 2.0 * DF_COEFFICIENT * d_fa * f * f
                    / (d_fa * d_fa - DF_COEFFICIENT * DF_COEFFICIENT * f * f);
                (lower, Distance::Finite(upper), Distance::Finite(depth))
            } else {
                (lower, Distance::Infinite, Distance::Infinite)
            }
        }
    };
    Ok(FocusReport {
        focus,
        df_min,
        df_max,
        bd_3db: bd,
        bw_3db: bw.bw_3db,
        bw_angular: bw.bw_angular,
    })
}
