//! Normalized beamforming gains for a single antenna, a receive array and an
//! RIS, plus the closed-form depth-of-focus and beam-width laws.
//!
//! Every normalized gain lies in [0, 1]: 1 is what an ideal co-phased
//! aperture illuminated by a perpendicular plane wave would collect.

mod antenna;
mod array;
mod beam;
mod channel;
mod focus;
mod ris;

pub use antenna::{gain_antenna_exact, gain_antenna_fresnel};
pub use array::{
    aperture_power_closed_form, gain_array_bound, gain_array_exact, gain_array_exact_with,
    FieldModel,
};
pub use beam::{
    beam_width, beam_width_from_dfa, bw_angular_small_angle, focal_plane_pattern, BeamWidth,
    BW_COEFFICIENT, SINC_HALF_POWER_ARG,
};
pub use channel::{
    channel_ris, channel_simo, snr_matched_filter, snr_received, snr_with_combiner, ChannelKind,
    ChannelVector,
};
pub use focus::{depth_of_focus, gain_focused_fresnel, FocusEvaluation, FocusReport, DF_COEFFICIENT};
pub use ris::{
    gain_ris_at_focus, gain_ris_at_focus_with, gain_ris_at_receiver, gain_ris_at_receiver_with,
    measure_beam_width, ris_optimal_phases, ris_optimal_phases_with, RisConfiguration,
};

use crate::error::{Error, Result};

/// A length in wavelengths that may be unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distance {
    Finite(f64),
    Infinite,
}

/// Focal distance of a beamformer; `Infinite` is conventional far-field
/// (angular) beamforming.
pub type FocusSpec = Distance;

impl Distance {
    pub fn finite(v: f64) -> Result<Self> {
        if v > 0.0 && v.is_finite() {
            Ok(Distance::Finite(v))
        } else {
            Err(Error::domain(format!("distance must be positive and finite, got {v}")))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Distance::Infinite)
    }

    /// The value as an `f64`, with `Infinite` mapped to `f64::INFINITY`.
    pub fn as_f64(&self) -> f64 {
        match *self {
            Distance::Finite(v) => v,
            Distance::Infinite => f64::INFINITY,
        }
    }

    pub fn from_f64(v: f64) -> Result<Self> {
        if v == f64::INFINITY {
            Ok(Distance::Infinite)
        } else {
            Self::finite(v)
        }
    }
}
