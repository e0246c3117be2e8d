//! Near-field beamforming gains for single antennas, planar antenna arrays
//! and reconfigurable intelligent surfaces (RIS).
//!
//! All lengths are expressed in wavelengths. Fields are normalized by the
//! source intensity, so the reported gains are dimensionless and lie in
//! [0, 1].

pub mod error;
pub mod experiments;
pub mod fields;
pub mod gains;
pub mod geometry;
pub mod math;

pub use error::{Error, Result};
pub use fields::{RadioConstants, ReceiverPoint, SourceGeometry};
pub use gains::{Distance, FocusSpec};
pub use geometry::{ArrayGeometry, DistanceReport};
pub use math::{Estimate, QuadratureSpec};
