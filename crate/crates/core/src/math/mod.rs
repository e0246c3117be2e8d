//! Special functions and aperture quadrature shared by every gain computation.

mod quadrature;
mod special;

pub(crate) use quadrature::ConvergenceTally;
pub use quadrature::{
    integrate_2d, Convergence, Estimate, GaussLegendre, Integrator, QuadratureSpec, Rectangle,
};
pub use special::{fresnel_c, fresnel_cs, fresnel_s, gain_envelope, sinc, sinc_sq};

/// Field values and integrands are complex amplitudes normalized by the source intensity.
pub type ComplexAmplitude = num_complex::Complex64;
