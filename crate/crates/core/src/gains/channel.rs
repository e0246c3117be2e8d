use num_complex::Complex64;

use super::array::{check_distance, element_integrals};
use super::ris::RisConfiguration;
use crate::error::{Error, Result};
use crate::fields::{self, RadioConstants, ReceiverPoint, SourceGeometry};
use crate::geometry::ArrayGeometry;
use crate::math::{Estimate, Integrator, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    /// Per-antenna responses h_{n,m} of a receive array.
    Simo,
    /// Per-element end-to-end responses g_{n,m} through an RIS.
    Ris,
}

/// Dimensionless per-element channel responses, element (n, m) stored at
/// `(n − 1)·√N + (m − 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelVector {
    kind: ChannelKind,
    n_side: usize,
    entries: Vec<Complex64>,
}

impl ChannelVector {
    pub fn new(kind: ChannelKind, n_side: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != n_side * n_side {
            return Err(Error::domain(format!(
                "channel needs {} entries, got {}",
                n_side * n_side,
                entries.len()
            )));
        }
        if entries.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::domain("channel entries must be finite"));
        }
        Ok(Self {
            kind,
            n_side,
            entries,
        })
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn n_side(&self) -> usize {
        self.n_side
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Entry for element (n, m), 1-based.
    pub fn get(&self, n: usize, m: usize) -> Option<Complex64> {
        if n == 0 || m == 0 || n > self.n_side || m > self.n_side {
            return None;
        }
        Some(self.entries[(n - 1) * self.n_side + (m - 1)])
    }
}

/// h_{n,m} = √(2/D²) ∫_{A_nm} E/E₀ for a broadside source at distance `z`.
pub fn channel_simo(geom: &ArrayGeometry, z: f64, spec: &QuadratureSpec) -> Result<Estimate<ChannelVector>> {
    check_distance(z)?;
    let integrator = Integrator::new(spec)?;
    let scale = (1.0 / geom.element_area()).sqrt();
    let est = element_integrals(geom, &integrator, move |x, y| fields::polarized(x, y, z));
    let n_side = geom.n_side();
    Ok(est.map(|v| ChannelVector {
        kind: ChannelKind::Simo,
        n_side,
        entries: v.into_iter().map(|h| h * scale).collect(),
    }))
}

/// g_{n,m} = e^{−iφ_{n,m}} √(2/D²) ∫_{A_nm} E_r/E_i for a receiver at `rcv`.
pub fn channel_ris(
    geom: &ArrayGeometry,
    src: &SourceGeometry,
    cfg: &RisConfiguration,
    rcv: &ReceiverPoint,
    spec: &QuadratureSpec,
) -> Result<Estimate<ChannelVector>> {
    check_distance(rcv.z)?;
    cfg.check_size(geom)?;
    let integrator = Integrator::new(spec)?;
    let scale = (1.0 / geom.element_area()).sqrt();
    let (src, rcv) = (*src, *rcv);
    let est = element_integrals(geom, &integrator, move |x, y| fields::ris_receiver(x, y, &rcv, &src));
    let n_side = geom.n_side();
    Ok(est.map(|v| ChannelVector {
        kind: ChannelKind::Ris,
        n_side,
        entries: v
            .into_iter()
            .zip(cfg.phases())
            .map(|(g, &phi)| g * Complex64::from_polar(scale, -phi))
            .collect(),
    }))
}

/// Maximum SNR: matched filtering for a SIMO channel, (E₀²/ησ²) Σ|h|²;
/// co-phased reflection for an RIS channel, (E_i²/ησ²) (Σ|g|)².
pub fn snr_matched_filter(ch: &ChannelVector, k: &RadioConstants) -> f64 {
    match ch.kind {
        ChannelKind::Simo => {
            k.e0 * k.e0 / (k.eta * k.sigma_sq) * ch.entries.iter().map(|h| h.norm_sqr()).sum::<f64>()
        }
        ChannelKind::Ris => {
            let s: f64 = ch.entries.iter().map(|g| g.norm()).sum();
            k.ei * k.ei / (k.eta * k.sigma_sq) * s * s
        }
    }
}

/// SNR of a SIMO channel combined with arbitrary weights c, |Σ c·h|² / Σ|c|².
pub fn snr_with_combiner(ch: &ChannelVector, weights: &[Complex64], k: &RadioConstants) -> Result<f64> {
    if weights.len() != ch.entries.len() {
        return Err(Error::domain("combiner length does not match channel"));
    }
    let norm: f64 = weights.iter().map(|c| c.norm_sqr()).sum();
    if norm == 0.0 {
        return Ok(0.0);
    }
    let combined: Complex64 = weights.iter().zip(&ch.entries).map(|(c, h)| c * h).sum();
    Ok(k.e0 * k.e0 / (k.eta * k.sigma_sq) * combined.norm_sqr() / norm)
}

/// SNR actually received through an RIS with the configured phases,
/// (E_i²/ησ²) |Σ g|².
pub fn snr_received(ch: &ChannelVector, k: &RadioConstants) -> f64 {
    let s: Complex64 = ch.entries.iter().sum();
    k.ei * k.ei / (k.eta * k.sigma_sq) * s.norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn snr_trivial_cases() {
        let k = RadioConstants::new(2.0, 3.0, 0.5, 4.0).unwrap();
        let zero = ChannelVector::new(ChannelKind::Simo, 2, vec![Complex64::new(0.0, 0.0); 4]).unwrap();
        assert_eq!(snr_matched_filter(&zero, &k), 0.0);
        let h = Complex64::from_polar(0.3, 1.1);
        let simo = ChannelVector::new(ChannelKind::Simo, 3, vec![h; 9]).unwrap();
        assert_abs_diff_eq!(snr_matched_filter(&simo, &k), 9.0 * 0.09 * 4.0 / 2.0, epsilon = 1e-12);
        let ris = ChannelVector::new(
            ChannelKind::Ris,
            3,
            (0..9).map(|i| Complex64::from_polar(0.3, i as f64)).collect(),
        )
        .unwrap();
        assert_abs_diff_eq!(snr_matched_filter(&ris, &k), 81.0 * 0.09 * 9.0 / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn channel_symmetry_and_far_limit() {
        let g = ArrayGeometry::new(4, 0.25).unwrap();
        let spec = QuadratureSpec::default();
        let ch = channel_simo(&g, 1.5, &spec).unwrap().value;
        for n in 1..=4 {
            for m in 1..=4 {
                let a = ch.get(n, m).unwrap();
                let b = ch.get(5 - n, m).unwrap();
                assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-12 * a.norm());
            }
        }
        assert!(ch.get(0, 1).is_none());
        let far = channel_simo(&g, 1e6, &spec).unwrap().value;
        let first = far.entries()[0];
        for e in far.entries() {
            assert!((e - first).norm() <= 1e-3 * first.norm());
        }
    }

    #[test]
    fn single_element_channel_reproduces_antenna_gain() {
        let spec = QuadratureSpec::default();
        let d = 2.0;
        let z = 5.0;
        let g = ArrayGeometry::single(d).unwrap();
        let h = channel_simo(&g, z, &spec).unwrap().value.entries()[0];
        let integrator = Integrator::new(&spec).unwrap();
        let power = super::super::array::power_integral(&integrator, &g.reference_aperture(), |x, y| {
            fields::polarized(x, y, z)
        })
        .value;
        let gain = h.norm_sqr() / power;
        let direct = super::super::gain_antenna_exact(d, z, &spec).unwrap().value;
        assert_abs_diff_eq!(gain, direct, epsilon = 1e-10);
    }

    #[test]
    fn combiner_length_checked() {
        let ch = ChannelVector::new(ChannelKind::Simo, 1, vec![Complex64::new(1.0, 0.0)]).unwrap();
        assert!(snr_with_combiner(&ch, &[], &RadioConstants::default()).is_err());
        assert!(ChannelVector::new(ChannelKind::Simo, 2, vec![Complex64::new(1.0, 0.0)]).is_err());
    }
}
