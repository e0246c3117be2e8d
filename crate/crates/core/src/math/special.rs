//! Fresnel integrals, sinc and the focused-gain envelope.
//!
//! The Fresnel integrals use the normalization
//!
//! C(x) = ∫₀ˣ cos(πt²/2) dt,  S(x) = ∫₀ˣ sin(πt²/2) dt
//!
//! and are evaluated with a Maclaurin series for |x| ≤ 1.6 and with a
//! continued fraction for the complementary error function beyond that.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Border between the series and the continued-fraction regime.
const SERIES_LIMIT: f64 = 1.6;
/// Beyond this argument |C(x) − 1/2| and |S(x) − 1/2| are below 1e-10.
const SATURATION: f64 = 1e10;
const MAX_TERMS: usize = 200;
const MAX_CF_ITER: usize = 500;

/// Returns `(C(x), S(x))`.
pub fn fresnel_cs(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    let ax = x.abs();
    let (c, s) = if ax == 0.0 {
        (0.0, 0.0)
    } else if ax <= SERIES_LIMIT {
        series(ax)
    } else if ax < SATURATION {
        continued_fraction(ax)
    } else {
        (0.5, 0.5)
    };
    if x < 0.0 {
        (-c, -s)
    } else {
        (c, s)
    }
}

pub fn fresnel_c(x: f64) -> f64 {
    fresnel_cs(x).0
}

pub fn fresnel_s(x: f64) -> f64 {
    fresnel_cs(x).1
}

// C(x) = Σ (-1)^k (π/2)^{2k} x^{4k+1} / ((2k)! (4k+1))
// S(x) = Σ (-1)^k (π/2)^{2k+1} x^{4k+3} / ((2k+1)! (4k+3))
// Both sums share the running term t_j = (π x²/2)^j x / j!.
fn series(x: f64) -> (f64, f64) {
    let arg = FRAC_PI_2 * x * x;
    let mut term = x;
    let mut c = 0.0;
    let mut s = 0.0;
    for j in 0..MAX_TERMS {
        let denom = (2 * j + 1) as f64;
        let contrib = term / denom;
        match j % 4 {
            0 => c += contrib,
            1 => s += contrib,
            2 => c -= contrib,
            _ => s -= contrib,
        }
        if contrib.abs() < 1e-17 * c.abs().max(s.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        term *= arg / (j + 1) as f64;
    }
    (c, s)
}

// C + iS = (1+i)/2 · [1 − e^{iπx²/2} · w] where w comes from the continued
// fraction of erfc((1−i)√π x / 2), evaluated with the modified Lentz method.
fn continued_fraction(x: f64) -> (f64, f64) {
    let pix2 = PI * x * x;
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, -pix2);
    let mut cc = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut n = -1.0_f64;
    for _ in 1..MAX_CF_ITER {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += 4.0;
        d = (d * a + b).inv();
        cc = b + cc.inv() * a;
        let del = cc * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
            break;
        }
    }
    h *= Complex64::new(x, -x);
    let (sin_half, cos_half) = (0.5 * pix2).sin_cos();
    let cs = Complex64::new(0.5, 0.5) * (Complex64::new(1.0, 0.0) - Complex64::new(cos_half, sin_half) * h);
    (cs.re, cs.im)
}

/// sinc(x) = sin(πx)/(πx), with sinc(0) = 1.
pub fn sinc(x: f64) -> f64 {
    let px = PI * x;
    if x.abs() < 1e-4 {
        let p2 = px * px;
        1.0 - p2 / 6.0 + p2 * p2 / 120.0
    } else {
        px.sin() / px
    }
}

pub fn sinc_sq(x: f64) -> f64 {
    let v = sinc(x);
    v * v
}

/// Focused-gain envelope A(x) = (C²(√x) + S²(√x))² / x², with A(0) = 1.
///
/// A(d_FA / (8 z_eff)) is the Fresnel-approximated gain of a focused aperture
/// observed at effective distance z_eff.
pub fn gain_envelope(x: f64) -> f64 {
    assert!(x >= 0.0, "gain_envelope requires x >= 0, got {x}");
    if x == 0.0 {
        return 1.0;
    }
    let (c, s) = fresnel_cs(x.sqrt());
    let r = (c * c + s * s) / x;
    (r * r).min(1.0)
}
