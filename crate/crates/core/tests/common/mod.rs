//! Shared test code: reference implementations that avoid the library's
//! numerical kernels, and randomized suites reused by several targets.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

use nearfield::fields::{ReceiverPoint, SourceGeometry};
use nearfield::gains::{
    channel_simo, gain_ris_at_receiver, ris_optimal_phases, snr_matched_filter, snr_with_combiner,
    Distance, RisConfiguration,
};
use nearfield::math::QuadratureSpec;
use nearfield::{ArrayGeometry, RadioConstants};

/// Adaptive Simpson quadrature of a real function on [a, b].
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        if depth == 0 || diff.abs() <= 15.0 * tol {
            left + right + diff / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// C(x), S(x) at sorted sample points, by summing Simpson integrals of
/// cos/sin(πt²/2) between consecutive samples.
pub fn fresnel_oracle(sorted: &[f64]) -> Vec<(f64, f64)> {
    let c = |t: f64| (0.5 * PI * t * t).cos();
    let s = |t: f64| (0.5 * PI * t * t).sin();
    let mut out = Vec::with_capacity(sorted.len());
    let (mut prev, mut acc_c, mut acc_s) = (0.0, 0.0, 0.0);
    for &x in sorted {
        acc_c += adaptive_simpson(&c, prev, x, 1e-14);
        acc_s += adaptive_simpson(&s, prev, x, 1e-14);
        prev = x;
        out.push((acc_c, acc_s));
    }
    out
}

/// Polarized field at (x, y, 0) from a source at (0, 0, z), written out
/// directly: |E|² = z(x²+z²) / (4π d⁵), phase −2πd.
pub fn field(x: f64, y: f64, z: f64) -> Complex64 {
    let d = (x * x + y * y + z * z).sqrt();
    let mag = (z * (x * x + z * z) / (4.0 * PI * d.powi(5))).sqrt();
    Complex64::new(0.0, -2.0 * PI * d).exp() * mag
}

/// Midpoint rule on an m × m grid over the square centered at (cx, cy).
pub fn midpoint<F: Fn(f64, f64) -> Complex64>(f: F, cx: f64, cy: f64, side: f64, m: usize) -> Complex64 {
    let h = side / m as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..m {
        let x = cx - 0.5 * side + (i as f64 + 0.5) * h;
        for j in 0..m {
            let y = cy - 0.5 * side + (j as f64 + 0.5) * h;
            acc += f(x, y);
        }
    }
    acc * h * h
}

/// Element centers of an n × n grid with spacing `side`, x outermost.
pub fn centers(n: usize, side: f64) -> Vec<(f64, f64)> {
    let c = |k: usize| (k as f64 - (n as f64 - 1.0) / 2.0) * side;
    (0..n).flat_map(|i| (0..n).map(move |j| (c(i), c(j)))).collect()
}

/// Bisection for a sign change of `f` on [lo, hi].
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi.abs() {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Random complex weights scaled to the channel's energy never beat the
/// matched filter.
pub fn matched_filter_violations(draws: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = RadioConstants::default();
    let spec = QuadratureSpec::default();
    let mut violations = 0;
    for _ in 0..draws {
        let g = ArrayGeometry::new(rng.gen_range(1..6), rng.gen_range(0.1..1.5)).unwrap();
        let z = rng.gen_range(0.2..50.0);
        let ch = channel_simo(&g, z, &spec).unwrap().value;
        let energy: f64 = ch.entries().iter().map(|h| h.norm_sqr()).sum();
        let mut c: Vec<Complex64> = ch
            .entries()
            .iter()
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let cn: f64 = c.iter().map(|v| v.norm_sqr()).sum();
        for v in &mut c {
            *v *= (energy / cn).sqrt();
        }
        if snr_with_combiner(&ch, &c, &k).unwrap() > snr_matched_filter(&ch, &k) * (1.0 + 1e-12) {
            violations += 1;
        }
    }
    violations
}

/// Nudging one phase of the optimal configuration by ±0.1 or ±0.5 rad never
/// raises the gain at the focal point.
pub fn phase_perturbation_violations(draws: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = QuadratureSpec::default();
    let mut violations = 0;
    for _ in 0..draws {
        let n_side = rng.gen_range(1..5);
        let g = ArrayGeometry::new(n_side, rng.gen_range(0.1..1.0)).unwrap();
        let src = SourceGeometry::new(1e4, rng.gen_range(-1.2..1.2)).unwrap();
        let f = rng.gen_range(0.5..40.0);
        let rcv = ReceiverPoint::on_axis(f).unwrap();
        let cfg = ris_optimal_phases(&g, &src, Distance::Finite(f), &spec).unwrap().value;
        let base = gain_ris_at_receiver(&g, &src, &cfg, &rcv, &spec).unwrap().value;
        let idx = rng.gen_range(0..n_side * n_side);
        let delta = [0.1, -0.1, 0.5, -0.5][rng.gen_range(0..4)];
        let mut phases = cfg.phases().to_vec();
        phases[idx] = (phases[idx] + delta).rem_euclid(TAU);
        let nudged = RisConfiguration::from_unwrapped(n_side, phases).unwrap();
        let moved = gain_ris_at_receiver(&g, &src, &nudged, &rcv, &spec).unwrap().value;
        if moved > base + 1e-12 {
            violations += 1;
        }
    }
    violations
}
