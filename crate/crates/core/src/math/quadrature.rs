//! Tensor-product Gauss–Legendre quadrature over rectangles.
//!
//! An [`Integrator`] holds a ladder of rules whose node count doubles from
//! level to level. Integration stops at the first level whose estimate agrees
//! with the previous one to the requested tolerance, measured against ∫|f|.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub nodes_per_dim: usize,
    /// Maximum number of node doublings.
    pub refinement_limit: usize,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            nodes_per_dim: 16,
            refinement_limit: 4,
            rel_tol: 1e-6,
        }
    }
}

impl QuadratureSpec {
    pub fn new(nodes_per_dim: usize, refinement_limit: usize, rel_tol: f64) -> Result<Self> {
        let spec = Self {
            nodes_per_dim,
            refinement_limit,
            rel_tol,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_dim < 2 {
            return Err(Error::domain(format!(
                "nodes_per_dim must be >= 2, got {}",
                self.nodes_per_dim
            )));
        }
        if self.refinement_limit == 0 {
            return Err(Error::domain("refinement_limit must be positive"));
        }
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::domain(format!(
                "rel_tol must be a positive finite number, got {}",
                self.rel_tol
            )));
        }
        // 2^refinement_limit must stay reasonable
        if self.nodes_per_dim.checked_shl(self.refinement_limit as u32).map_or(true, |n| n > 4096) {
            return Err(Error::domain("nodes_per_dim * 2^refinement_limit exceeds 4096"));
        }
        Ok(())
    }
}

/// Axis-aligned rectangle, lengths in wavelengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rectangle {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !finite || !(x_min < x_max) || !(y_min < y_max) {
            return Err(Error::domain(format!(
                "invalid rectangle [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// Square of half-side `half` centered at `(cx, cy)`.
    pub fn square(cx: f64, cy: f64, half: f64) -> Result<Self> {
        Self::new(cx - half, cx + half, cy - half, cy + half)
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> (f64, f64) {
        (
            0.5 * (self.x_min + self.x_max),
            0.5 * (self.y_min + self.y_max),
        )
    }

    /// Area of the intersection with `other` (0 when they only share edges).
    pub fn overlap_area(&self, other: &Rectangle) -> f64 {
        let w = self.x_max.min(other.x_max) - self.x_min.max(other.x_min);
        let h = self.y_max.min(other.y_max) - self.y_min.max(other.y_min);
        if w > 0.0 && h > 0.0 {
            w * h
        } else {
            0.0
        }
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, p_prev) = legendre_pair(n, x);
                dp = nf * (x * p - p_prev) / (x * x - 1.0);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Returns `(∫f, ∫|f|)` over `rect`.
    pub fn integrate<F>(&self, f: &F, rect: &Rectangle) -> (Complex64, f64)
    where
        F: Fn(f64, f64) -> Complex64 + ?Sized,
    {
        let (cx, cy) = rect.center();
        let hx = 0.5 * rect.width();
        let hy = 0.5 * rect.height();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut abs_sum = 0.0;
        for (&u, &wu) in self.nodes.iter().zip(&self.weights) {
            let x = cx + hx * u;
            let mut row = Complex64::new(0.0, 0.0);
            let mut abs_row = 0.0;
            for (&v, &wv) in self.nodes.iter().zip(&self.weights) {
                let val = f(x, cy + hy * v);
                row += val * wv;
                abs_row += val.norm() * wv;
            }
            sum += row * wu;
            abs_sum += abs_row * wu;
        }
        let jac = hx * hy;
        (sum * jac, abs_sum * jac)
    }
}

// (P_n(x), P_{n-1}(x)) by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Convergence {
    Converged,
    NonConvergent { rel_change: f64 },
    /// Fixed rule; no refinement was attempted.
    Unchecked,
}

impl Convergence {
    /// Worst of two statuses: NonConvergent > Unchecked > Converged.
    pub fn merge(self, other: Convergence) -> Convergence {
        use Convergence::*;
        match (self, other) {
            (NonConvergent { rel_change: a }, NonConvergent { rel_change: b }) => {
                NonConvergent { rel_change: a.max(b) }
            }
            (n @ NonConvergent { .. }, _) | (_, n @ NonConvergent { .. }) => n,
            (Unchecked, _) | (_, Unchecked) => Unchecked,
            _ => Converged,
        }
    }
}

/// A numerical result together with how the quadrature behind it converged.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub convergence: Convergence,
    /// Largest node count per dimension that was used.
    pub nodes_per_dim: usize,
}

impl<T> Estimate<T> {
    pub fn is_converged(&self) -> bool {
        self.convergence == Convergence::Converged
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Estimate<U> {
        Estimate {
            value: f(self.value),
            convergence: self.convergence,
            nodes_per_dim: self.nodes_per_dim,
        }
    }

    /// Strict view: a non-convergent estimate becomes an error.
    pub fn into_result(self) -> Result<T> {
        match self.convergence {
            Convergence::NonConvergent { rel_change } => Err(Error::NonConvergent {
                rel_change,
                nodes_per_dim: self.nodes_per_dim,
            }),
            _ => Ok(self.value),
        }
    }
}

/// Accumulates convergence information over many integrals.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ConvergenceTally {
    pub convergence: Convergence,
    pub nodes_per_dim: usize,
}

impl ConvergenceTally {
    pub fn new() -> Self {
        Self {
            convergence: Convergence::Converged,
            nodes_per_dim: 0,
        }
    }

    pub fn add<T>(&mut self, e: &Estimate<T>) {
        self.convergence = self.convergence.merge(e.convergence);
        self.nodes_per_dim = self.nodes_per_dim.max(e.nodes_per_dim);
    }

    pub fn finish<T>(self, value: T) -> Estimate<T> {
        Estimate {
            value,
            convergence: self.convergence,
            nodes_per_dim: self.nodes_per_dim,
        }
    }
}

/// Reusable integrator: rules are built once and shared across rectangles.
#[derive(Debug, Clone)]
pub struct Integrator {
    rules: Vec<GaussLegendre>,
    rel_tol: f64,
    adaptive: bool,
}

impl Integrator {
    /// Doubling ladder `n, 2n, …, n·2^refinement_limit`.
    pub fn new(spec: &QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        let rules = (0..=spec.refinement_limit)
            .map(|k| GaussLegendre::new(spec.nodes_per_dim << k))
            .collect();
        Ok(Self {
            rules,
            rel_tol: spec.rel_tol,
            adaptive: true,
        })
    }

    /// Single fixed rule; estimates are reported as [`Convergence::Unchecked`].
    pub fn fixed(nodes_per_dim: usize) -> Self {
        Self {
            rules: vec![GaussLegendre::new(nodes_per_dim.max(1))],
            rel_tol: f64::INFINITY,
            adaptive: false,
        }
    }

    pub fn base_nodes(&self) -> usize {
        self.rules[0].len()
    }

    pub fn is_adaptive(&self) -> bool {
        self.adaptive
    }

    pub fn integrate<F>(&self, f: &F, rect: &Rectangle) -> Estimate<Complex64>
    where
        F: Fn(f64, f64) -> Complex64 + ?Sized,
    {
        let (mut prev, _) = self.rules[0].integrate(f, rect);
        if !self.adaptive {
            return Estimate {
                value: prev,
                convergence: Convergence::Unchecked,
                nodes_per_dim: self.rules[0].len(),
            };
        }
        let mut rel_change = f64::INFINITY;
        for rule in &self.rules[1..] {
            let (cur, scale) = rule.integrate(f, rect);
            let diff = (cur - prev).norm();
            rel_change = if scale > 0.0 { diff / scale } else { 0.0 };
            prev = cur;
            if rel_change <= self.rel_tol {
                return Estimate {
                    value: cur,
                    convergence: Convergence::Converged,
                    nodes_per_dim: rule.len(),
                };
            }
        }
        Estimate {
            value: prev,
            convergence: Convergence::NonConvergent { rel_change },
            nodes_per_dim: self.rules.last().map_or(0, GaussLegendre::len),
        }
    }
}

/// Integrates `f` over `region`, doubling the node count until two successive
/// estimates agree to `spec.rel_tol` (relative to ∫|f|) or the refinement
/// limit is reached. Non-convergence is reported in the returned estimate.
pub fn integrate_2d<F>(f: F, region: &Rectangle, spec: &QuadratureSpec) -> Result<Estimate<Complex64>>
where
    F: Fn(f64, f64) -> Complex64,
{
    Ok(Integrator::new(spec)?.integrate(&f, region))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rules_integrate_polynomials_exactly() {
        for n in [1usize, 2, 3, 5, 16, 64, 255] {
            let rule = GaussLegendre::new(n);
            let wsum: f64 = rule.weights().iter().sum();
            assert_abs_diff_eq!(wsum, 2.0, epsilon = 1e-13);
            // ∫ x^{2n-2} over [-1,1]
            let deg = (2 * n - 2) as i32;
            let exact = 2.0 / (deg as f64 + 1.0);
            let got: f64 = rule
                .nodes()
                .iter()
                .zip(rule.weights())
                .map(|(x, w)| w * x.powi(deg))
                .sum();
            assert_abs_diff_eq!(got, exact, epsilon = 1e-12);
        }
    }

    #[test]
    fn unit_area() {
        let r = Rectangle::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let e = integrate_2d(|_, _| Complex64::new(1.0, 0.0), &r, &QuadratureSpec::default()).unwrap();
        assert!(e.is_converged());
        assert_abs_diff_eq!(e.value.re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.value.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn full_period_oscillation_vanishes() {
        let r = Rectangle::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let f = |x: f64, _y: f64| Complex64::from_polar(1.0, -2.0 * PI * x);
        let e = integrate_2d(f, &r, &QuadratureSpec::default()).unwrap();
        assert!(e.is_converged());
        assert!(e.value.norm() < 1e-12);
    }

    #[test]
    fn nonconvergence_is_flagged_not_fatal() {
        let r = Rectangle::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let spec = QuadratureSpec::new(2, 1, 1e-12).unwrap();
        let f = |x: f64, y: f64| Complex64::from_polar(1.0, 300.0 * x * y);
        let e = integrate_2d(f, &r, &spec).unwrap();
        assert!(matches!(e.convergence, Convergence::NonConvergent { .. }));
        assert!(e.value.re.is_finite());
        assert!(matches!(e.into_result(), Err(Error::NonConvergent { .. })));
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(QuadratureSpec::new(1, 3, 1e-6).is_err());
        assert!(QuadratureSpec::new(8, 0, 1e-6).is_err());
        assert!(QuadratureSpec::new(8, 3, 0.0).is_err());
        assert!(QuadratureSpec::new(16, 12, 1e-6).is_err());
        assert!(Rectangle::new(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(Rectangle::new(0.0, 1.0, 0.0, f64::NAN).is_err());
    }

    #[test]
    fn fixed_rule_is_unchecked() {
        let r = Rectangle::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        let e = Integrator::fixed(4).integrate(&|x: f64, y: f64| Complex64::new(x * x + y, 0.0), &r);
        assert_eq!(e.convergence, Convergence::Unchecked);
        assert_abs_diff_eq!(e.value.re, 4.0 / 3.0, epsilon = 1e-13);
    }

    #[test]
    fn convergence_merge_order() {
        use Convergence::*;
        assert_eq!(Converged.merge(Unchecked), Unchecked);
        assert_eq!(
            Unchecked.merge(NonConvergent { rel_change: 0.1 }),
            NonConvergent { rel_change: 0.1 }
        );
        assert_eq!(Converged.merge(Converged), Converged);
    }
}
