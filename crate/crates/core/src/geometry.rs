//! Square array / RIS layout and the characteristic distances derived from it.

use std::f64::consts::{SQRT_2, TAU};

use crate::error::{Error, Result};
use crate::math::Rectangle;

/// √N × √N square elements of diagonal D deployed edge-to-edge in the
/// xy-plane and centered at the origin. Lengths are in wavelengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    n_side: usize,
    element_diagonal: f64,
}

impl ArrayGeometry {
    pub fn new(n_side: usize, element_diagonal: f64) -> Result<Self> {
        if n_side == 0 {
            return Err(Error::domain("n_side must be at least 1"));
        }
        if !(element_diagonal > 0.0 && element_diagonal.is_finite()) {
            return Err(Error::domain(format!(
                "element diagonal must be positive, got {element_diagonal}"
            )));
        }
        Ok(Self {
            n_side,
            element_diagonal,
        })
    }

    /// Builds the geometry from the total element count, which must be a
    /// perfect square.
    pub fn from_element_count(n: usize, element_diagonal: f64) -> Result<Self> {
        let side = (n as f64).sqrt().round() as usize;
        if side * side != n {
            return Err(Error::domain(format!("element count {n} is not a perfect square")));
        }
        Self::new(side, element_diagonal)
    }

    /// A single antenna of diagonal D.
    pub fn single(element_diagonal: f64) -> Result<Self> {
        Self::new(1, element_diagonal)
    }

    pub fn n_side(&self) -> usize {
        self.n_side
    }

    pub fn element_count(&self) -> usize {
        self.n_side * self.n_side
    }

    pub fn element_diagonal(&self) -> f64 {
        self.element_diagonal
    }

    /// D/√2, also the center-to-center spacing.
    pub fn element_side(&self) -> f64 {
        self.element_diagonal / SQRT_2
    }

    pub fn element_area(&self) -> f64 {
        0.5 * self.element_diagonal * self.element_diagonal
    }

    /// D√(N/2)
    pub fn array_side(&self) -> f64 {
        self.element_side() * self.n_side as f64
    }

    /// D√N
    pub fn array_diagonal(&self) -> f64 {
        self.element_diagonal * self.n_side as f64
    }

    /// Center coordinate of row/column `k` (1-based) along one axis.
    pub fn center_coordinate(&self, k: usize) -> f64 {
        (k as f64 - (self.n_side as f64 + 1.0) / 2.0) * self.element_side()
    }

    /// Element centers, row index n (x) outermost, column index m (y) innermost.
    pub fn element_centers(&self) -> Vec<(f64, f64)> {
        let axis: Vec<f64> = (1..=self.n_side).map(|k| self.center_coordinate(k)).collect();
        axis.iter()
            .flat_map(|&x| axis.iter().map(move |&y| (x, y)))
            .collect()
    }

    /// Aperture of element (n, m), both 1-based.
    pub fn element_aperture(&self, n: usize, m: usize) -> Result<Rectangle> {
        if n == 0 || m == 0 || n > self.n_side || m > self.n_side {
            return Err(Error::Index {
                n,
                m,
                n_side: self.n_side,
            });
        }
        Rectangle::square(
            self.center_coordinate(n),
            self.center_coordinate(m),
            0.5 * self.element_side(),
        )
    }

    /// All apertures in the same order as [`element_centers`](Self::element_centers).
    pub fn element_apertures(&self) -> Vec<Rectangle> {
        let half = 0.5 * self.element_side();
        self.element_centers()
            .into_iter()
            .map(|(x, y)| Rectangle {
                x_min: x - half,
                x_max: x + half,
                y_min: y - half,
                y_max: y + half,
            })
            .collect()
    }

    /// Aperture of a single reference element placed at the origin.
    pub fn reference_aperture(&self) -> Rectangle {
        let half = 0.5 * self.element_side();
        Rectangle {
            x_min: -half,
            x_max: half,
            y_min: -half,
            y_max: half,
        }
    }

    /// The whole array surface.
    pub fn array_aperture(&self) -> Rectangle {
        let half = 0.5 * self.array_side();
        Rectangle {
            x_min: -half,
            x_max: half,
            y_min: -half,
            y_max: half,
        }
    }

    pub fn characteristic_distances(&self) -> DistanceReport {
        DistanceReport::new(self)
    }

    pub fn fraunhofer_distance(&self) -> f64 {
        2.0 * self.element_diagonal * self.element_diagonal
    }

    pub fn fraunhofer_array_distance(&self) -> f64 {
        self.fraunhofer_distance() * self.element_count() as f64
    }

    pub fn diagonal_distance(&self) -> f64 {
        2.0 * self.array_diagonal()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceReport {
    /// Fraunhofer distance of one element, 2D²/λ.
    pub d_f: f64,
    /// Fraunhofer array distance, N·d_F.
    pub d_fa: f64,
    /// Twice the array diagonal, 2D√N.
    pub d_b: f64,
    /// Lower end of the single-element Fresnel region, 1.2D.
    pub fresnel_lower: f64,
    /// End of the reactive near-field of one element, 0.62√(D³/λ).
    pub reactive_boundary: f64,
    /// Whether a single element has a Fresnel region at all (d_F ≥ 1.2D).
    pub fresnel_region_exists: bool,
}

impl DistanceReport {
    fn new(geom: &ArrayGeometry) -> Self {
        let d = geom.element_diagonal;
        let d_f = geom.fraunhofer_distance();
        Self {
            d_f,
            d_fa: geom.fraunhofer_array_distance(),
            d_b: geom.diagonal_distance(),
            fresnel_lower: 1.2 * d,
            reactive_boundary: 0.62 * (d * d * d).sqrt(),
            fresnel_region_exists: d_f >= 1.2 * d,
        }
    }

    /// Largest focal distance with a finite beam depth.
    pub fn d_fa_over_10(&self) -> f64 {
        self.d_fa / 10.0
    }
}

/// Phase difference between the center and the edge of an aperture of
/// length `d_len` seen from distance `d`, and the amplitude ratio d/d′.
pub fn fraunhofer_phase_budget(d_len: f64, d: f64) -> Result<(f64, f64)> {
    if !(d_len > 0.0) || !(d > 0.0) {
        return Err(Error::domain(format!(
            "aperture length and distance must be positive, got {d_len}, {d}"
        )));
    }
    let edge = (d * d + 0.25 * d_len * d_len).sqrt();
    Ok((TAU * (edge - d), d / edge))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn centers_small_cases() {
        let g = ArrayGeometry::new(1, 0.7).unwrap();
        assert_eq!(g.element_centers(), vec![(0.0, 0.0)]);
        let g = ArrayGeometry::new(2, SQRT_2).unwrap();
        let c = g.element_centers();
        for (x, y) in c {
            assert_abs_diff_eq!(x.abs(), 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(y.abs(), 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn outer_edge_of_625_element_array() {
        let g = ArrayGeometry::new(25, 0.25).unwrap();
        let edge = g.center_coordinate(25) + 0.5 * g.element_side();
        assert_abs_diff_eq!(g.array_side(), 25.0 / (4.0 * 2f64.sqrt()), epsilon = 1e-12);
        assert_abs_diff_eq!(g.array_side(), 4.419_417_382_415_922, epsilon = 1e-12);
        assert_abs_diff_eq!(edge, 0.25 * (625f64 / 8.0).sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(edge, 0.5 * g.array_side(), epsilon = 1e-12);
    }

    #[test]
    fn apertures_index_checked() {
        let g = ArrayGeometry::new(3, 1.0).unwrap();
        assert!(matches!(g.element_aperture(0, 1), Err(Error::Index { .. })));
        assert!(matches!(g.element_aperture(1, 4), Err(Error::Index { .. })));
        let single = ArrayGeometry::single(2.0).unwrap().element_aperture(1, 1).unwrap();
        assert_abs_diff_eq!(single.x_max, 2.0 / 8f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(single.y_min, -2.0 / 8f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn distance_examples() {
        let r = ArrayGeometry::new(25, 0.25).unwrap().characteristic_distances();
        assert_abs_diff_eq!(r.d_f, 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(r.d_fa / r.d_f, 625.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.d_b / r.d_f, 100.0, epsilon = 1e-9);
        let r = ArrayGeometry::new(100, 0.25).unwrap().characteristic_distances();
        assert_abs_diff_eq!(r.d_b / r.d_f, 400.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.d_fa / r.d_f, 1e4, epsilon = 1e-9);
        let r = ArrayGeometry::single(2.0).unwrap().characteristic_distances();
        assert_abs_diff_eq!(r.d_f, 8.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.fresnel_lower / r.d_f, 0.3, epsilon = 1e-15);
        assert!(r.fresnel_region_exists);
        assert!(!ArrayGeometry::single(0.5).unwrap().characteristic_distances().fresnel_region_exists);
    }

    #[test]
    fn non_square_count_rejected() {
        assert!(ArrayGeometry::from_element_count(624, 0.25).is_err());
        assert_eq!(ArrayGeometry::from_element_count(625, 0.25).unwrap().n_side(), 25);
        assert!(ArrayGeometry::new(0, 1.0).is_err());
        assert!(ArrayGeometry::new(4, 0.0).is_err());
    }

    #[test]
    fn phase_budget() {
        let d_len = 2.0;
        let (phase, _) = fraunhofer_phase_budget(d_len, 2.0 * d_len * d_len).unwrap();
        assert!((phase - PI / 8.0).abs() < 0.01 * PI / 8.0);
        let (_, ratio) = fraunhofer_phase_budget(d_len, 1.2 * d_len).unwrap();
        assert_abs_diff_eq!(ratio, 0.92, epsilon = 0.005);
        let (phase, ratio) = fraunhofer_phase_budget(d_len, 1e9).unwrap();
        assert!(phase < 1e-8 && (1.0 - ratio) < 1e-15);
        assert!(fraunhofer_phase_budget(0.0, 1.0).is_err());
    }
}
