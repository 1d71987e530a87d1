//! Phase spaces and their metrics.
//!
//! Every space here is a product of at most two one-dimensional factors,
//! each either a line or a circle of circumference 1. Points are stored as
//! raw `(x, y)` pairs; one-dimensional spaces ignore the `y` slot. All
//! distances use the product (max) metric, so boxes and metric balls agree.

use serde::{Deserialize, Serialize};

/// A point of a one- or two-dimensional phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pt {
    pub x: f64,
    pub y: f64,
}

impl Pt {
    pub const fn new(x: f64, y: f64) -> Self {
        Pt { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<(f64, f64)> for Pt {
    fn from((x, y): (f64, f64)) -> Self {
        Pt { x, y }
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: f64) -> f64 {
    let f = x.rem_euclid(1.0);
    // rem_euclid can return 1.0 when x is a tiny negative number
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// Distance on the circle ℝ/ℤ: `min(|x−y|, 1−|x−y|)`, in `[0, 1/2]`.
pub fn circle_dist(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Signed representative of `x − y` on the circle, in `(-1/2, 1/2]`.
pub fn circle_diff(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(1.0);
    if d > 0.5 {
        d - 1.0
    } else {
        d
    }
}

/// The phase spaces used by the library, together with their covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    /// ℝ/ℤ.
    Circle,
    /// 𝕊¹ × ℝ with the product metric max(circle part, |Δy|).
    Annulus,
    /// (ℝ/ℤ)².
    Torus,
    /// ℝ (the universal cover of the circle).
    Line,
    /// ℝ × ℝ viewed as the universal cover of the annulus.
    Strip,
    /// ℝ².
    Plane,
}

impl Space {
    pub fn dimension(&self) -> usize {
        match self {
            Space::Circle | Space::Line => 1,
            _ => 2,
        }
    }

    /// Whether the x coordinate wraps mod 1.
    pub fn x_periodic(&self) -> bool {
        matches!(self, Space::Circle | Space::Annulus | Space::Torus)
    }

    /// Whether the y coordinate wraps mod 1.
    pub fn y_periodic(&self) -> bool {
        matches!(self, Space::Torus)
    }

    /// Canonical representative of a point (wraps periodic coordinates,
    /// zeroes the unused slot of one-dimensional spaces).
    pub fn normalize(&self, p: Pt) -> Pt {
        let x = if self.x_periodic() { frac(p.x) } else { p.x };
        let y = if self.dimension() == 1 {
            0.0
        } else if self.y_periodic() {
            frac(p.y)
        } else {
            p.y
        };
        Pt { x, y }
    }

    /// Product (max) metric.
    pub fn dist(&self, a: Pt, b: Pt) -> f64 {
        let dx = if self.x_periodic() {
            circle_dist(a.x, b.x)
        } else {
            (a.x - b.x).abs()
        };
        if self.dimension() == 1 {
            return dx;
        }
        let dy = if self.y_periodic() {
            circle_dist(a.y, b.y)
        } else {
            (a.y - b.y).abs()
        };
        dx.max(dy)
    }

    /// Signed displacement `a − b` in local coordinates, unwrapping
    /// periodic factors to the representative nearest zero.
    pub fn displacement(&self, a: Pt, b: Pt) -> Pt {
        let dx = if self.x_periodic() {
            circle_diff(a.x, b.x)
        } else {
            a.x - b.x
        };
        let dy = if self.dimension() == 1 {
            0.0
        } else if self.y_periodic() {
            circle_diff(a.y, b.y)
        } else {
            a.y - b.y
        };
        Pt { x: dx, y: dy }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn circle_dist_examples() {
        assert!((circle_dist(0.1, 0.9) - 0.2).abs() < 1e-15);
        assert_eq!(circle_dist(0.25, 0.25), 0.0);
        assert!((circle_dist(0.0, 0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn normalize_wraps() {
        let p = Space::Circle.normalize(Pt::new(1.75, 3.0));
        assert!((p.x - 0.75).abs() < 1e-15);
        assert_eq!(p.y, 0.0);
        let q = Space::Annulus.normalize(Pt::new(-0.25, -2.0));
        assert!((q.x - 0.75).abs() < 1e-15);
        assert_eq!(q.y, -2.0);
    }

    #[test]
    fn frac_of_tiny_negative_is_in_range() {
        let f = frac(-1e-20);
        assert!((0.0..1.0).contains(&f));
    }

    proptest! {
        #[test]
        fn circle_dist_is_a_metric(a in 0.0..1.0f64, b in 0.0..1.0f64, c in 0.0..1.0f64) {
            let dab = circle_dist(a, b);
            let dba = circle_dist(b, a);
            prop_assert!((dab - dba).abs() < 1e-12);
            prop_assert!(dab <= 0.5 + 1e-12);
            let dac = circle_dist(a, c);
            let dcb = circle_dist(c, b);
            prop_assert!(dab <= dac + dcb + 1e-12);
            prop_assert!((circle_dist(a, a)).abs() < 1e-12);
        }

        #[test]
        fn displacement_inverts_dist(a in -3.0..3.0f64, b in -3.0..3.0f64, y1 in -2.0..2.0f64, y2 in -2.0..2.0f64) {
            let s = Space::Annulus;
            let p = s.normalize(Pt::new(a, y1));
            let q = s.normalize(Pt::new(b, y2));
            let d = s.displacement(p, q);
            prop_assert!((d.x.abs().max(d.y.abs()) - s.dist(p, q)).abs() < 1e-12);
        }
    }
}
