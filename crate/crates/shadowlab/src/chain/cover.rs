use serde::Serialize;

use crate::error::{Error, Result};
use crate::space::{frac, Pt, Space};

/// Default cap on the number of boxes a cover may hold.
pub const DEFAULT_BOX_LIMIT: usize = 1 << 24;

/// A full-circle window, optionally with a radial interval. The x
/// direction always spans the whole circle; the y direction is the
/// interval `[y_lo, y_hi]` for annulus windows.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Window {
    pub space: Space,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Window {
    pub fn circle() -> Self {
        Window {
            space: Space::Circle,
            y_lo: 0.0,
            y_hi: 0.0,
        }
    }

    pub fn annulus(y_lo: f64, y_hi: f64) -> Self {
        Window {
            space: Space::Annulus,
            y_lo,
            y_hi,
        }
    }

    pub fn height(&self) -> f64 {
        self.y_hi - self.y_lo
    }
}

/// A uniform grid of boxes tiling a window exactly. Box widths are
/// `1/nx ≤ rho` and `height/ny ≤ rho`, so every box has diameter at most
/// `rho` in the product metric.
#[derive(Debug, Clone, Serialize)]
pub struct BoxCover {
    pub window: Window,
    pub rho: f64,
    pub nx: usize,
    pub ny: usize,
    pub wx: f64,
    pub wy: f64,
}

pub fn build_cover(window: Window, rho: f64) -> Result<BoxCover> {
    build_cover_with_limit(window, rho, DEFAULT_BOX_LIMIT)
}

pub fn build_cover_with_limit(window: Window, rho: f64, limit: usize) -> Result<BoxCover> {
    if !(rho > 0.0) {
        return Err(Error::precondition("rho must be positive"));
    }
    let two_d = window.space.dimension() == 2;
    if two_d && !(window.y_hi > window.y_lo) {
        return Err(Error::precondition("window must have positive height"));
    }
    let nx = (1.0 / rho).ceil() as usize;
    let ny = if two_d {
        (window.height() / rho).ceil() as usize
    } else {
        1
    };
    if nx == 0 || ny == 0 {
        return Err(Error::precondition("degenerate grid"));
    }
    let count = nx
        .checked_mul(ny)
        .ok_or_else(|| Error::infeasible("box count overflow"))?;
    if count > limit {
        return Err(Error::infeasible(format!(
            "box count {count} exceeds the limit {limit}"
        )));
    }
    Ok(BoxCover {
        window,
        rho,
        nx,
        ny,
        wx: 1.0 / nx as f64,
        wy: if two_d {
            window.height() / ny as f64
        } else {
            1.0
        },
    })
}

impl BoxCover {
    pub fn box_count(&self) -> usize {
        self.nx * self.ny
    }

    /// Half-diameter of a box in the product metric.
    pub fn radius(&self) -> f64 {
        let h = if self.window.space.dimension() == 2 {
            self.wy
        } else {
            0.0
        };
        self.wx.max(h) / 2.0
    }

    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    pub fn split(&self, id: usize) -> (usize, usize) {
        (id % self.nx, id / self.nx)
    }

    /// The box containing `p`; `None` when `p` lies outside the window.
    pub fn box_of(&self, p: Pt) -> Option<usize> {
        let p = self.window.space.normalize(p);
        let ix = ((frac(p.x) / self.wx) as usize).min(self.nx - 1);
        if self.window.space.dimension() == 1 {
            return Some(ix);
        }
        if p.y < self.window.y_lo - 1e-12 || p.y > self.window.y_hi + 1e-12 {
            return None;
        }
        let iy = (((p.y - self.window.y_lo) / self.wy) as usize).min(self.ny - 1);
        Some(self.index(ix, iy))
    }

    pub fn center(&self, id: usize) -> Pt {
        let (ix, iy) = self.split(id);
        let x = (ix as f64 + 0.5) * self.wx;
        let y = if self.window.space.dimension() == 2 {
            self.window.y_lo + (iy as f64 + 0.5) * self.wy
        } else {
            0.0
        };
        Pt::new(x, y)
    }

    /// Box ids whose y-range intersects `[y_lo, y_hi]` (all columns).
    pub fn boxes_in_band(&self, y_lo: f64, y_hi: f64) -> Vec<usize> {
        if self.window.space.dimension() == 1 {
            return (0..self.nx).collect();
        }
        let lo = (((y_lo - self.window.y_lo) / self.wy).floor().max(0.0)) as usize;
        let hi_f = ((y_hi - self.window.y_lo) / self.wy).ceil();
        if hi_f < 0.0 {
            return Vec::new();
        }
        let hi = (hi_f as usize).min(self.ny);
        let mut out = Vec::new();
        for iy in lo..hi {
            for ix in 0..self.nx {
                out.push(self.index(ix, iy));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_grid_counts() {
        let c = build_cover(Window::annulus(-1.0, 1.0), 1.0 / 8.0).unwrap();
        assert_eq!((c.nx, c.ny), (8, 16));
        assert_eq!(c.box_count(), 128);
    }

    #[test]
    fn circle_grid_counts() {
        let c = build_cover(Window::circle(), 1.0 / 256.0).unwrap();
        assert_eq!(c.box_count(), 256);
    }

    #[test]
    fn zero_rho_is_an_error() {
        assert!(build_cover(Window::circle(), 0.0).is_err());
    }

    #[test]
    fn box_limit_refuses() {
        assert!(build_cover_with_limit(Window::circle(), 1e-7, 1 << 20).is_err());
    }

    #[test]
    fn box_of_center_roundtrip() {
        let c = build_cover(Window::annulus(-1.0, 1.0), 0.03).unwrap();
        for id in (0..c.box_count()).step_by(17) {
            assert_eq!(c.box_of(c.center(id)), Some(id));
        }
        assert_eq!(c.box_of(Pt::new(0.5, 3.0)), None);
    }
}
