use crate::chain::cover::BoxCover;
use crate::error::{Error, Result};
use crate::map::DynMap;
use crate::pseudo::generate_pseudo_orbit;
use crate::space::{circle_dist, Pt};

/// Parameters for [`build_graph`].
#[derive(Debug, Clone, Copy)]
pub struct GraphParams {
    /// Pseudo-orbit jump size the graph must cover.
    pub delta: f64,
    /// Fallback when the map carries no Lipschitz bound: number of sample
    /// pairs used to estimate one.
    pub sampling_budget: Option<usize>,
}

impl GraphParams {
    pub fn new(delta: f64) -> Self {
        GraphParams {
            delta,
            sampling_budget: None,
        }
    }
}

/// The δ-fattened transition graph over a box cover.
///
/// Edges are not materialized: `B → B′` holds iff the box `B′` meets the
/// ball of radius `delta + pad` around the stored image of `B`'s center,
/// so the image table determines the whole graph.
pub struct TransitionGraph {
    pub cover: BoxCover,
    pub delta: f64,
    /// Lipschitz padding `L · radius(B)` added to `delta`.
    pub pad: f64,
    pub lipschitz: f64,
    images: Vec<Pt>,
}

/// Rectangle of successor indices (columns may wrap around the circle).
#[derive(Debug, Clone, Copy)]
pub struct SuccRect {
    pub ix_lo: i64,
    pub ix_hi: i64,
    pub iy_lo: usize,
    pub iy_hi: usize,
    /// True when the target ball pokes outside the window in y.
    pub clipped: bool,
    pub empty: bool,
}

impl SuccRect {
    pub fn len(&self) -> usize {
        if self.empty {
            0
        } else {
            ((self.ix_hi - self.ix_lo + 1) as usize) * (self.iy_hi - self.iy_lo + 1)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }
}

/// Number of worker threads build_graph may use, capped by the
/// SHADOWLAB_THREADS environment variable.
pub fn worker_count() -> usize {
    let avail = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var("SHADOWLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(n) => n.clamp(1, avail.max(1)),
        None => avail.min(8),
    }
}

fn estimate_lipschitz(map: &DynMap, cover: &BoxCover, budget: usize) -> f64 {
    // max sampled local stretch, inflated; sound only as a heuristic,
    // which is why maps should carry their own bound when they have one
    let w = &cover.window;
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    let n = budget.max(16);
    for k in 0..n {
        let x = (k as f64 + 0.5) / n as f64;
        let y = if w.space.dimension() == 2 {
            w.y_lo + (((k * 7919) % n) as f64 + 0.5) / n as f64 * w.height()
        } else {
            0.0
        };
        let p = Pt::new(x, y);
        let fp = map.eval(p);
        for dir in 0..w.space.dimension() {
            let mut q = p;
            if dir == 0 {
                q.x += h;
            } else {
                q.y += h;
            }
            let stretch = w.space.dist(map.eval(q), fp) / h;
            worst = worst.max(stretch);
        }
    }
    worst * 1.25
}

/// Build the transition graph: edge `B → B′` iff
/// `d(f(center(B)), B′) ≤ delta + L·radius(B)`.
pub fn build_graph(map: &DynMap, cover: &BoxCover, params: GraphParams) -> Result<TransitionGraph> {
    if !(params.delta >= 0.0) {
        return Err(Error::precondition("delta must be ≥ 0"));
    }
    let lipschitz = match (map.lipschitz, params.sampling_budget) {
        (Some(l), _) => l,
        (None, Some(budget)) => estimate_lipschitz(map, cover, budget),
        (None, None) => {
            return Err(Error::precondition(
                "map has no Lipschitz bound and no sampling budget was supplied",
            ))
        }
    };
    let n = cover.box_count();
    let mut images = vec![Pt::new(0.0, 0.0); n];
    let threads = worker_count().min(n.max(1));
    if threads <= 1 || n < 4096 {
        for (id, slot) in images.iter_mut().enumerate() {
            *slot = map.eval(cover.center(id));
        }
    } else {
        let chunk = n.div_ceil(threads);
        std::thread::scope(|s| {
            for (ci, slice) in images.chunks_mut(chunk).enumerate() {
                let base = ci * chunk;
                s.spawn(move || {
                    for (k, slot) in slice.iter_mut().enumerate() {
                        *slot = map.eval(cover.center(base + k));
                    }
                });
            }
        });
    }
    Ok(TransitionGraph {
        cover: cover.clone(),
        delta: params.delta,
        pad: lipschitz * cover.radius(),
        lipschitz,
        images,
    })
}

impl TransitionGraph {
    /// Image of the center of box `b`.
    pub fn image(&self, b: usize) -> Pt {
        self.images[b]
    }

    /// Effective fattening radius `delta + pad`.
    pub fn radius(&self) -> f64 {
        self.delta + self.pad
    }

    /// Successor rectangle of box `b` at the graph's own radius.
    pub fn succ_rect(&self, b: usize) -> SuccRect {
        self.succ_rect_at(b, self.radius())
    }

    /// Successor rectangle at an explicit fattening radius `r`.
    pub fn succ_rect_at(&self, b: usize, r: f64) -> SuccRect {
        let c = &self.cover;
        let p = self.images[b];
        let (ix_lo, ix_hi) = if 2.0 * r >= 1.0 - c.wx {
            (0i64, c.nx as i64 - 1)
        } else {
            (
                ((p.x - r) / c.wx).floor() as i64,
                ((p.x + r) / c.wx).floor() as i64,
            )
        };
        if c.window.space.dimension() == 1 {
            return SuccRect {
                ix_lo,
                ix_hi,
                iy_lo: 0,
                iy_hi: 0,
                clipped: false,
                empty: false,
            };
        }
        let y_lo = p.y - r;
        let y_hi = p.y + r;
        let clipped = y_lo < c.window.y_lo - 1e-12 || y_hi > c.window.y_hi + 1e-12;
        if y_hi < c.window.y_lo || y_lo > c.window.y_hi {
            return SuccRect {
                ix_lo,
                ix_hi,
                iy_lo: 1,
                iy_hi: 0,
                clipped,
                empty: true,
            };
        }
        let iy_lo = (((y_lo - c.window.y_lo) / c.wy).floor().max(0.0)) as usize;
        let iy_hi = ((((y_hi - c.window.y_lo) / c.wy).floor()).max(0.0) as usize).min(c.ny - 1);
        SuccRect {
            ix_lo,
            ix_hi,
            iy_lo: iy_lo.min(c.ny - 1),
            iy_hi,
            clipped,
            empty: false,
        }
    }

    /// Enumerate the box ids in a successor rectangle.
    pub fn rect_boxes<'a>(&'a self, rect: &'a SuccRect) -> impl Iterator<Item = usize> + 'a {
        let nx = self.cover.nx as i64;
        let (ix_lo, ix_hi) = (rect.ix_lo, rect.ix_hi);
        let rows = if rect.empty {
            1..=0
        } else {
            rect.iy_lo..=rect.iy_hi
        };
        rows.flat_map(move |iy| {
            (ix_lo..=ix_hi).map(move |ix| iy * nx as usize + (ix.rem_euclid(nx)) as usize)
        })
    }

    pub fn successors(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        let rect = self.succ_rect(b);
        self.rect_boxes_owned(rect)
    }

    fn rect_boxes_owned(&self, rect: SuccRect) -> impl Iterator<Item = usize> + '_ {
        let nx = self.cover.nx as i64;
        let rows = if rect.empty {
            1..=0
        } else {
            rect.iy_lo..=rect.iy_hi
        };
        rows.flat_map(move |iy| {
            (rect.ix_lo..=rect.ix_hi).map(move |ix| iy * nx as usize + (ix.rem_euclid(nx)) as usize)
        })
    }

    /// Does the edge `a → b` exist?
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let r = self.radius();
        let p = self.images[a];
        let c = &self.cover;
        let (ix, iy) = c.split(b);
        let bx_lo = ix as f64 * c.wx;
        let bx_hi = bx_lo + c.wx;
        let dx = if p.x >= bx_lo && p.x <= bx_hi {
            0.0
        } else {
            circle_dist(p.x, bx_lo).min(circle_dist(p.x, bx_hi))
        };
        if dx > r {
            return false;
        }
        if c.window.space.dimension() == 1 {
            return true;
        }
        let by_lo = c.window.y_lo + iy as f64 * c.wy;
        let by_hi = by_lo + c.wy;
        let dy = if p.y >= by_lo && p.y <= by_hi {
            0.0
        } else {
            (p.y - by_lo).abs().min((p.y - by_hi).abs())
        };
        dy <= r
    }

    pub fn has_self_loop(&self, b: usize) -> bool {
        self.has_edge(b, b)
    }

    /// Materialized edge list as CSV (`from_box,to_box`), with metadata
    /// comment lines. Intended for small graphs.
    pub fn edges_csv(&self, meta: &[(String, String)]) -> String {
        let mut out = String::new();
        for (k, v) in meta {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str("from_box,to_box\n");
        for b in 0..self.cover.box_count() {
            for w in self.successors(b) {
                out.push_str(&format!("{b},{w}\n"));
            }
        }
        out
    }
}

/// Sampled soundness check: for random (x, noise) pairs with x in box B and
/// d(f(x), y) ≤ delta, the edge B → box(y) must exist. Returns the number
/// of violations.
pub fn soundness_violations(
    map: &DynMap,
    graph: &TransitionGraph,
    samples: usize,
    seed: u64,
) -> usize {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let c = &graph.cover;
    let mut bad = 0;
    for _ in 0..samples {
        let b = rng.gen_range(0..c.box_count());
        let (ix, iy) = c.split(b);
        let x = (ix as f64 + rng.gen_range(0.0..1.0)) * c.wx;
        let y = if c.window.space.dimension() == 2 {
            c.window.y_lo + (iy as f64 + rng.gen_range(0.0..1.0)) * c.wy
        } else {
            0.0
        };
        let p = Pt::new(x, y);
        let mut fy = map.eval(p);
        if graph.delta > 0.0 {
            fy.x += rng.gen_range(-graph.delta..=graph.delta);
            if c.window.space.dimension() == 2 {
                fy.y += rng.gen_range(-graph.delta..=graph.delta);
            }
            fy = c.window.space.normalize(fy);
        }
        if let Some(target) = c.box_of(fy) {
            if !graph.has_edge(b, target) {
                bad += 1;
            }
        }
    }
    let _ = generate_pseudo_orbit; // referenced for doc purposes only
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::cover::{build_cover, Window};
    use crate::map;

    #[test]
    fn identity_has_self_loops_everywhere() {
        let cover = build_cover(Window::annulus(-1.0, 1.0), 0.05).unwrap();
        let f = map::identity(crate::space::Space::Annulus);
        let g = build_graph(&f, &cover, GraphParams::new(0.0)).unwrap();
        for b in (0..cover.box_count()).step_by(7) {
            assert!(g.has_self_loop(b));
        }
    }

    #[test]
    fn missing_bound_and_budget_is_an_error() {
        let cover = build_cover(Window::circle(), 0.01).unwrap();
        let f = map::DynMap::new(
            "opaque",
            crate::space::Space::Circle,
            std::sync::Arc::new(|p: Pt| p),
        );
        assert!(build_graph(&f, &cover, GraphParams::new(0.01)).is_err());
        let mut params = GraphParams::new(0.01);
        params.sampling_budget = Some(200);
        assert!(build_graph(&f, &cover, params).is_ok());
    }

    #[test]
    fn graph_soundness_sampled() {
        let cover = build_cover(Window::circle(), 1.0 / 128.0).unwrap();
        for delta in [0.0, 1.0 / 128.0] {
            let f = map::north_south();
            let g = build_graph(&f, &cover, GraphParams::new(delta)).unwrap();
            assert_eq!(soundness_violations(&f, &g, 10_000, 5), 0);
        }
        let cover2 = build_cover(Window::annulus(-1.0, 1.0), 1.0 / 64.0).unwrap();
        let f2 = map::rotate_and_squeeze(0.3, 0.5);
        let g2 = build_graph(&f2, &cover2, GraphParams::new(0.01)).unwrap();
        assert_eq!(soundness_violations(&f2, &g2, 10_000, 6), 0);
    }

    #[test]
    fn successor_rect_matches_has_edge() {
        let cover = build_cover(Window::annulus(-1.0, 1.0), 1.0 / 32.0).unwrap();
        let f = map::rotate_and_squeeze(0.3, 0.5);
        let g = build_graph(&f, &cover, GraphParams::new(0.02)).unwrap();
        for b in (0..cover.box_count()).step_by(53) {
            let mut from_rect: Vec<usize> = g.successors(b).collect();
            from_rect.sort_unstable();
            let mut from_scan: Vec<usize> = (0..cover.box_count())
                .filter(|&w| g.has_edge(b, w))
                .collect();
            from_scan.sort_unstable();
            assert_eq!(from_rect, from_scan, "box {b}");
        }
    }
}
