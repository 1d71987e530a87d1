//! Pseudo-orbits: generation with seeded noise, jump measurement, and
//! lifting to covering spaces.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::DynMap;
use crate::space::{circle_diff, frac, Pt, Space};

/// A finite pseudo-orbit together with its recorded maximum jump.
#[derive(Debug, Clone, Serialize)]
pub struct PseudoOrbit {
    pub space: Space,
    pub points: Vec<Pt>,
    /// Recorded max of d(f(xₙ), xₙ₊₁) for the generating map.
    pub delta: f64,
}

impl PseudoOrbit {
    pub fn from_points(space: Space, points: Vec<Pt>, delta: f64) -> Self {
        PseudoOrbit {
            space,
            points,
            delta,
        }
    }

    /// The exact orbit of `x0`, which is a pseudo-orbit with delta = 0.
    pub fn exact_orbit(map: &DynMap, x0: Pt, steps: usize) -> Self {
        let mut points = Vec::with_capacity(steps + 1);
        let mut z = map.space.normalize(x0);
        points.push(z);
        for _ in 0..steps {
            z = map.eval(z);
            points.push(z);
        }
        PseudoOrbit {
            space: map.space,
            points,
            delta: 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// CSV rows `index,coord_1[,coord_2],jump`; the jump column holds
    /// d(f(x_{k-1}), x_k), 0 for the first row.
    pub fn to_csv(&self, map: &DynMap, meta: &[(String, String)]) -> String {
        let mut out = String::new();
        for (k, v) in meta {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        let two_d = self.space.dimension() == 2;
        out.push_str(if two_d {
            "index,coord_1,coord_2,jump\n"
        } else {
            "index,coord_1,jump\n"
        });
        for (i, p) in self.points.iter().enumerate() {
            let jump = if i == 0 {
                0.0
            } else {
                self.space.dist(map.eval(self.points[i - 1]), *p)
            };
            if two_d {
                out.push_str(&format!("{i},{},{},{}\n", p.x, p.y, jump));
            } else {
                out.push_str(&format!("{i},{},{}\n", p.x, jump));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pts: Vec<serde_json::Value> = self
            .points
            .iter()
            .map(|p| {
                if self.space.dimension() == 2 {
                    serde_json::json!([p.x, p.y])
                } else {
                    serde_json::json!([p.x])
                }
            })
            .collect();
        serde_json::json!({ "space": format!("{:?}", self.space), "delta": self.delta, "points": pts })
    }
}

/// Generate a δ-pseudo-orbit of `map` from `x0` with `n` steps. Noise is
/// uniform in the metric ball of radius `delta` and depends only on `seed`.
/// The recorded delta is the actual maximum jump, which is ≤ `delta`.
pub fn generate_pseudo_orbit(
    map: &DynMap,
    x0: Pt,
    delta: f64,
    n: usize,
    seed: u64,
) -> Result<PseudoOrbit> {
    if !x0.is_finite() {
        return Err(Error::precondition("x0 must be finite"));
    }
    if !(delta >= 0.0) {
        return Err(Error::precondition("delta must be ≥ 0"));
    }
    if n == 0 {
        return Err(Error::precondition("n must be ≥ 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = map.space;
    let mut points = Vec::with_capacity(n + 1);
    let mut z = space.normalize(x0);
    points.push(z);
    let mut max_seen = 0.0f64;
    for _ in 0..n {
        let image = map.eval(z);
        let next = if delta > 0.0 {
            let mut p = image;
            p.x += rng.gen_range(-delta..=delta);
            if space.dimension() == 2 {
                p.y += rng.gen_range(-delta..=delta);
            }
            space.normalize(p)
        } else {
            image
        };
        max_seen = max_seen.max(space.dist(image, next));
        points.push(next);
        z = next;
    }
    Ok(PseudoOrbit {
        space,
        points,
        delta: max_seen,
    })
}

/// Recompute max_n d(f(xₙ), xₙ₊₁).
pub fn max_jump(pseudo: &PseudoOrbit, map: &DynMap) -> Result<f64> {
    if pseudo.len() < 2 {
        return Err(Error::precondition("pseudo-orbit needs at least 2 points"));
    }
    let mut m = 0.0f64;
    for w in pseudo.points.windows(2) {
        m = m.max(pseudo.space.dist(map.eval(w[0]), w[1]));
    }
    Ok(m)
}

/// The coverings the library lifts pseudo-orbits through.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Covering {
    /// ℝ → ℝ/ℤ, deck translations x ↦ x + k.
    LineOverCircle,
    /// ℝ×ℝ → 𝕊¹×ℝ, deck translations (x, y) ↦ (x + k, y).
    StripOverAnnulus,
    /// ℝ² → 𝕋², deck translations by ℤ².
    PlaneOverTorus,
    /// The q-sheeted self-cover of the circle x ↦ qx; deck translations
    /// x ↦ x + j/q.
    CircleOverCircle { sheets: u32 },
}

impl Covering {
    pub fn cover_space(&self) -> Space {
        match self {
            Covering::LineOverCircle => Space::Line,
            Covering::StripOverAnnulus => Space::Strip,
            Covering::PlaneOverTorus => Space::Plane,
            Covering::CircleOverCircle { .. } => Space::Circle,
        }
    }

    pub fn base_space(&self) -> Space {
        match self {
            Covering::LineOverCircle => Space::Circle,
            Covering::StripOverAnnulus => Space::Annulus,
            Covering::PlaneOverTorus => Space::Torus,
            Covering::CircleOverCircle { .. } => Space::Circle,
        }
    }

    /// Length of the shortest nontrivial deck translation.
    pub fn min_deck_length(&self) -> f64 {
        match self {
            Covering::CircleOverCircle { sheets } => 1.0 / *sheets as f64,
            _ => 1.0,
        }
    }

    pub fn project(&self, p: Pt) -> Pt {
        match self {
            Covering::LineOverCircle => Pt::new(frac(p.x), 0.0),
            Covering::StripOverAnnulus => Pt::new(frac(p.x), p.y),
            Covering::PlaneOverTorus => Pt::new(frac(p.x), frac(p.y)),
            Covering::CircleOverCircle { sheets } => Pt::new(frac(*sheets as f64 * p.x), 0.0),
        }
    }

    /// The unique lift of `base` closest to `near` (ties broken towards
    /// smaller coordinates; irrelevant when distances stay below half the
    /// deck length).
    pub fn lift_near(&self, base: Pt, near: Pt) -> Pt {
        match self {
            Covering::LineOverCircle => Pt::new(near.x + circle_diff(base.x, frac(near.x)), 0.0),
            Covering::StripOverAnnulus => {
                Pt::new(near.x + circle_diff(base.x, frac(near.x)), base.y)
            }
            Covering::PlaneOverTorus => Pt::new(
                near.x + circle_diff(base.x, frac(near.x)),
                near.y + circle_diff(base.y, frac(near.y)),
            ),
            Covering::CircleOverCircle { sheets } => {
                let q = *sheets as f64;
                // candidate lifts are (base.x + j)/q
                let j0 = (q * near.x - base.x).round();
                let mut best = Pt::new(frac((base.x + j0) / q), 0.0);
                let mut best_d = crate::space::circle_dist(best.x, near.x);
                for dj in [-1.0, 1.0] {
                    let c = Pt::new(frac((base.x + j0 + dj) / q), 0.0);
                    let d = crate::space::circle_dist(c.x, near.x);
                    if d < best_d {
                        best = c;
                        best_d = d;
                    }
                }
                best
            }
        }
    }
}

/// Context for lifting pseudo-orbits: the covering plus the injectivity
/// radius `eps0` below which lifts are unique.
#[derive(Debug, Clone)]
pub struct LiftContext {
    pub eps0: f64,
    pub covering: Covering,
}

impl LiftContext {
    pub fn new(eps0: f64, covering: Covering) -> Result<Self> {
        if !(eps0 > 0.0) {
            return Err(Error::precondition("eps0 must be positive"));
        }
        if eps0 >= covering.min_deck_length() / 2.0 {
            return Err(Error::precondition(format!(
                "eps0 = {eps0} must be below half the minimal deck translation length {}",
                covering.min_deck_length()
            )));
        }
        Ok(LiftContext { eps0, covering })
    }
}

/// Lift a pseudo-orbit through the covering, starting at `base`. The lift
/// is unique because each step admits exactly one deck translate within
/// `eps0` of the image of the previous lifted point.
pub fn lift_pseudo_orbit(
    pseudo: &PseudoOrbit,
    ctx: &LiftContext,
    lifted_map: &DynMap,
    base: Pt,
) -> Result<PseudoOrbit> {
    if pseudo.is_empty() {
        return Err(Error::precondition("empty pseudo-orbit"));
    }
    if pseudo.delta >= ctx.eps0 {
        return Err(Error::precondition(format!(
            "pseudo-orbit delta {} is not below eps0 {}; lift uniqueness not guaranteed",
            pseudo.delta, ctx.eps0
        )));
    }
    let base_space = ctx.covering.base_space();
    if base_space.dist(ctx.covering.project(base), pseudo.points[0]) > 1e-9 {
        return Err(Error::precondition(
            "base point does not project to the first pseudo-orbit point",
        ));
    }
    let cover_space = ctx.covering.cover_space();
    let mut lifted = Vec::with_capacity(pseudo.len());
    let mut z = base;
    lifted.push(z);
    for (k, target) in pseudo.points.iter().enumerate().skip(1) {
        let image = lifted_map.eval(z);
        let cand = ctx.covering.lift_near(*target, image);
        let jump = cover_space.dist(image, cand);
        if jump >= ctx.eps0 {
            return Err(Error::NoConvergence {
                iterations: k,
                residual: jump,
            });
        }
        lifted.push(cand);
        z = cand;
    }
    Ok(PseudoOrbit {
        space: cover_space,
        points: lifted,
        delta: pseudo.delta,
    })
}
