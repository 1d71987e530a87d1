//! Maps as evaluable records.
//!
//! A [`DynMap`] bundles an evaluation closure with the optional extras the
//! rest of the library asks for: a Jacobian, a Lipschitz bound used for
//! sound box-graph padding, a lift to the covering space, and inverse
//! branches for expanding circle maps.

use std::f64::consts::TAU;
use std::sync::Arc;

use crate::linalg::Mat2;
use crate::space::{frac, Pt, Space};

pub type EvalFn = Arc<dyn Fn(Pt) -> Pt + Send + Sync>;
pub type JacFn = Arc<dyn Fn(Pt) -> Mat2 + Send + Sync>;

/// A lift of the map to a covering space.
#[derive(Clone)]
pub struct Lift {
    pub space: Space,
    pub eval: EvalFn,
}

/// The complete set of inverse branches of an expanding circle map of
/// degree `count`, indexed so that branch `j` maps onto the j-th
/// fundamental arc (left-closed).
#[derive(Clone)]
pub struct InverseBranches {
    pub count: usize,
    /// Lower bound on |f′|; must exceed 1 for the shadowing oracle.
    pub min_expansion: f64,
    branch_of: Arc<dyn Fn(Pt) -> usize + Send + Sync>,
    apply: Arc<dyn Fn(usize, Pt) -> Pt + Send + Sync>,
}

impl InverseBranches {
    /// Index of the branch whose image arc contains `p`.
    pub fn branch_of(&self, p: Pt) -> usize {
        (self.branch_of)(p)
    }

    pub fn apply(&self, branch: usize, p: Pt) -> Pt {
        (self.apply)(branch, p)
    }
}

#[derive(Clone)]
pub struct DynMap {
    pub name: String,
    pub space: Space,
    eval: EvalFn,
    jacobian: Option<JacFn>,
    pub lipschitz: Option<f64>,
    lift: Option<Lift>,
    inverse: Option<InverseBranches>,
}

impl std::fmt::Debug for DynMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DynMap")
            .field("name", &self.name)
            .field("space", &self.space)
            .field("lipschitz", &self.lipschitz)
            .finish()
    }
}

impl DynMap {
    pub fn new(name: impl Into<String>, space: Space, eval: EvalFn) -> Self {
        DynMap {
            name: name.into(),
            space,
            eval,
            jacobian: None,
            lipschitz: None,
            lift: None,
            inverse: None,
        }
    }

    pub fn with_jacobian(mut self, jac: JacFn) -> Self {
        self.jacobian = Some(jac);
        self
    }

    pub fn with_lipschitz(mut self, l: f64) -> Self {
        self.lipschitz = Some(l);
        self
    }

    pub fn with_lift(mut self, space: Space, eval: EvalFn) -> Self {
        self.lift = Some(Lift { space, eval });
        self
    }

    pub fn with_inverse_branches(
        mut self,
        count: usize,
        min_expansion: f64,
        branch_of: Arc<dyn Fn(Pt) -> usize + Send + Sync>,
        apply: Arc<dyn Fn(usize, Pt) -> Pt + Send + Sync>,
    ) -> Self {
        self.inverse = Some(InverseBranches {
            count,
            min_expansion,
            branch_of,
            apply,
        });
        self
    }

    /// Evaluate the map; input and output are normalized to the space's
    /// canonical coordinates.
    pub fn eval(&self, p: Pt) -> Pt {
        self.space.normalize((self.eval)(self.space.normalize(p)))
    }

    /// k-fold composition.
    pub fn eval_n(&self, p: Pt, k: usize) -> Pt {
        let mut z = p;
        for _ in 0..k {
            z = self.eval(z);
        }
        z
    }

    pub fn has_jacobian(&self) -> bool {
        self.jacobian.is_some()
    }

    pub fn jacobian(&self, p: Pt) -> Option<Mat2> {
        self.jacobian
            .as_ref()
            .map(|j| j(self.space.normalize(p)))
    }

    /// Central-finite-difference Jacobian of `eval`, used as fallback and
    /// as the independent check of analytic Jacobians.
    pub fn jacobian_fd(&self, p: Pt, h: f64) -> Mat2 {
        let p = self.space.normalize(p);
        let mut m = [[0.0; 2]; 2];
        let dim = self.space.dimension();
        for j in 0..dim {
            let mut hi = p;
            let mut lo = p;
            if j == 0 {
                hi.x += h;
                lo.x -= h;
            } else {
                hi.y += h;
                lo.y -= h;
            }
            let d = self.space.displacement(self.eval(hi), self.eval(lo));
            m[0][j] = d.x / (2.0 * h);
            m[1][j] = d.y / (2.0 * h);
        }
        if dim == 1 {
            m[1][1] = 1.0;
        }
        m
    }

    pub fn lift(&self) -> Option<&Lift> {
        self.lift.as_ref()
    }

    pub fn lift_eval(&self, p: Pt) -> Option<Pt> {
        self.lift.as_ref().map(|l| (l.eval)(p))
    }

    pub fn inverse_branches(&self) -> Option<&InverseBranches> {
        self.inverse.as_ref()
    }
}

// ---------------------------------------------------------------------------
// Standard maps.
// ---------------------------------------------------------------------------

/// Identity on the given space.
pub fn identity(space: Space) -> DynMap {
    DynMap::new("identity", space, Arc::new(|p| p))
        .with_jacobian(Arc::new(|_| crate::linalg::IDENT))
        .with_lipschitz(1.0)
        .with_lift(
            match space {
                Space::Circle => Space::Line,
                Space::Annulus => Space::Strip,
                Space::Torus => Space::Plane,
                s => s,
            },
            Arc::new(|p| p),
        )
}

/// The linear circle endomorphism x ↦ d·x (mod 1); `E₂` is `linear_circle(2)`.
pub fn linear_circle(d: i64) -> DynMap {
    let df = d as f64;
    let mut m = DynMap::new(
        format!("E{d}"),
        Space::Circle,
        Arc::new(move |p: Pt| Pt::new(frac(df * p.x), 0.0)),
    )
    .with_jacobian(Arc::new(move |_| [[df, 0.0], [0.0, 1.0]]))
    .with_lipschitz(df.abs())
    .with_lift(Space::Line, Arc::new(move |p: Pt| Pt::new(df * p.x, 0.0)));
    if d >= 2 {
        let du = d as usize;
        m = m.with_inverse_branches(
            du,
            df,
            Arc::new(move |p: Pt| {
                let k = (frac(p.x) * df).floor() as i64;
                k.clamp(0, d - 1) as usize
            }),
            Arc::new(move |j, p: Pt| Pt::new((frac(p.x) + j as f64) / df, 0.0)),
        );
    }
    m
}

/// Rigid rotation of the circle by `alpha`.
pub fn rotation(alpha: f64) -> DynMap {
    DynMap::new(
        format!("rot:{alpha}"),
        Space::Circle,
        Arc::new(move |p: Pt| Pt::new(frac(p.x + alpha), 0.0)),
    )
    .with_jacobian(Arc::new(|_| crate::linalg::IDENT))
    .with_lipschitz(1.0)
    .with_lift(Space::Line, Arc::new(move |p: Pt| Pt::new(p.x + alpha, 0.0)))
}

/// Single-harmonic circle map with lift F(x) = a0 + a1·x + b·sin(2πx).
pub fn trig(a0: f64, a1: f64, b: f64) -> DynMap {
    let lift = move |p: Pt| Pt::new(a0 + a1 * p.x + b * (TAU * p.x).sin(), 0.0);
    DynMap::new(
        format!("trig:{a0}+{a1}*x+{b}*sin(2*pi*x)"),
        Space::Circle,
        Arc::new(move |p: Pt| Pt::new(frac(lift(p).x), 0.0)),
    )
    .with_jacobian(Arc::new(move |p: Pt| {
        [[a1 + b * TAU * (TAU * p.x).cos(), 0.0], [0.0, 1.0]]
    }))
    .with_lipschitz(a1.abs() + b.abs() * TAU)
    .with_lift(Space::Line, Arc::new(lift))
}

/// North-south circle map x ↦ x + 0.1·sin(2πx): a repelling fixed point at
/// 0 and an attracting one at 1/2.
pub fn north_south() -> DynMap {
    let mut m = trig(0.0, 1.0, 0.1);
    m.name = "northsouth".into();
    m
}

/// Annulus map (θ, y) ↦ (θ + alpha, y·factor).
pub fn rotate_and_squeeze(alpha: f64, factor: f64) -> DynMap {
    DynMap::new(
        format!("contraction:{alpha}:{factor}"),
        Space::Annulus,
        Arc::new(move |p: Pt| Pt::new(frac(p.x + alpha), factor * p.y)),
    )
    .with_jacobian(Arc::new(move |_| [[1.0, 0.0], [0.0, factor]]))
    .with_lipschitz(factor.abs().max(1.0))
    .with_lift(
        Space::Strip,
        Arc::new(move |p: Pt| Pt::new(p.x + alpha, factor * p.y)),
    )
}

/// Linear map (x, y) ↦ (a·x, d·y) of the plane.
pub fn linear_plane(a: f64, d: f64) -> DynMap {
    DynMap::new(
        format!("linear:{a}:{d}"),
        Space::Plane,
        Arc::new(move |p: Pt| Pt::new(a * p.x, d * p.y)),
    )
    .with_jacobian(Arc::new(move |_| [[a, 0.0], [0.0, d]]))
    .with_lipschitz(a.abs().max(d.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_jacobian(map: &DynMap, samples: &[Pt]) {
        for &p in samples {
            let a = map.jacobian(p).expect("analytic jacobian");
            let n = map.jacobian_fd(p, 1e-6);
            for i in 0..2 {
                for j in 0..2 {
                    let scale = 1.0 + a[i][j].abs();
                    assert!(
                        (a[i][j] - n[i][j]).abs() / scale < 1e-5,
                        "jacobian mismatch at {p:?}: {a:?} vs {n:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn doubling_map_basics() {
        let e2 = linear_circle(2);
        let p = e2.eval(Pt::new(0.3, 0.0));
        assert!((p.x - 0.6).abs() < 1e-15);
        let q = e2.eval(Pt::new(0.75, 0.0));
        assert!((q.x - 0.5).abs() < 1e-15);
        check_jacobian(&e2, &[Pt::new(0.1, 0.0), Pt::new(0.7, 0.0)]);
    }

    #[test]
    fn inverse_branches_invert() {
        let e3 = linear_circle(3);
        let inv = e3.inverse_branches().unwrap();
        assert_eq!(inv.count, 3);
        for j in 0..3 {
            let y = Pt::new(0.4321, 0.0);
            let x = inv.apply(j, y);
            let back = e3.eval(x);
            assert!(crate::space::circle_dist(back.x, y.x) < 1e-12);
            assert_eq!(inv.branch_of(x), j);
        }
    }

    #[test]
    fn trig_jacobian_matches_fd() {
        let f = trig(0.0, 2.0, 0.05);
        let samples: Vec<Pt> = (0..13).map(|k| Pt::new(k as f64 / 13.0, 0.0)).collect();
        check_jacobian(&f, &samples);
    }

    #[test]
    fn squeeze_map_contracts_y() {
        let f = rotate_and_squeeze(0.3, 0.5);
        let p = f.eval(Pt::new(0.9, 0.8));
        assert!((p.x - 0.2).abs() < 1e-12);
        assert!((p.y - 0.4).abs() < 1e-15);
        check_jacobian(&f, &[Pt::new(0.2, 0.5), Pt::new(0.8, -0.7)]);
    }
}
