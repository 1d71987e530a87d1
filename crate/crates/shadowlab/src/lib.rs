//! shadowlab: set-oriented chain recurrence, pseudo-orbit shadowing, and
//! low-dimensional dynamics constructions on the circle and annulus.
//!
//! The crate is organized around a handful of subsystems:
//!
//! - [`space`], [`map`], [`pseudo`], [`intmat`]: phase spaces, evaluable
//!   maps, pseudo-orbits and their lifts to covers, and an exact
//!   integer-matrix trace utility.
//! - [`chain`]: box covers, δ-fattened transition graphs, ε-transitive
//!   components, complete Lyapunov functions, trap certification, and a
//!   Newton-based periodic-point finder.
//! - [`shadow`]: shadowing verification, shadowing-orbit construction by
//!   damped Newton and by inverse-branch coding, and Hölder-exponent fits.
//! - [`crooked`]: a piecewise-affine crooked-horseshoe model of the
//!   annulus, its symbolic dynamics, Liouville approximants, q-sheeted
//!   finite-cover maps, and first-coordinate shadowing of rotations.
//! - [`saddle`]: the saddle-loop return-map family, sink certificates,
//!   cone-field invariance checks, and time-t map distance estimates.
//! - [`glued`]: the glued-annuli diffeomorphism assembled from rescaled
//!   cover maps, plus its structural condition checks.
//! - [`circle`]: circle-endomorphism analysis (degree, turning points,
//!   expanding estimates, semiconjugacy to linear models, turning-interval
//!   escape, and periodic parameters in the translated family).

pub mod chain;
pub mod circle;
pub mod crooked;
pub mod emit;
pub mod error;
pub mod glued;
pub mod intmat;
pub mod linalg;
pub mod map;
pub mod pseudo;
pub mod registry;
pub mod saddle;
pub mod shadow;
pub mod space;
pub mod svg;

pub use error::{Error, Result};
pub use map::DynMap;
pub use pseudo::PseudoOrbit;
pub use space::{circle_dist, Pt, Space};
