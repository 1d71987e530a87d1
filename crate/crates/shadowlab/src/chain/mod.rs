//! Set-oriented chain recurrence on box covers.
//!
//! A [`BoxCover`] discretizes a circle or annulus window into a uniform
//! grid. [`build_graph`] fattens the image of each box center by
//! `delta + L·radius` so that every genuine δ-jump of the map is covered
//! by a graph edge. Chain-recurrent boxes, ε-transitive components,
//! complete Lyapunov values, trap certificates, and the periodic-point
//! finder are all derived from that graph.

mod components;
mod cover;
mod graph;
mod lyapunov;
mod periodic;
mod trap;

pub use components::{chain_recurrent_boxes, epsilon_components, ChainComponents, SccData};
pub use cover::{build_cover, build_cover_with_limit, BoxCover, Window, DEFAULT_BOX_LIMIT};
pub use graph::{build_graph, worker_count, GraphParams, TransitionGraph};
pub use lyapunov::{lyapunov_values, LyapunovData};
pub use periodic::{find_periodic_in_component, PeriodicSearch};
pub use trap::{replay_trap, verify_trap, TrapKind, TrapOpts, TrapReport};
