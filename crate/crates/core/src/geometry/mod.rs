//! Deterministic planar convex-set kernel.
//!
//! Sets are kept in vertex form (extreme points plus a recession cone);
//! half-space form is used transiently for intersections and membership.

mod clip;
mod cone;
mod convex;
mod grid;
mod ops;
pub mod vec2;

pub use clip::{intersect_halfspaces, intersect_sets};
pub use cone::{conical_hull, Cone2};
pub use convex::{convex_hull_points, ConvexSet2, HalfSpace2, COLLINEAR_TOL, POLAR_TOL, VERTEX_TOL};
pub use grid::DirectionGrid;
pub use ops::{contains, hausdorff, max_support_gap, CONTAINS_GRID, CONTAINS_TOL};
pub use vec2::{ccw_angle, vec2, UnitVec, Vec2, DIR_TOL};
