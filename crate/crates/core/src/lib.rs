//! Set-valued expectations of random closed convex sets in the plane.
//!
//! A random convex set assigns a planar closed convex set to each scenario of
//! a finite probability space. This crate computes its linear (selection)
//! expectation together with the sublinear and superlinear nonlinear
//! expectations generated by representing density families, and the
//! applications built on them: zonoid-trimmed regions, lift expectations,
//! parametric expectation families, data depth of sets, and set-valued
//! portfolio risk acceptance.
//!
//! Everything is exact on vertex data where the math allows (Minkowski
//! averages, density-vertex oracles, cone translates); dual half-space
//! reconstructions discretize the sphere with a configurable direction grid.

pub mod error;
pub mod ext;
pub mod geometry;
pub mod numeric;
pub mod random_set;
pub mod risk_depth;
pub mod scenario;
pub mod set_expectation;

pub use error::{Error, Result};
pub use ext::ExtReal;
pub use geometry::{Cone2, ConvexSet2, DirectionGrid, HalfSpace2, UnitVec, Vec2};
pub use numeric::RepresentingFamily;
pub use random_set::{RandomConvexSet, Selection};
pub use scenario::{Partition, RandomScalar, RandomVector2, ScenarioSpace};
pub use set_expectation::NonlinearSpec;
