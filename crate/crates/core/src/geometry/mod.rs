//! Exact 2D/1D computational geometry over big rationals.

mod feasible;
mod halfplane;
mod interval;
mod point;
mod pointset;
mod polygon;
pub mod rational;

pub use feasible::FeasibleSet;
pub use halfplane::HalfPlane;
pub use interval::{Interval, IntervalUnion, ScalarSet};
pub use point::{orient, Point2};
pub use pointset::PointSet;
pub use polygon::{project_onto_segment, ConvexPolygon};
pub use rational::{int, parse_rational, rat, Rational};
