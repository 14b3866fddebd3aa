//! Exact rational planar primitives: points, convex polygon intersection,
//! common-point witnesses and boundary-arrangement candidate points.
//!
//! Everything here is a pure function on immutable values; all predicates
//! are exact (no floating point anywhere).

pub mod intersect;
pub mod point;
pub mod polygon;
pub mod rational;

pub use intersect::{
    candidate_points, centroid, common_point, conv_contains, depth, intersect, intersect_all,
    pair_boundary_points, segment_intersection,
};
pub use point::{in_box, orient, Orientation, Point2};
pub use polygon::{BodyId, ConvexBody, ConvexPolygon, GeometryError};
pub use rational::{
    binomial, binomial_signed, ceil_to_i64, nth_root_lower, rat, rat_from_string, rat_to_string,
    ratio, Rat, RatParseError,
};
