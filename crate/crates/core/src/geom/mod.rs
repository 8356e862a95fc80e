//! Convex bodies, containment and distance predicates, and the exact
//! pointwise probability via sets of admissible needle directions.

mod angular;
mod arc_polygon;
mod body;
mod directions;
mod ellipse;
mod point;
pub(crate) mod polygon;

pub use angular::{canonical_angle, AngularIntervalSet};
pub use arc_polygon::{ArcPolygon, BoundaryElement};
pub use body::{ConvexBody, Needle};
pub(crate) use directions::polygon_pointwise;
pub use directions::{
    admissible_directions, pointwise_probability_exact, pointwise_probability_mc,
};
pub use ellipse::{Ellipse, DEFAULT_PROXY_N};
pub use point::Point;
pub use polygon::{
    bounding_box, centroid, clip_half_plane, clip_horizontal_slab, clip_vertical_slab, signed_area,
    Polygon,
};
