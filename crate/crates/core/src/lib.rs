//! Buffon needle probabilities over bounded convex planar bodies.
//!
//! A needle of length `l` is dropped with its origin uniform in a convex body
//! `X` and its direction uniform on the circle. [`buffon`] computes the
//! probability that it stays inside `X` three ways (closed form for the disk,
//! deterministic quadrature of the pointwise probability for polygons, and
//! seeded Monte Carlo for every body). [`parallel`] provides interior and
//! exterior parallel bodies with exact Steiner bookkeeping, and [`bounds`]
//! evaluates the inequality chain showing the disk is optimal among bodies of
//! equal perimeter for short needles.
//!
//! [`cli`] holds the batch experiments behind the `buffon-convex` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod buffon;
pub mod cli;
pub mod error;
pub mod geom;
pub mod numeric;
pub mod parallel;

pub use error::{Error, Result};
pub use geom::{AngularIntervalSet, ConvexBody, Needle, Point, Polygon};

/// Absolute geometric tolerance for bodies of diameter O(1).
pub const TAU_GEOM: f64 = 1e-9;

/// Relative tolerance of adaptive quadrature (ellipse perimeter).
pub const TAU_QUAD: f64 = 1e-10;
