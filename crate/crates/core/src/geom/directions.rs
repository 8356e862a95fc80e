use std::f64::consts::TAU;

use rand::Rng;

use super::{AngularIntervalSet, ConvexBody, Needle, Point, Polygon};
use crate::error::{Error, Result};

/// Exact set of directions `θ` for which the needle of length `l` at `x` stays
/// in the body. Since the body is convex and contains `x`, that is the set of
/// `θ` whose endpoint `x + l(cos θ, sin θ)` lies in the body.
///
/// Supported for polygons (intersection of one arc per edge half-plane) and
/// disks (two-circle intersection). Ellipses and arc-polygons have no exact
/// route here; use [`pointwise_probability_mc`] or a polygon proxy.
pub fn admissible_directions(body: &ConvexBody, x: Point, l: f64) -> Result<AngularIntervalSet> {
    if !(l > 0.0) {
        return Err(crate::error::out_of_range("l", l, "l > 0"));
    }
    let directions = match body {
        ConvexBody::Polygon(poly) => polygon_directions(poly, x, l),
        ConvexBody::Disk { center, radius } => disk_directions(*center, *radius, x, l),
        other => {
            return Err(Error::UnsupportedVariant {
                op: "admissible_directions",
                variant: other.variant_name(),
            })
        }
    };
    if !body.contains(x) {
        return Err(Error::NotInside { x: x.x, y: x.y });
    }
    Ok(directions)
}

/// Directions for a polygon, skipping the containment check on `x`.
pub(crate) fn polygon_directions(poly: &Polygon, x: Point, l: f64) -> AngularIntervalSet {
    let mut set = AngularIntervalSet::full();
    for (i, normal) in poly.inward_normals().iter().enumerate() {
        let h = poly.edge_distance(i, x);
        if h >= l {
            continue;
        }
        // endpoint stays inside edge i iff cos(θ - angle(n)) >= -h / l
        let half = (-h / l).clamp(-1.0, 1.0).acos();
        set = set.intersect(&AngularIntervalSet::arc(normal.angle(), half));
        if set.is_empty() {
            break;
        }
    }
    set
}

pub(crate) fn disk_directions(center: Point, radius: f64, x: Point, l: f64) -> AngularIntervalSet {
    let v = center - x;
    let dist = v.norm();
    if dist == 0.0 {
        return if l <= radius {
            AngularIntervalSet::full()
        } else {
            AngularIntervalSet::empty()
        };
    }
    // |x + l u - c|² <= R²  ⇔  u · v >= (l² + D² - R²) / 2l
    let k = (l * l + dist * dist - radius * radius) / (2.0 * l * dist);
    if k <= -1.0 {
        AngularIntervalSet::full()
    } else if k >= 1.0 {
        AngularIntervalSet::empty()
    } else {
        AngularIntervalSet::arc(v.angle(), k.acos())
    }
}

/// Probability `p_X(x, l)` that a uniformly oriented needle of length `l` at
/// `x` stays in the body; the normalized measure of [`admissible_directions`].
/// A needle of length 0 is the point `x` itself, so `l = 0` gives 1.
pub fn pointwise_probability_exact(body: &ConvexBody, x: Point, l: f64) -> Result<f64> {
    if l == 0.0 {
        if !body.contains(x) {
            return Err(Error::NotInside { x: x.x, y: x.y });
        }
        return Ok(1.0);
    }
    let set = admissible_directions(body, x, l)?;
    Ok((set.measure() / TAU).clamp(0.0, 1.0))
}

/// Unchecked polygon version used by the quadrature inner loop.
#[inline]
pub(crate) fn polygon_pointwise(poly: &Polygon, x: Point, l: f64) -> f64 {
    (polygon_directions(poly, x, l).measure() / TAU).clamp(0.0, 1.0)
}

/// Monte Carlo estimate of `p_X(x, l)` from `n` uniform directions; works for
/// every body variant.
pub fn pointwise_probability_mc<R: Rng + ?Sized>(
    body: &ConvexBody,
    x: Point,
    l: f64,
    n: u64,
    rng: &mut R,
) -> Result<f64> {
    if !body.contains(x) {
        return Err(Error::NotInside { x: x.x, y: x.y });
    }
    if l == 0.0 || n == 0 {
        return Ok(1.0);
    }
    let hits = (0..n)
        .filter(|_| {
            let needle = Needle::new(x, l, rng.random::<f64>() * TAU);
            body.contains(needle.endpoint())
        })
        .count();
    Ok(hits as f64 / n as f64)
}
