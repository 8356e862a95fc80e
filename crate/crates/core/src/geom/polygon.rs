use std::f64::consts::TAU;

use super::Point;
use crate::error::{Error, Result};
use crate::TAU_GEOM;

/// A strictly convex polygon with counterclockwise vertices.
///
/// Construction collapses repeated and collinear vertices, fixes clockwise
/// input and rejects anything non-convex. Each edge caches its inward unit
/// normal `n_i` and offset `c_i = n_i · v_i`, so the inward signed distance of
/// `p` to edge `i` is `n_i · p - c_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
    normals: Vec<Point>,
    offsets: Vec<f64>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidBody(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices
            .iter()
            .any(|p| !p.x.is_finite() || !p.y.is_finite())
        {
            return Err(Error::InvalidBody("non-finite vertex".into()));
        }
        let scale = bbox_extent(&vertices).max(f64::MIN_POSITIVE);
        let mut vs = dedup_cyclic(vertices, TAU_GEOM * scale);
        if vs.len() < 3 {
            return Err(Error::DegenerateBody(
                "fewer than 3 distinct vertices".into(),
            ));
        }
        let signed = signed_area(&vs);
        if signed.abs() <= TAU_GEOM * TAU_GEOM * scale * scale {
            return Err(Error::DegenerateBody("polygon has zero area".into()));
        }
        if signed < 0.0 {
            vs.reverse();
        }
        let vs = collapse_collinear(vs)?;
        if vs.len() < 3 {
            return Err(Error::DegenerateBody(
                "polygon collapses to a segment".into(),
            ));
        }
        let turning: f64 = (0..vs.len())
            .map(|i| {
                let n = vs.len();
                let e0 = vs[i] - vs[(i + n - 1) % n];
                let e1 = vs[(i + 1) % n] - vs[i];
                e0.cross(e1).atan2(e0.dot(e1))
            })
            .sum();
        if (turning - TAU).abs() > 1e-6 {
            return Err(Error::InvalidBody(format!(
                "polygon is not simple and convex (total turning {turning})"
            )));
        }
        Ok(Self::from_clean(vs))
    }

    /// Accepts the output of clipping a convex polygon without the strict
    /// convexity checks, which rounding defeats once the polygon is many orders
    /// of magnitude smaller than its parent. Only near-duplicates (within
    /// `tol`) are merged.
    pub(crate) fn from_clipped(vertices: Vec<Point>, tol: f64) -> Option<Self> {
        let vs = dedup_cyclic(vertices, tol);
        (vs.len() >= 3 && signed_area(&vs) > 0.0).then(|| Self::from_clean(vs))
    }

    fn from_clean(vertices: Vec<Point>) -> Self {
        let n = vertices.len();
        let mut normals = Vec::with_capacity(n);
        let mut offsets = Vec::with_capacity(n);
        for i in 0..n {
            let e = vertices[(i + 1) % n] - vertices[i];
            let normal = e.perp() * (1.0 / e.norm());
            offsets.push(normal.dot(vertices[i]));
            normals.push(normal);
        }
        Polygon {
            vertices,
            normals,
            offsets,
        }
    }

    /// Convex hull of a point cloud (Andrew's monotone chain).
    pub fn convex_hull(points: &[Point]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::DegenerateBody("hull of fewer than 3 points".into()));
        }
        let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
                Box::new(pts.iter())
            } else {
                Box::new(pts.iter().rev())
            };
            for &p in iter {
                while hull.len() >= start + 2 {
                    let a = hull[hull.len() - 2];
                    let b = hull[hull.len() - 1];
                    if (b - a).cross(p - b) <= 0.0 {
                        hull.pop();
                    } else {
                        break;
                    }
                }
                hull.push(p);
            }
            hull.pop();
        }
        Polygon::new(hull)
    }

    /// Regular `n`-gon with the given circumradius, first vertex at angle `phase`.
    pub fn regular(n: usize, circumradius: f64, center: Point, phase: f64) -> Result<Self> {
        let vs = (0..n)
            .map(|k| center + Point::unit(phase + TAU * k as f64 / n as f64) * circumradius)
            .collect();
        Polygon::new(vs)
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Polygon::new(vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Inward unit normals, one per edge `v_i → v_{i+1}`.
    pub fn inward_normals(&self) -> &[Point] {
        &self.normals
    }

    /// Inward signed distance of `p` to the line through edge `i`.
    #[inline]
    pub fn edge_distance(&self, i: usize, p: Point) -> f64 {
        self.normals[i].dot(p) - self.offsets[i]
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].dist(self.vertices[(i + 1) % n]))
            .sum()
    }

    pub fn edge_lengths(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| self.vertices[i].dist(self.vertices[(i + 1) % n]))
    }

    pub fn centroid(&self) -> Point {
        centroid(&self.vertices)
    }

    /// Closed containment up to `TAU_GEOM`.
    pub fn contains(&self, p: Point) -> bool {
        (0..self.vertices.len()).all(|i| self.edge_distance(i, p) >= -TAU_GEOM)
    }

    /// Distance from an interior point to the boundary (smallest edge distance).
    pub fn boundary_distance(&self, p: Point) -> f64 {
        (0..self.vertices.len())
            .map(|i| self.edge_distance(i, p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Euclidean distance from `p` to the closed polygon (0 inside).
    pub fn distance_to(&self, p: Point) -> f64 {
        if self.contains(p) {
            return 0.0;
        }
        self.nearest_on_boundary(p).1
    }

    /// Closest boundary point to `p`, with ties resolved to the smallest
    /// arc-length parameter measured from vertex 0.
    pub fn nearest_on_boundary(&self, p: Point) -> (Point, f64) {
        let n = self.vertices.len();
        let feet: Vec<(Point, f64)> = (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let e = self.vertices[(i + 1) % n] - a;
                let t = ((p - a).dot(e) / e.dot(e)).clamp(0.0, 1.0);
                let foot = a + e * t;
                (foot, foot.dist(p))
            })
            .collect();
        let best = feet.iter().map(|f| f.1).fold(f64::INFINITY, f64::min);
        *feet
            .iter()
            .find(|f| f.1 <= best + TAU_GEOM)
            .expect("polygon has edges")
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Point, Point) {
        bounding_box(&self.vertices)
    }

    /// Largest vertex-to-vertex distance (rotating calipers).
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        let twice_area = |i: usize, j: usize| (v[(i + 1) % n] - v[i]).cross(v[j % n] - v[i]);
        let mut best = 0.0f64;
        let mut j = 1;
        for i in 0..n {
            while twice_area(i, j + 1) > twice_area(i, j) {
                j += 1;
            }
            best = best
                .max(v[i].dist(v[j % n]))
                .max(v[(i + 1) % n].dist(v[j % n]));
        }
        best
    }

    /// `[x_min, x_max]` of the intersection with the horizontal line at `y`.
    pub fn horizontal_span(&self, y: f64) -> Option<(f64, f64)> {
        let v = &self.vertices;
        let n = v.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            if (a.y - y) * (b.y - y) > 0.0 {
                continue;
            }
            if a.y == b.y {
                lo = lo.min(a.x.min(b.x));
                hi = hi.max(a.x.max(b.x));
            } else {
                let x = a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x);
                lo = lo.min(x);
                hi = hi.max(x);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Copy rotated by `angle` about the origin, then translated.
    pub fn transformed(&self, angle: f64, shift: Point) -> Self {
        Self::from_clean(
            self.vertices
                .iter()
                .map(|&p| p.rotate(angle) + shift)
                .collect(),
        )
    }

    /// Copy scaled about the origin by `s > 0`.
    pub fn scaled(&self, s: f64) -> Self {
        Self::from_clean(self.vertices.iter().map(|&p| p * s).collect())
    }
}

/// Shoelace signed area (positive for counterclockwise order), taken about
/// the first vertex to avoid cancellation far from the origin.
pub fn signed_area(vs: &[Point]) -> f64 {
    let n = vs.len();
    if n < 3 {
        return 0.0;
    }
    let o = vs[0];
    0.5 * (1..n - 1)
        .map(|i| (vs[i] - o).cross(vs[i + 1] - o))
        .sum::<f64>()
}

/// Area centroid of a simple polygon; vertex mean if the area vanishes.
pub fn centroid(vs: &[Point]) -> Point {
    let n = vs.len();
    let mut a = 0.0;
    let mut c = Point::ORIGIN;
    // Shifting by the first vertex keeps the sums well conditioned.
    let o = vs[0];
    for i in 0..n {
        let p = vs[i] - o;
        let q = vs[(i + 1) % n] - o;
        let w = p.cross(q);
        a += w;
        c = c + (p + q) * w;
    }
    if a.abs() <= f64::MIN_POSITIVE {
        let sum = vs.iter().fold(Point::ORIGIN, |acc, &p| acc + p);
        return sum * (1.0 / n as f64);
    }
    o + c * (1.0 / (3.0 * a))
}

pub fn bounding_box(vs: &[Point]) -> (Point, Point) {
    vs.iter().fold(
        (
            Point::new(f64::INFINITY, f64::INFINITY),
            Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        ),
        |(lo, hi), p| {
            (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        },
    )
}

/// Clips a convex polygon to the half-plane `{p : a · p <= b}`.
pub fn clip_half_plane(poly: &[Point], a: Point, b: f64) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let dp = a.dot(p) - b;
        let dq = a.dot(q) - b;
        if dp <= 0.0 {
            out.push(p);
        }
        if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
            out.push(p.lerp(q, dp / (dp - dq)));
        }
    }
    out
}

/// Clips a convex polygon to the vertical slab `x0 <= x <= x1`.
pub fn clip_vertical_slab(poly: &[Point], x0: f64, x1: f64) -> Vec<Point> {
    let left = clip_half_plane(poly, Point::new(-1.0, 0.0), -x0);
    clip_half_plane(&left, Point::new(1.0, 0.0), x1)
}

/// Clips a convex polygon to the horizontal slab `y0 <= y <= y1`.
pub fn clip_horizontal_slab(poly: &[Point], y0: f64, y1: f64) -> Vec<Point> {
    let below = clip_half_plane(poly, Point::new(0.0, -1.0), -y0);
    clip_half_plane(&below, Point::new(0.0, 1.0), y1)
}

fn bbox_extent(vs: &[Point]) -> f64 {
    let (lo, hi) = bounding_box(vs);
    (hi.x - lo.x).max(hi.y - lo.y)
}

fn dedup_cyclic(vs: Vec<Point>, tol: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(vs.len());
    for p in vs {
        if out.last().is_none_or(|q| q.dist(p) > tol) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(*out.last().unwrap()) <= tol {
        out.pop();
    }
    out
}

/// Removes vertices whose incident edges continue in the same direction.
/// Fails on reflex vertices or spikes.
fn collapse_collinear(mut vs: Vec<Point>) -> Result<Vec<Point>> {
    loop {
        let n = vs.len();
        if n < 3 {
            return Ok(vs);
        }
        let mut removed = None;
        for i in 0..n {
            let prev = vs[(i + n - 1) % n];
            let next = vs[(i + 1) % n];
            let e0 = vs[i] - prev;
            let e1 = next - vs[i];
            let sine = e0.cross(e1) / (e0.norm() * e1.norm());
            if sine.abs() <= TAU_GEOM {
                if e0.dot(e1) > 0.0 {
                    removed = Some(i);
                    break;
                }
                return Err(Error::InvalidBody("polygon folds back on itself".into()));
            }
            if sine < 0.0 {
                return Err(Error::InvalidBody(format!(
                    "polygon is not convex at vertex ({}, {})",
                    vs[i].x, vs[i].y
                )));
            }
        }
        match removed {
            Some(i) => {
                vs.remove(i);
            }
            None => return Ok(vs),
        }
    }
}
