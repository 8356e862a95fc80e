use std::f64::consts::{PI, TAU};

use super::{ArcPolygon, Ellipse, Point, Polygon};
use crate::error::{Error, Result};
use crate::TAU_GEOM;

/// A bounded convex set in the plane.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody {
    Polygon(Polygon),
    Disk {
        center: Point,
        radius: f64,
    },
    Ellipse(Ellipse),
    ArcPolygon(ArcPolygon),
    /// Degenerate body with empty interior. A needle of positive length
    /// dropped on a segment stays inside with probability 0.
    Segment {
        start: Point,
        end: Point,
    },
}

impl ConvexBody {
    pub fn polygon(vertices: Vec<Point>) -> Result<Self> {
        Polygon::new(vertices).map(ConvexBody::Polygon)
    }

    pub fn disk(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidBody(format!(
                "disk radius must be > 0, got {radius}"
            )));
        }
        Ok(ConvexBody::Disk { center, radius })
    }

    pub fn unit_disk() -> Self {
        ConvexBody::Disk {
            center: Point::ORIGIN,
            radius: 1.0,
        }
    }

    pub fn ellipse(center: Point, a: f64, b: f64, rotation: f64) -> Result<Self> {
        Ellipse::new(center, a, b, rotation).map(ConvexBody::Ellipse)
    }

    pub fn segment(start: Point, end: Point) -> Result<Self> {
        if start.dist(end) <= TAU_GEOM {
            return Err(Error::DegenerateBody("segment endpoints coincide".into()));
        }
        Ok(ConvexBody::Segment { start, end })
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            ConvexBody::Polygon(_) => "polygon",
            ConvexBody::Disk { .. } => "disk",
            ConvexBody::Ellipse(_) => "ellipse",
            ConvexBody::ArcPolygon(_) => "arc-polygon",
            ConvexBody::Segment { .. } => "segment",
        }
    }

    pub fn is_segment(&self) -> bool {
        matches!(self, ConvexBody::Segment { .. })
    }

    /// Closed containment, exact up to `TAU_GEOM`.
    pub fn contains(&self, p: Point) -> bool {
        match self {
            ConvexBody::Polygon(poly) => poly.contains(p),
            ConvexBody::Disk { center, radius } => p.dist(*center) <= radius + TAU_GEOM,
            ConvexBody::Ellipse(e) => e.contains(p),
            ConvexBody::ArcPolygon(ap) => ap.contains(p),
            ConvexBody::Segment { start, end } => {
                let e = *end - *start;
                let t = ((p - *start).dot(e) / e.dot(e)).clamp(0.0, 1.0);
                (*start + e * t).dist(p) <= TAU_GEOM
            }
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            ConvexBody::Polygon(poly) => poly.perimeter(),
            ConvexBody::Disk { radius, .. } => TAU * radius,
            ConvexBody::Ellipse(e) => e.perimeter(),
            ConvexBody::ArcPolygon(ap) => ap.perimeter(),
            // boundary of a segment, traversed both ways
            ConvexBody::Segment { start, end } => 2.0 * start.dist(*end),
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            ConvexBody::Polygon(poly) => poly.area(),
            ConvexBody::Disk { radius, .. } => PI * radius * radius,
            ConvexBody::Ellipse(e) => e.area(),
            ConvexBody::ArcPolygon(ap) => ap.area(),
            ConvexBody::Segment { .. } => 0.0,
        }
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        match self {
            ConvexBody::Polygon(poly) => poly.bounding_box(),
            ConvexBody::Disk { center, radius } => (
                *center - Point::new(*radius, *radius),
                *center + Point::new(*radius, *radius),
            ),
            ConvexBody::Ellipse(e) => e.bounding_box(),
            ConvexBody::ArcPolygon(ap) => ap.bounding_box(),
            ConvexBody::Segment { start, end } => super::polygon::bounding_box(&[*start, *end]),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            ConvexBody::Polygon(poly) => poly.diameter(),
            ConvexBody::Disk { radius, .. } => 2.0 * radius,
            ConvexBody::Ellipse(e) => 2.0 * e.semi_major(),
            ConvexBody::ArcPolygon(ap) => ap.diameter(),
            ConvexBody::Segment { start, end } => start.dist(*end),
        }
    }

    /// Boundary point `y_x` closest to `x ∈ X` and the distance `|x - y_x|`.
    /// Ties go to the smallest boundary parameter: arc length from vertex 0
    /// for polygons, angle from the positive (major) axis for disks and ellipses.
    pub fn nearest_boundary_point(&self, x: Point) -> Result<(Point, f64)> {
        if !self.contains(x) {
            return Err(Error::NotInside { x: x.x, y: x.y });
        }
        Ok(match self {
            ConvexBody::Polygon(poly) => poly.nearest_on_boundary(x),
            ConvexBody::Disk { center, radius } => {
                let v = x - *center;
                let r = v.norm();
                let dir = if r > 0.0 {
                    v * (1.0 / r)
                } else {
                    Point::new(1.0, 0.0)
                };
                (*center + dir * *radius, (radius - r).max(0.0))
            }
            ConvexBody::Ellipse(e) => e.nearest_on_boundary(x),
            ConvexBody::ArcPolygon(ap) => ap.nearest_on_boundary(x),
            ConvexBody::Segment { .. } => (x, 0.0),
        })
    }

    /// Rigid motion: rotate about the origin by `angle`, then translate.
    pub fn transformed(&self, angle: f64, shift: Point) -> Self {
        match self {
            ConvexBody::Polygon(poly) => ConvexBody::Polygon(poly.transformed(angle, shift)),
            ConvexBody::Disk { center, radius } => ConvexBody::Disk {
                center: center.rotate(angle) + shift,
                radius: *radius,
            },
            ConvexBody::Ellipse(e) => ConvexBody::Ellipse(e.transformed(angle, shift)),
            ConvexBody::ArcPolygon(ap) => ConvexBody::ArcPolygon(ap.transformed(angle, shift)),
            ConvexBody::Segment { start, end } => ConvexBody::Segment {
                start: start.rotate(angle) + shift,
                end: end.rotate(angle) + shift,
            },
        }
    }

    /// Homothety about the origin with factor `s > 0`.
    pub fn scaled(&self, s: f64) -> Self {
        match self {
            ConvexBody::Polygon(poly) => ConvexBody::Polygon(poly.scaled(s)),
            ConvexBody::Disk { center, radius } => ConvexBody::Disk {
                center: *center * s,
                radius: radius * s,
            },
            ConvexBody::Ellipse(e) => ConvexBody::Ellipse(e.scaled(s)),
            ConvexBody::ArcPolygon(ap) => ConvexBody::ArcPolygon(ap.scaled(s)),
            ConvexBody::Segment { start, end } => ConvexBody::Segment {
                start: *start * s,
                end: *end * s,
            },
        }
    }
}

impl From<Polygon> for ConvexBody {
    fn from(p: Polygon) -> Self {
        ConvexBody::Polygon(p)
    }
}

impl From<Ellipse> for ConvexBody {
    fn from(e: Ellipse) -> Self {
        ConvexBody::Ellipse(e)
    }
}

impl From<ArcPolygon> for ConvexBody {
    fn from(a: ArcPolygon) -> Self {
        ConvexBody::ArcPolygon(a)
    }
}

/// A directed needle: origin, length and angle from the horizontal axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Needle {
    pub origin: Point,
    pub length: f64,
    pub angle: f64,
}

impl Needle {
    pub fn new(origin: Point, length: f64, angle: f64) -> Self {
        Needle {
            origin,
            length,
            angle,
        }
    }

    /// `origin + length · (cos θ, sin θ)`.
    #[inline]
    pub fn endpoint(&self) -> Point {
        self.origin + Point::unit(self.angle) * self.length
    }

    /// For a convex body containing the origin, the needle lies inside iff its
    /// endpoint does.
    pub fn lies_in(&self, body: &ConvexBody) -> bool {
        body.contains(self.origin) && body.contains(self.endpoint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_containment() {
        let d = ConvexBody::unit_disk();
        assert!(d.contains(Point::new(0.0, 0.0)));
        assert!(d.contains(Point::new(1.0, 0.0)));
        assert!(!d.contains(Point::new(1.0, 0.1)));
    }

    #[test]
    fn basic_measures() {
        let d = ConvexBody::unit_disk();
        assert_eq!(d.perimeter(), TAU);
        assert_eq!(d.area(), PI);
        let sq = ConvexBody::polygon(vec![
            Point::new(0.0, 0.0),
            Point::new(PI / 2.0, 0.0),
            Point::new(PI / 2.0, PI / 2.0),
            Point::new(0.0, PI / 2.0),
        ])
        .unwrap();
        assert!((sq.perimeter() - TAU).abs() < 1e-14);
        assert!((sq.area() - 2.467_401_100_272_339_6).abs() < 1e-14);
        let circle = ConvexBody::ellipse(Point::ORIGIN, 1.0, 1.0, 0.0).unwrap();
        assert!((circle.perimeter() - TAU).abs() < 1e-10 * TAU);
    }

    #[test]
    fn nearest_boundary_examples() {
        let d = ConvexBody::unit_disk();
        let (y, dist) = d.nearest_boundary_point(Point::new(0.5, 0.0)).unwrap();
        assert_eq!(y, Point::new(1.0, 0.0));
        assert_eq!(dist, 0.5);
        assert!(matches!(
            d.nearest_boundary_point(Point::new(2.0, 0.0)),
            Err(Error::NotInside { .. })
        ));
    }

    #[test]
    fn nearest_boundary_distance_matches_dense_scan_for_square_center() {
        let sq = ConvexBody::Polygon(Polygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap());
        let x = Point::new(0.5, 0.5);
        let (y, d) = sq.nearest_boundary_point(x).unwrap();
        // brute force over a boundary grid of 4·10⁴ samples
        let m = 10_000;
        let brute = (0..m)
            .flat_map(|k| {
                let t = k as f64 / m as f64;
                [
                    Point::new(t, 0.0),
                    Point::new(1.0, t),
                    Point::new(1.0 - t, 1.0),
                    Point::new(0.0, 1.0 - t),
                ]
            })
            .map(|p| p.dist(x))
            .fold(f64::INFINITY, f64::min);
        assert!((d - brute).abs() < 1e-12);
        assert_eq!(y, Point::new(0.5, 0.0));
    }

    #[test]
    fn segment_body() {
        let s = ConvexBody::segment(Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        assert!(s.contains(Point::new(0.5, 0.0)));
        assert!(!s.contains(Point::new(0.5, 0.1)));
        assert_eq!(s.area(), 0.0);
        assert!(ConvexBody::segment(Point::ORIGIN, Point::ORIGIN).is_err());
    }

    #[test]
    fn needle_endpoint() {
        let n = Needle::new(Point::new(1.0, 1.0), 2.0, PI / 2.0);
        let e = n.endpoint();
        assert!((e.x - 1.0).abs() < 1e-15 && (e.y - 3.0).abs() < 1e-15);
    }
}
