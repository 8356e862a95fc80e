use std::f64::consts::TAU;

use super::polygon::signed_area;
use super::{Point, Polygon};
use crate::error::{Error, Result};
use crate::TAU_GEOM;

/// One piece of an arc-polygon boundary, traversed counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryElement {
    Segment {
        start: Point,
        end: Point,
    },
    /// Counterclockwise arc from `start_angle` through `sweep > 0` radians.
    Arc {
        center: Point,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
}

impl BoundaryElement {
    pub fn start(&self) -> Point {
        match *self {
            BoundaryElement::Segment { start, .. } => start,
            BoundaryElement::Arc {
                center,
                radius,
                start_angle,
                ..
            } => center + Point::unit(start_angle) * radius,
        }
    }

    pub fn end(&self) -> Point {
        match *self {
            BoundaryElement::Segment { end, .. } => end,
            BoundaryElement::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => center + Point::unit(start_angle + sweep) * radius,
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            BoundaryElement::Segment { start, end } => start.dist(end),
            BoundaryElement::Arc { radius, sweep, .. } => radius * sweep,
        }
    }

    /// Point at fraction `s ∈ [0, 1]` along the element.
    pub fn point_at(&self, s: f64) -> Point {
        match *self {
            BoundaryElement::Segment { start, end } => start.lerp(end, s),
            BoundaryElement::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => center + Point::unit(start_angle + s * sweep) * radius,
        }
    }
}

/// Convex region bounded by alternating segments and circular arcs of one
/// common radius, i.e. a convex polygon (the arc centers) dilated by that radius.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcPolygon {
    elements: Vec<BoundaryElement>,
    radius: f64,
    core: Polygon,
}

impl ArcPolygon {
    /// Exterior parallel of `core` at distance `radius`: every edge pushed out
    /// by `radius`, joined by arcs centered on the vertices.
    pub fn dilate(core: &Polygon, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(crate::error::out_of_range("radius", radius, "r > 0"));
        }
        let vs = core.vertices();
        let outward: Vec<Point> = core.inward_normals().iter().map(|&n| -n).collect();
        let n = vs.len();
        let mut elements = Vec::with_capacity(2 * n);
        for i in 0..n {
            let before = outward[(i + n - 1) % n];
            let after = outward[i];
            let sweep = before.cross(after).atan2(before.dot(after));
            elements.push(BoundaryElement::Arc {
                center: vs[i],
                radius,
                start_angle: before.angle(),
                sweep,
            });
            elements.push(BoundaryElement::Segment {
                start: vs[i] + after * radius,
                end: vs[(i + 1) % n] + after * radius,
            });
        }
        Ok(ArcPolygon {
            elements,
            radius,
            core: core.clone(),
        })
    }

    /// Validates a cyclic element list: alternating kinds, one common radius,
    /// closed, tangent-continuous and turning exactly once.
    pub fn new(elements: Vec<BoundaryElement>) -> Result<Self> {
        let n = elements.len();
        if n < 6 || !n.is_multiple_of(2) {
            return Err(Error::InvalidBody(
                "arc polygon needs an even number (>= 6) of alternating elements".into(),
            ));
        }
        let mut radius = None;
        let mut centers = Vec::with_capacity(n / 2);
        let mut turning = 0.0;
        let extent = elements
            .iter()
            .map(|e| e.start().norm())
            .fold(1.0f64, f64::max);
        let tol = TAU_GEOM * extent;
        for (i, el) in elements.iter().enumerate() {
            let next = &elements[(i + 1) % n];
            let is_arc = matches!(el, BoundaryElement::Arc { .. });
            if is_arc == matches!(next, BoundaryElement::Arc { .. }) {
                return Err(Error::InvalidBody("elements must alternate".into()));
            }
            if el.end().dist(next.start()) > tol {
                return Err(Error::InvalidBody(format!(
                    "boundary is open after element {i}"
                )));
            }
            if let BoundaryElement::Arc {
                center,
                radius: r,
                start_angle,
                sweep,
            } = *el
            {
                if !(sweep > 0.0 && r > 0.0) {
                    return Err(Error::InvalidBody(
                        "arcs need positive radius and sweep".into(),
                    ));
                }
                match radius {
                    None => radius = Some(r),
                    Some(r0) if (r - r0).abs() > tol => {
                        return Err(Error::InvalidBody("arcs must share one radius".into()))
                    }
                    _ => {}
                }
                turning += sweep;
                centers.push(center);
                let tangent_in = Point::unit(start_angle).perp();
                let tangent_out = Point::unit(start_angle + sweep).perp();
                let prev = &elements[(i + n - 1) % n];
                for (seg, tangent) in [(prev, tangent_in), (next, tangent_out)] {
                    if let BoundaryElement::Segment { start, end } = *seg {
                        let d = end - start;
                        if d.norm() > tol && (d * (1.0 / d.norm())).dist(tangent) > 1e-6 {
                            return Err(Error::InvalidBody(
                                "segment direction does not match arc tangent".into(),
                            ));
                        }
                    }
                }
            }
        }
        if (turning - TAU).abs() > 1e-9 {
            return Err(Error::InvalidBody(format!(
                "arc sweeps total {turning}, expected 2π"
            )));
        }
        let core = Polygon::new(centers)?;
        Ok(ArcPolygon {
            elements,
            radius: radius.expect("at least one arc"),
            core,
        })
    }

    pub fn elements(&self) -> &[BoundaryElement] {
        &self.elements
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The polygon of arc centers.
    pub fn core(&self) -> &Polygon {
        &self.core
    }

    pub fn perimeter(&self) -> f64 {
        self.elements.iter().map(BoundaryElement::length).sum()
    }

    /// Chord polygon (shoelace) plus one circular segment per arc.
    pub fn area(&self) -> f64 {
        let chord: Vec<Point> = self.elements.iter().map(BoundaryElement::start).collect();
        let caps: f64 = self
            .elements
            .iter()
            .map(|e| match *e {
                BoundaryElement::Arc { radius, sweep, .. } => {
                    0.5 * radius * radius * (sweep - sweep.sin())
                }
                BoundaryElement::Segment { .. } => 0.0,
            })
            .sum();
        signed_area(&chord) + caps
    }

    pub fn contains(&self, p: Point) -> bool {
        self.core.distance_to(p) <= self.radius + TAU_GEOM
    }

    /// Closest boundary point of an interior `p`: push the nearest core
    /// boundary point outward by the radius.
    pub fn nearest_on_boundary(&self, p: Point) -> (Point, f64) {
        let (q, d) = self.core.nearest_on_boundary(p);
        if self.core.contains(p) {
            let dir = if d > 0.0 {
                (q - p) * (1.0 / d)
            } else {
                let i = (0..self.core.len())
                    .find(|&i| self.core.edge_distance(i, p).abs() <= TAU_GEOM)
                    .unwrap_or(0);
                -self.core.inward_normals()[i]
            };
            (q + dir * self.radius, d + self.radius)
        } else {
            let dir = (p - q) * (1.0 / d);
            (q + dir * self.radius, self.radius - d)
        }
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let (lo, hi) = self.core.bounding_box();
        let r = Point::new(self.radius, self.radius);
        (lo - r, hi + r)
    }

    pub fn diameter(&self) -> f64 {
        self.core.diameter() + 2.0 * self.radius
    }

    /// `per_element` evenly spaced points on every element.
    pub fn boundary_samples(&self, per_element: usize) -> Vec<Point> {
        self.elements
            .iter()
            .flat_map(|e| (0..per_element).map(move |k| e.point_at(k as f64 / per_element as f64)))
            .collect()
    }

    pub fn with_radius(&self, radius: f64) -> Result<Self> {
        ArcPolygon::dilate(&self.core, radius)
    }

    pub fn transformed(&self, angle: f64, shift: Point) -> Self {
        ArcPolygon::dilate(&self.core.transformed(angle, shift), self.radius)
            .expect("radius already validated")
    }

    pub fn scaled(&self, s: f64) -> Self {
        ArcPolygon::dilate(&self.core.scaled(s), self.radius * s).expect("radius already validated")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rounded_square_measures() {
        let sq = Polygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        let ap = ArcPolygon::dilate(&sq, 0.25).unwrap();
        assert!((ap.perimeter() - (4.0 + PI / 2.0)).abs() < 1e-14);
        assert!((ap.area() - (2.0 + PI / 16.0)).abs() < 1e-14);
        assert!(ap.contains(Point::new(-0.25, 0.5)));
        assert!(ap.contains(Point::new(
            1.0 + 0.25 / 2f64.sqrt(),
            1.0 + 0.25 / 2f64.sqrt()
        )));
        assert!(!ap.contains(Point::new(1.2, 1.2)));
    }

    #[test]
    fn elements_round_trip_through_validation() {
        let tri = Polygon::regular(3, 1.0, Point::ORIGIN, 0.2).unwrap();
        let ap = ArcPolygon::dilate(&tri, 0.3).unwrap();
        let rebuilt = ArcPolygon::new(ap.elements().to_vec()).unwrap();
        assert!((rebuilt.area() - ap.area()).abs() < 1e-14);
        assert_eq!(rebuilt.core().len(), 3);
    }

    #[test]
    fn rejects_mismatched_radius_and_open_boundary() {
        let sq = Polygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        let mut els = ArcPolygon::dilate(&sq, 0.25).unwrap().elements().to_vec();
        if let BoundaryElement::Arc { radius, .. } = &mut els[0] {
            *radius = 0.3;
        }
        assert!(ArcPolygon::new(els).is_err());
        let mut els = ArcPolygon::dilate(&sq, 0.25).unwrap().elements().to_vec();
        els.swap(0, 2);
        assert!(ArcPolygon::new(els).is_err());
    }

    #[test]
    fn nearest_boundary_point() {
        let sq = Polygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        let ap = ArcPolygon::dilate(&sq, 0.25).unwrap();
        let (y, d) = ap.nearest_on_boundary(Point::new(0.5, 0.2));
        assert!((d - 0.45).abs() < 1e-15);
        assert!(y.dist(Point::new(0.5, -0.25)) < 1e-15);
        let (y, d) = ap.nearest_on_boundary(Point::new(1.1, 1.1));
        let expect = 0.25 - 0.1 * 2f64.sqrt();
        assert!((d - expect).abs() < 1e-14);
        assert!((y.dist(Point::new(1.0, 1.0)) - 0.25).abs() < 1e-14);
    }
}
