//! Interior and exterior parallel bodies (erosion and dilation by a closed
//! disk) with exact perimeter and area bookkeeping.
//!
//! For a closed convex set the Minkowski difference `X - B̄_r` coincides with
//! the erosion `{x : B̄_r(x) ⊆ X}`, which is what is computed here. Polygons
//! erode to polygons; dilations of polygons are [`ArcPolygon`]s whose perimeter
//! and area are exactly `ℓ + 2πr` and `𝒜 + ℓr + πr²`. Ellipses go through an
//! inscribed polygon proxy whose resolution is reported with the result.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geom::{clip_half_plane, ArcPolygon, ConvexBody, Polygon, DEFAULT_PROXY_N};
use crate::TAU_GEOM;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Interior,
    Exterior,
    /// `(X_r)^r`: erosion followed by dilation.
    Sandwich,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParallelBody {
    pub body: ConvexBody,
    pub offset: f64,
    pub provenance: Provenance,
    /// Vertex count of the polygon that stood in for an ellipse, if any.
    pub proxy_resolution: Option<usize>,
}

impl ParallelBody {
    pub fn area(&self) -> f64 {
        self.body.area()
    }

    pub fn perimeter(&self) -> f64 {
        self.body.perimeter()
    }
}

fn check_offset(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(crate::error::out_of_range("r", r, "r > 0"))
    }
}

/// Intersection of the edge half-planes of `poly`, each pushed inward by `r`.
/// `None` when the result has no interior (fewer than three vertices or area
/// below `TAU_GEOM²`).
pub fn erode_polygon(poly: &Polygon, r: f64) -> Option<Polygon> {
    let mut region = poly.vertices().to_vec();
    for (i, n) in poly.inward_normals().iter().enumerate() {
        // keep n · p >= c_i + r
        let c = poly.edge_distance(i, crate::geom::Point::ORIGIN);
        region = clip_half_plane(&region, -*n, c - r);
        if region.len() < 3 {
            return None;
        }
    }
    if crate::geom::signed_area(&region) < TAU_GEOM * TAU_GEOM {
        return None;
    }
    let (lo, hi) = poly.bounding_box();
    let tol = 1e-15 * (hi.x - lo.x).max(hi.y - lo.y);
    Polygon::new(region.clone())
        .ok()
        .or_else(|| Polygon::from_clipped(region, tol))
}

/// `X_r = {x : B̄_r(x) ⊆ X}`; `Ok(None)` when the erosion is empty.
pub fn interior_parallel(body: &ConvexBody, r: f64) -> Result<Option<ParallelBody>> {
    interior_parallel_with_proxy(body, r, DEFAULT_PROXY_N)
}

/// [`interior_parallel`] with an explicit ellipse proxy resolution.
pub fn interior_parallel_with_proxy(
    body: &ConvexBody,
    r: f64,
    proxy_n: usize,
) -> Result<Option<ParallelBody>> {
    check_offset(r)?;
    let mut proxy_resolution = None;
    let eroded = match body {
        ConvexBody::Polygon(poly) => erode_polygon(poly, r).map(ConvexBody::Polygon),
        ConvexBody::Disk { center, radius } => (r < *radius).then(|| ConvexBody::Disk {
            center: *center,
            radius: radius - r,
        }),
        ConvexBody::Ellipse(e) => {
            proxy_resolution = Some(proxy_n);
            erode_polygon(&e.polygon_proxy(proxy_n)?, r).map(ConvexBody::Polygon)
        }
        ConvexBody::ArcPolygon(ap) => {
            let rho = ap.radius();
            if r < rho {
                Some(ConvexBody::ArcPolygon(ap.with_radius(rho - r)?))
            } else if r == rho {
                Some(ConvexBody::Polygon(ap.core().clone()))
            } else {
                erode_polygon(ap.core(), r - rho).map(ConvexBody::Polygon)
            }
        }
        ConvexBody::Segment { .. } => None,
    };
    Ok(eroded.map(|body| ParallelBody {
        body,
        offset: r,
        provenance: Provenance::Interior,
        proxy_resolution,
    }))
}

/// `X^r = X + B̄_r`.
pub fn exterior_parallel(body: &ConvexBody, r: f64) -> Result<ParallelBody> {
    exterior_parallel_with_proxy(body, r, DEFAULT_PROXY_N)
}

pub fn exterior_parallel_with_proxy(
    body: &ConvexBody,
    r: f64,
    proxy_n: usize,
) -> Result<ParallelBody> {
    check_offset(r)?;
    let mut proxy_resolution = None;
    let dilated = match body {
        ConvexBody::Polygon(poly) => ConvexBody::ArcPolygon(ArcPolygon::dilate(poly, r)?),
        ConvexBody::Disk { center, radius } => ConvexBody::Disk {
            center: *center,
            radius: radius + r,
        },
        ConvexBody::Ellipse(e) => {
            proxy_resolution = Some(proxy_n);
            ConvexBody::ArcPolygon(ArcPolygon::dilate(&e.polygon_proxy(proxy_n)?, r)?)
        }
        ConvexBody::ArcPolygon(ap) => ConvexBody::ArcPolygon(ap.with_radius(ap.radius() + r)?),
        ConvexBody::Segment { .. } => {
            return Err(Error::DegenerateBody(
                "segments have no exterior parallel in this model".into(),
            ))
        }
    };
    Ok(ParallelBody {
        body: dilated,
        offset: r,
        provenance: Provenance::Exterior,
        proxy_resolution,
    })
}

/// `(X_r)^r`, a convex subset of `X`; `Ok(None)` when `X_r` is empty.
pub fn sandwich(body: &ConvexBody, r: f64) -> Result<Option<ParallelBody>> {
    sandwich_with_proxy(body, r, DEFAULT_PROXY_N)
}

pub fn sandwich_with_proxy(
    body: &ConvexBody,
    r: f64,
    proxy_n: usize,
) -> Result<Option<ParallelBody>> {
    let Some(inner) = interior_parallel_with_proxy(body, r, proxy_n)? else {
        return Ok(None);
    };
    let mut outer = exterior_parallel_with_proxy(&inner.body, r, proxy_n)?;
    outer.provenance = Provenance::Sandwich;
    outer.proxy_resolution = inner.proxy_resolution;
    Ok(Some(outer))
}

/// Both sides of the two erosion inequalities
/// `𝒜(X) >= 𝒜((X_r)^r) = πr² + ℓ(∂X_r)r + 𝒜(X_r)` and
/// `ℓ(∂X) >= ℓ(∂(X_r)^r) = 2πr + ℓ(∂X_r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteinerReport {
    pub r: f64,
    pub area_body: f64,
    pub area_sandwich: f64,
    pub area_interior: f64,
    pub perimeter_body: f64,
    pub perimeter_sandwich: f64,
    pub perimeter_interior: f64,
    /// `𝒜(X) - 𝒜((X_r)^r)`, nonnegative up to `TAU_GEOM`.
    pub gap_area: f64,
    /// `ℓ(∂X) - ℓ(∂(X_r)^r)`, nonnegative up to `TAU_GEOM`.
    pub gap_perimeter: f64,
    /// `𝒜((X_r)^r) - (πr² + ℓ(∂X_r)r + 𝒜(X_r))`, zero up to rounding.
    pub area_residual: f64,
    /// `ℓ(∂(X_r)^r) - (2πr + ℓ(∂X_r))`, zero up to rounding.
    pub perimeter_residual: f64,
    pub proxy_resolution: Option<usize>,
}

impl SteinerReport {
    pub fn inequalities_hold(&self) -> bool {
        self.gap_area >= -TAU_GEOM && self.gap_perimeter >= -TAU_GEOM
    }
}

pub fn steiner_report(body: &ConvexBody, r: f64) -> Result<SteinerReport> {
    steiner_report_with_proxy(body, r, DEFAULT_PROXY_N)
}

pub fn steiner_report_with_proxy(
    body: &ConvexBody,
    r: f64,
    proxy_n: usize,
) -> Result<SteinerReport> {
    let inner = interior_parallel_with_proxy(body, r, proxy_n)?.ok_or(Error::EmptyErosion { r })?;
    let outer = exterior_parallel_with_proxy(&inner.body, r, proxy_n)?;
    let (area_body, perimeter_body) = (body.area(), body.perimeter());
    let (area_interior, perimeter_interior) = (inner.area(), inner.perimeter());
    let (area_sandwich, perimeter_sandwich) = (outer.area(), outer.perimeter());
    Ok(SteinerReport {
        r,
        area_body,
        area_sandwich,
        area_interior,
        perimeter_body,
        perimeter_sandwich,
        perimeter_interior,
        gap_area: area_body - area_sandwich,
        gap_perimeter: perimeter_body - perimeter_sandwich,
        area_residual: area_sandwich - (PI * r * r + perimeter_interior * r + area_interior),
        perimeter_residual: perimeter_sandwich - (TAU * r + perimeter_interior),
        proxy_resolution: inner.proxy_resolution,
    })
}

/// Radius of the largest inscribed disk. Exact for disks and ellipses, by
/// bisection on erosion emptiness for polygons.
pub fn inradius(body: &ConvexBody) -> f64 {
    match body {
        ConvexBody::Polygon(poly) => polygon_inradius(poly),
        ConvexBody::Disk { radius, .. } => *radius,
        ConvexBody::Ellipse(e) => e.semi_minor(),
        ConvexBody::ArcPolygon(ap) => ap.radius() + polygon_inradius(ap.core()),
        ConvexBody::Segment { .. } => 0.0,
    }
}

fn polygon_inradius(poly: &Polygon) -> f64 {
    let (mut lo, mut hi) = (0.0, 0.5 * poly.diameter());
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if erode_polygon(poly, mid).is_some() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn square(side: f64) -> ConvexBody {
        ConvexBody::Polygon(Polygon::rectangle(0.0, 0.0, side, side).unwrap())
    }

    #[test]
    fn square_erodes_to_concentric_square() {
        let inner = interior_parallel(&square(1.0), 0.2).unwrap().unwrap();
        let ConvexBody::Polygon(p) = &inner.body else {
            panic!("expected polygon")
        };
        assert_eq!(p.len(), 4);
        assert!((inner.area() - 0.36).abs() < 1e-14);
        let (lo, hi) = p.bounding_box();
        assert!((lo.x - 0.2).abs() < 1e-15 && (hi.y - 0.8).abs() < 1e-15);
    }

    #[test]
    fn disk_parallels() {
        let inner = interior_parallel(&ConvexBody::unit_disk(), 0.25)
            .unwrap()
            .unwrap();
        assert_eq!(
            inner.body,
            ConvexBody::Disk {
                center: Point::ORIGIN,
                radius: 0.75
            }
        );
        assert!(interior_parallel(&ConvexBody::unit_disk(), 1.0)
            .unwrap()
            .is_none());
        let outer = exterior_parallel(&ConvexBody::unit_disk(), 1.0).unwrap();
        assert_eq!(
            outer.body,
            ConvexBody::Disk {
                center: Point::ORIGIN,
                radius: 2.0
            }
        );
    }

    #[test]
    fn erosion_at_inradius_is_empty() {
        let e = interior_parallel(&square(1.0), 0.5).unwrap();
        assert!(e.map_or(0.0, |b| b.area()) < 1e-12);
        assert!(interior_parallel(&square(1.0), 0.6).unwrap().is_none());
    }

    #[test]
    fn exterior_of_square_obeys_steiner() {
        let outer = exterior_parallel(&square(1.0), 0.25).unwrap();
        assert!(matches!(outer.body, ConvexBody::ArcPolygon(_)));
        assert!((outer.perimeter() - (4.0 + PI / 2.0)).abs() < 1e-14);
        assert!((outer.area() - (2.0 + PI / 16.0)).abs() < 1e-14);
    }

    #[test]
    fn segment_has_no_exterior_parallel() {
        let seg = ConvexBody::segment(Point::ORIGIN, Point::new(1.0, 0.0)).unwrap();
        assert!(matches!(
            exterior_parallel(&seg, 0.1),
            Err(Error::DegenerateBody(_))
        ));
        assert!(interior_parallel(&seg, 0.1).unwrap().is_none());
    }

    #[test]
    fn invalid_offsets() {
        assert!(interior_parallel(&square(1.0), 0.0).is_err());
        assert!(exterior_parallel(&square(1.0), -1.0).is_err());
    }

    #[test]
    fn sandwich_of_disk_restores_disk() {
        let sw = sandwich(&ConvexBody::unit_disk(), 0.3).unwrap().unwrap();
        match sw.body {
            ConvexBody::Disk { radius, .. } => assert!((radius - 1.0).abs() < 1e-15),
            _ => panic!("expected disk"),
        }
        assert_eq!(sw.provenance, Provenance::Sandwich);
        assert!(sandwich(&square(1.0), 0.6).unwrap().is_none());
    }

    #[test]
    fn sandwich_of_square_is_rounded_square_inside() {
        let sw = sandwich(&square(1.0), 0.1).unwrap().unwrap();
        assert!((sw.perimeter() - (3.2 + 0.2 * PI)).abs() < 1e-14);
        let ConvexBody::ArcPolygon(ap) = &sw.body else {
            panic!("expected arc polygon")
        };
        let outer = square(1.0);
        let samples = ap.boundary_samples(12_500);
        assert!(samples.len() >= 100_000);
        assert!(samples.iter().all(|&p| outer.contains(p)));
    }

    #[test]
    fn steiner_report_for_disk_is_tight() {
        for r in [0.1, 0.5, 0.9] {
            let rep = steiner_report(&ConvexBody::unit_disk(), r).unwrap();
            assert!(rep.gap_area.abs() < 1e-12, "{rep:?}");
            assert!(rep.gap_perimeter.abs() < 1e-12);
        }
    }

    #[test]
    fn steiner_report_for_square() {
        let rep = steiner_report(&square(PI / 2.0), 0.1).unwrap();
        assert!((rep.gap_perimeter - (8.0 - TAU) * 0.1).abs() < 1e-12);
        assert!((rep.gap_perimeter - 0.171_681).abs() < 1e-6);
        assert!((rep.gap_area - (4.0 - PI) * 0.01).abs() < 1e-12);
        assert!(rep.area_residual.abs() < 1e-13 && rep.perimeter_residual.abs() < 1e-13);
        assert!(matches!(
            steiner_report(&square(1.0), 0.7),
            Err(Error::EmptyErosion { .. })
        ));
    }

    #[test]
    fn triangle_sandwich_perimeter_increases_to_boundary_length() {
        let tri = ConvexBody::Polygon(
            Polygon::new(vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(0.5, 3f64.sqrt() / 2.0),
            ])
            .unwrap(),
        );
        let lengths: Vec<f64> = (3..=10)
            .map(|k| {
                steiner_report(&tri, 2f64.powi(-k))
                    .unwrap()
                    .perimeter_sandwich
            })
            .collect();
        assert!(lengths.windows(2).all(|w| w[1] >= w[0]));
        assert!(lengths.iter().all(|&l| l <= 3.0));
        // ℓ(∂(X_r)^r) = 3 - (6√3 - 2π) r for the unit equilateral triangle
        let r = 2f64.powi(-10);
        assert!((lengths[7] - (3.0 - (6.0 * 3f64.sqrt() - TAU) * r)).abs() < 1e-12);
    }

    #[test]
    fn ellipse_parallels_report_proxy() {
        let e = ConvexBody::ellipse(Point::ORIGIN, 1.25, 1.0, 0.0).unwrap();
        let inner = interior_parallel_with_proxy(&e, 0.1, 512).unwrap().unwrap();
        assert_eq!(inner.proxy_resolution, Some(512));
        let rep = steiner_report_with_proxy(&e, 0.1, 512).unwrap();
        assert!(rep.inequalities_hold());
    }

    #[test]
    fn inradius_values() {
        // erosions thinner than TAU_GEOM count as empty
        assert!((inradius(&square(1.0)) - 0.5).abs() < TAU_GEOM);
        let tri = ConvexBody::Polygon(Polygon::regular(3, 1.0, Point::ORIGIN, 0.0).unwrap());
        assert!((inradius(&tri) - 0.5).abs() < TAU_GEOM);
    }
}
