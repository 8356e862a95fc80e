mod common;

use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use buffon_convex::bounds::g_bound;
use buffon_convex::buffon::{disk_closed_form, quad_buffon};
use buffon_convex::geom::pointwise_probability_exact;
use buffon_convex::parallel::{inradius, steiner_report};
use buffon_convex::{ConvexBody, Point, Polygon};
use common::random_convex_polygon;

fn polygon(seed: u64) -> Polygon {
    random_convex_polygon(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// A point strictly inside `poly`: a convex combination of its vertices.
fn interior_point(poly: &Polygon, weights: &[f64]) -> Point {
    let vs = poly.vertices();
    let mut total = 0.0;
    let mut p = Point::ORIGIN;
    for (i, v) in vs.iter().enumerate() {
        let w = weights[i % weights.len()] + 0.05;
        p = p + *v * w;
        total += w;
    }
    p * (1.0 / total)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pointwise_probability_is_rigid_motion_invariant(
        seed in any::<u64>(),
        weights in prop::collection::vec(0.0..1.0f64, 1..8),
        l in 0.01..1.5f64,
        angle in 0.0..TAU,
        dx in -10.0..10.0f64,
        dy in -10.0..10.0f64,
    ) {
        let poly = polygon(seed);
        let x = interior_point(&poly, &weights);
        let body = ConvexBody::Polygon(poly);
        let moved = body.transformed(angle, Point::new(dx, dy));
        let p = pointwise_probability_exact(&body, x, l).unwrap();
        let q = pointwise_probability_exact(&moved, x.rotate(angle) + Point::new(dx, dy), l).unwrap();
        prop_assert!((p - q).abs() < 1e-9, "{p} vs {q}");
        prop_assert!((body.area() - moved.area()).abs() < 1e-9 * body.area());
    }

    #[test]
    fn pointwise_probability_is_scale_free(
        seed in any::<u64>(),
        weights in prop::collection::vec(0.0..1.0f64, 1..8),
        l in 0.01..1.5f64,
        s in 0.1..10.0f64,
    ) {
        let poly = polygon(seed);
        let x = interior_point(&poly, &weights);
        let body = ConvexBody::Polygon(poly);
        let p = pointwise_probability_exact(&body, x, l).unwrap();
        let q = pointwise_probability_exact(&body.scaled(s), x * s, l * s).unwrap();
        prop_assert!((p - q).abs() < 1e-9);
    }

    #[test]
    fn pointwise_probability_decreases_in_l(
        seed in any::<u64>(),
        weights in prop::collection::vec(0.0..1.0f64, 1..8),
        l in 0.01..1.5f64,
        dl in 0.0..0.5f64,
    ) {
        let poly = polygon(seed);
        let x = interior_point(&poly, &weights);
        let body = ConvexBody::Polygon(poly);
        let p = pointwise_probability_exact(&body, x, l).unwrap();
        let q = pointwise_probability_exact(&body, x, l + dl).unwrap();
        prop_assert!(q <= p + 1e-12);
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn pointwise_probability_respects_boundary_bound(
        seed in any::<u64>(),
        weights in prop::collection::vec(0.0..1.0f64, 1..8),
        l in 0.01..1.5f64,
    ) {
        let poly = polygon(seed);
        let x = interior_point(&poly, &weights);
        let body = ConvexBody::Polygon(poly);
        let (_, d) = body.nearest_boundary_point(x).unwrap();
        let p = pointwise_probability_exact(&body, x, l).unwrap();
        prop_assert!(p <= g_bound(d.min(l), l).unwrap() + 1e-12);
    }

    #[test]
    fn steiner_identities_hold(seed in any::<u64>(), u in 0.01..0.99f64) {
        let body = ConvexBody::Polygon(polygon(seed));
        let rep = steiner_report(&body, u * inradius(&body)).unwrap();
        prop_assert!(rep.area_residual.abs() <= 1e-10 * rep.area_body);
        prop_assert!(rep.perimeter_residual.abs() <= 1e-10 * rep.perimeter_body);
        prop_assert!(rep.gap_area >= 0.0 && rep.gap_perimeter >= 0.0);
        prop_assert!(rep.area_interior <= rep.area_sandwich);
        prop_assert!(rep.perimeter_interior <= rep.perimeter_sandwich);
    }

    #[test]
    fn disk_closed_form_decreases(l in 0.0..1.99f64, dl in 1e-6..0.01f64) {
        let p = disk_closed_form(l).unwrap();
        prop_assert!(disk_closed_form((l + dl).min(2.0)).unwrap() < p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn quadrature_is_rigid_motion_and_scale_invariant(
        seed in any::<u64>(),
        l in 0.05..0.5f64,
        angle in 0.0..TAU,
        s in 0.5..2.0f64,
    ) {
        let body = ConvexBody::Polygon(polygon(seed));
        let p = quad_buffon(&body, l, 128).unwrap().value;
        let moved = body.transformed(angle, Point::new(3.0, -1.0)).scaled(s);
        let q = quad_buffon(&moved, l * s, 128).unwrap().value;
        prop_assert!((p - q).abs() < 1e-3, "{p} vs {q}");
    }
}
