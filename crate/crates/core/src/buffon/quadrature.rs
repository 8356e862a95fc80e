use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::error::{out_of_range, Error, Result};
use crate::geom::{
    clip_horizontal_slab, clip_vertical_slab, polygon_pointwise, signed_area, ConvexBody, Point,
    Polygon,
};
use crate::parallel::erode_polygon;

/// Default number of grid cells across the longer side of the bounding box.
pub const DEFAULT_GRID: usize = 512;

/// Tolerance on `|ℓ(∂X) - 2π|` for routines that assume a normalized perimeter.
pub const PERIMETER_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// `|value - value at half the resolution|`.
    pub error_indicator: f64,
    pub grid: usize,
}

/// Deterministic `P_X(l) = (𝒜(X_l) + ∫_{X∖X_l} p_X(x, l) dx) / 𝒜(X)`.
///
/// `p ≡ 1` on the erosion `X_l`, whose area is exact. The layer `X∖X_l` is
/// integrated on a uniform grid of `grid` cells across the bounding box: each
/// cell contributes `𝒜(cell ∩ X) · p(centroid of cell ∩ X) - 𝒜(cell ∩ X_l)`,
/// with both clipped areas exact. Disks use concentric shells instead of
/// square cells.
pub fn quad_buffon(body: &ConvexBody, l: f64, grid: usize) -> Result<QuadratureResult> {
    if !(l >= 0.0) {
        return Err(out_of_range("l", l, "l >= 0"));
    }
    if grid < 2 {
        return Err(out_of_range("grid", grid as f64, "grid >= 2"));
    }
    let trivial = |value| QuadratureResult {
        value,
        error_indicator: 0.0,
        grid,
    };
    if l == 0.0 {
        return Ok(trivial(1.0));
    }
    if body.is_segment() || l > body.diameter() {
        return Ok(trivial(0.0));
    }
    let area = body.area();
    let fine = layer_split(body, l, grid)?;
    let coarse = layer_split(body, l, grid / 2)?;
    let value = ((fine.0 + fine.1) / area).clamp(0.0, 1.0);
    let coarse_value = ((coarse.0 + coarse.1) / area).clamp(0.0, 1.0);
    Ok(QuadratureResult {
        value,
        error_indicator: (value - coarse_value).abs(),
        grid,
    })
}

/// Quadrature value of `∫_{X∖X_l} p_X(x, l) dx` for a body of perimeter 2π.
pub fn boundary_layer_integral(body: &ConvexBody, l: f64, grid: usize) -> Result<f64> {
    if !(l > 0.0) {
        return Err(out_of_range("l", l, "l > 0"));
    }
    let perimeter = body.perimeter();
    if (perimeter - TAU).abs() > PERIMETER_TOLERANCE {
        return Err(Error::NotNormalized { perimeter });
    }
    Ok(layer_split(body, l, grid)?.1)
}

/// `(𝒜(X_l), ∫_{X∖X_l} p)`.
fn layer_split(body: &ConvexBody, l: f64, grid: usize) -> Result<(f64, f64)> {
    match body {
        ConvexBody::Polygon(poly) => Ok(polygon_layer(poly, l, grid)),
        ConvexBody::Disk { radius, .. } => Ok(disk_layer(*radius, l, grid)),
        other => Err(Error::UnsupportedVariant {
            op: "quad_buffon",
            variant: other.variant_name(),
        }),
    }
}

fn covers(span: Option<(f64, f64)>, x0: f64, x1: f64) -> bool {
    span.is_some_and(|(a, b)| a <= x0 && x1 <= b)
}

fn x_range(poly: &[Point]) -> (f64, f64) {
    poly.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.x), hi.max(p.x))
        })
}

fn polygon_layer(poly: &Polygon, l: f64, grid: usize) -> (f64, f64) {
    let inner = erode_polygon(poly, l);
    let eroded_area = inner.as_ref().map_or(0.0, Polygon::area);
    let (lo, hi) = poly.bounding_box();
    let h = (hi.x - lo.x).max(hi.y - lo.y) / grid as f64;
    let nx = (((hi.x - lo.x) / h).ceil() as usize).max(1);
    let ny = (((hi.y - lo.y) / h).ceil() as usize).max(1);

    let row = |j: usize| -> f64 {
        let y0 = lo.y + j as f64 * h;
        let y1 = y0 + h;
        let band = clip_horizontal_slab(poly.vertices(), y0, y1);
        if band.len() < 3 {
            return 0.0;
        }
        let inner_band = inner
            .as_ref()
            .map(|q| clip_horizontal_slab(q.vertices(), y0, y1))
            .filter(|b| b.len() >= 3);
        let inner_x = inner_band.as_deref().map(x_range);
        let spans = (poly.horizontal_span(y0), poly.horizontal_span(y1));
        let inner_spans = inner.as_ref().map_or((None, None), |q| {
            (q.horizontal_span(y0), q.horizontal_span(y1))
        });
        let (bx0, bx1) = x_range(&band);
        let i0 = (((bx0 - lo.x) / h).floor().max(0.0)) as usize;
        let i1 = (((bx1 - lo.x) / h).ceil() as usize).min(nx);
        let mut sum = 0.0;
        for i in i0..i1 {
            let x0 = lo.x + i as f64 * h;
            let x1 = x0 + h;
            if covers(inner_spans.0, x0, x1) && covers(inner_spans.1, x0, x1) {
                continue;
            }
            let (a, c) = if covers(spans.0, x0, x1) && covers(spans.1, x0, x1) {
                (h * h, Point::new(x0 + 0.5 * h, y0 + 0.5 * h))
            } else {
                let piece = clip_vertical_slab(&band, x0, x1);
                if piece.len() < 3 {
                    continue;
                }
                let a = signed_area(&piece);
                if a <= 0.0 {
                    continue;
                }
                (a, crate::geom::centroid(&piece))
            };
            let mut contribution = a * polygon_pointwise(poly, c, l);
            if let (Some(ib), Some((ix0, ix1))) = (&inner_band, inner_x) {
                if ix1 > x0 && ix0 < x1 {
                    let piece = clip_vertical_slab(ib, x0, x1);
                    if piece.len() >= 3 {
                        contribution -= signed_area(&piece);
                    }
                }
            }
            sum += contribution;
        }
        sum
    };

    let rows: Vec<f64> = (0..ny).into_par_iter().map(row).collect();
    (eroded_area, rows.iter().sum())
}

/// Shells of width `2R / grid` over `R - l <= ρ <= R`; `p` depends on `ρ` only
/// and is evaluated at each shell's area-centroid radius.
fn disk_layer(radius: f64, l: f64, grid: usize) -> (f64, f64) {
    let inner = (radius - l).max(0.0);
    let eroded_area = PI * inner * inner;
    let h = 2.0 * radius / grid as f64;
    let shells = (((radius - inner) / h).ceil() as usize).max(1);
    let dr = (radius - inner) / shells as f64;
    let layer = (0..shells)
        .map(|k| {
            let r0 = inner + k as f64 * dr;
            let r1 = if k + 1 == shells { radius } else { r0 + dr };
            let shell_area = PI * (r1 * r1 - r0 * r0);
            let rc = 2.0 / 3.0 * (r1.powi(3) - r0.powi(3)) / (r1 * r1 - r0 * r0);
            let dirs = crate::geom::admissible_directions(
                &ConvexBody::Disk {
                    center: Point::ORIGIN,
                    radius,
                },
                Point::new(rc.min(radius), 0.0),
                l,
            )
            .expect("shell centroid lies in the disk");
            shell_area * dirs.measure() / TAU
        })
        .sum();
    (eroded_area, layer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buffon::disk_closed_form;

    /// Axis-aligned square of side `s`: `P(l) = 1 - 4l/(πs) + l²/(πs²)` for
    /// `l <= s`, from integrating `(s - l|cos θ|)(s - l|sin θ|)` over θ.
    fn square_oracle(s: f64, l: f64) -> f64 {
        1.0 - 4.0 * l / (PI * s) + l * l / (PI * s * s)
    }

    fn square(s: f64) -> ConvexBody {
        ConvexBody::Polygon(Polygon::rectangle(0.0, 0.0, s, s).unwrap())
    }

    #[test]
    fn square_matches_oracle() {
        let s = PI / 2.0;
        for l in [0.05, 0.1, 0.2, 0.5] {
            let q = quad_buffon(&square(s), l, DEFAULT_GRID).unwrap();
            let exact = square_oracle(s, l);
            assert!((q.value - exact).abs() < 1e-4, "l={l}: {q:?} vs {exact}");
            assert!(q.error_indicator < 1e-3);
        }
        assert!((square_oracle(s, 0.1) - 0.920_233).abs() < 1e-6);
    }

    #[test]
    fn rotated_square_matches_oracle() {
        let body = square(1.0).transformed(0.37, Point::new(3.0, -1.0));
        let q = quad_buffon(&body, 0.2, DEFAULT_GRID).unwrap();
        assert!((q.value - square_oracle(1.0, 0.2)).abs() < 1e-4, "{q:?}");
    }

    #[test]
    fn disk_matches_closed_form() {
        for l in [0.1, 0.5, 1.0, 1.9] {
            let q = quad_buffon(&ConvexBody::unit_disk(), l, DEFAULT_GRID).unwrap();
            let exact = disk_closed_form(l).unwrap();
            assert!((q.value - exact).abs() < 1e-4, "l={l}: {q:?} vs {exact}");
        }
        let q = quad_buffon(&ConvexBody::unit_disk(), 2.0, DEFAULT_GRID).unwrap();
        assert!(q.value.abs() < 1e-3);
    }

    #[test]
    fn unsupported_and_trivial() {
        let e = ConvexBody::ellipse(Point::ORIGIN, 2.0, 1.0, 0.0).unwrap();
        assert!(matches!(
            quad_buffon(&e, 0.1, 64),
            Err(Error::UnsupportedVariant { .. })
        ));
        assert_eq!(quad_buffon(&square(1.0), 0.0, 64).unwrap().value, 1.0);
        assert_eq!(quad_buffon(&square(1.0), 2.0, 64).unwrap().value, 0.0);
    }

    #[test]
    fn layer_integral_requires_normalization() {
        assert!(matches!(
            boundary_layer_integral(&square(1.0), 0.1, 64),
            Err(Error::NotNormalized { .. })
        ));
        let v = boundary_layer_integral(&ConvexBody::unit_disk(), 0.1, DEFAULT_GRID).unwrap();
        assert!(v > 0.0 && v <= TAU * 0.1 - 0.2);
        let tiny = boundary_layer_integral(&ConvexBody::unit_disk(), 1e-4, DEFAULT_GRID).unwrap();
        assert!(tiny < 1e-3);
    }
}
