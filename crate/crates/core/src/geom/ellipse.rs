use std::f64::consts::{FRAC_PI_2, PI, TAU};

use super::{Point, Polygon};
use crate::error::{Error, Result};
use crate::numeric::integrate;
use crate::{TAU_GEOM, TAU_QUAD};

/// Default vertex count of the inscribed polygon standing in for an ellipse
/// wherever exact conic geometry is not available.
pub const DEFAULT_PROXY_N: usize = 4096;

/// Ellipse with semi-axes `a >= b > 0`, the major axis at angle `rotation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    center: Point,
    a: f64,
    b: f64,
    rotation: f64,
}

impl Ellipse {
    pub fn new(center: Point, a: f64, b: f64, rotation: f64) -> Result<Self> {
        if !(b > 0.0 && a >= b && a.is_finite()) {
            return Err(Error::InvalidBody(format!(
                "ellipse needs a >= b > 0, got a = {a}, b = {b}"
            )));
        }
        Ok(Ellipse {
            center,
            a,
            b,
            rotation,
        })
    }

    /// Ellipse with eccentricity `e ∈ [0, 1)` and semi-minor axis `b`.
    pub fn with_eccentricity(e: f64, b: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&e) {
            return Err(crate::error::out_of_range("eccentricity", e, "[0, 1)"));
        }
        Ellipse::new(Point::ORIGIN, b / (1.0 - e * e).sqrt(), b, 0.0)
    }

    pub fn center(&self) -> Point {
        self.center
    }
    pub fn semi_major(&self) -> f64 {
        self.a
    }
    pub fn semi_minor(&self) -> f64 {
        self.b
    }
    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn eccentricity(&self) -> f64 {
        (1.0 - (self.b / self.a).powi(2)).sqrt()
    }

    pub fn area(&self) -> f64 {
        PI * self.a * self.b
    }

    /// Arc length by adaptive Gauss–Kronrod over one quadrant.
    pub fn perimeter(&self) -> f64 {
        let (a2, b2) = (self.a * self.a, self.b * self.b);
        4.0 * integrate(
            |t: f64| {
                let (s, c) = t.sin_cos();
                (a2 * s * s + b2 * c * c).sqrt()
            },
            0.0,
            FRAC_PI_2,
            TAU_QUAD,
        )
    }

    fn local_coords(&self, p: Point) -> Point {
        (p - self.center).rotate(-self.rotation)
    }

    fn world_coords(&self, p: Point) -> Point {
        p.rotate(self.rotation) + self.center
    }

    /// Boundary point at parameter `t`: `(a cos t, b sin t)` in the body frame.
    pub fn boundary_point(&self, t: f64) -> Point {
        let (s, c) = t.sin_cos();
        self.world_coords(Point::new(self.a * c, self.b * s))
    }

    pub fn contains(&self, p: Point) -> bool {
        let q = self.local_coords(p);
        (q.x / self.a).powi(2) + (q.y / self.b).powi(2) <= 1.0 + TAU_GEOM
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let (s, c) = self.rotation.sin_cos();
        let hx = ((self.a * c).powi(2) + (self.b * s).powi(2)).sqrt();
        let hy = ((self.a * s).powi(2) + (self.b * c).powi(2)).sqrt();
        (
            self.center - Point::new(hx, hy),
            self.center + Point::new(hx, hy),
        )
    }

    /// Closest boundary point to an interior point `p`. Uses bisection on the
    /// Lagrange-multiplier equation in the first quadrant of the body frame;
    /// ties (the center of a non-circular ellipse) go to the smaller boundary
    /// parameter.
    pub fn nearest_on_boundary(&self, p: Point) -> (Point, f64) {
        let q = self.local_coords(p);
        let (y0, y1) = (q.x.abs(), q.y.abs());
        let (e0, e1) = (self.a, self.b);
        let (x0, x1, d) = if y1 > 0.0 {
            if y0 > 0.0 {
                let z0 = y0 / e0;
                let z1 = y1 / e1;
                let g = z0 * z0 + z1 * z1 - 1.0;
                if g != 0.0 {
                    let r0 = (e0 / e1).powi(2);
                    let sbar = ellipse_root(r0, z0, z1, g);
                    let x0 = r0 * y0 / (sbar + r0);
                    let x1 = y1 / (sbar + 1.0);
                    (x0, x1, (x0 - y0).hypot(x1 - y1))
                } else {
                    (y0, y1, 0.0)
                }
            } else {
                (0.0, e1, (y1 - e1).abs())
            }
        } else {
            let numer0 = e0 * y0;
            let denom0 = e0 * e0 - e1 * e1;
            if numer0 < denom0 {
                let xde0 = numer0 / denom0;
                let x0 = e0 * xde0;
                let x1 = e1 * (1.0 - xde0 * xde0).sqrt();
                (x0, x1, (x0 - y0).hypot(x1))
            } else {
                (e0, 0.0, (y0 - e0).abs())
            }
        };
        let sx = if q.x < 0.0 { -x0 } else { x0 };
        let sy = if q.y < 0.0 { -x1 } else { x1 };
        (self.world_coords(Point::new(sx, sy)), d)
    }

    /// Inscribed polygon with vertices at equally spaced parameters
    /// `t_k = 2πk/n`.
    pub fn polygon_proxy(&self, n: usize) -> Result<Polygon> {
        if n < 3 {
            return Err(crate::error::out_of_range(
                "proxy resolution",
                n as f64,
                "at least 3",
            ));
        }
        Polygon::new(
            (0..n)
                .map(|k| self.boundary_point(TAU * k as f64 / n as f64))
                .collect(),
        )
    }

    pub fn transformed(&self, angle: f64, shift: Point) -> Self {
        Ellipse {
            center: self.center.rotate(angle) + shift,
            rotation: self.rotation + angle,
            ..*self
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Ellipse {
            center: self.center * s,
            a: self.a * s,
            b: self.b * s,
            rotation: self.rotation,
        }
    }
}

fn ellipse_root(r0: f64, z0: f64, z1: f64, g: f64) -> f64 {
    let n0 = r0 * z0;
    let mut s0 = z1 - 1.0;
    let mut s1 = if g < 0.0 { 0.0 } else { n0.hypot(z1) - 1.0 };
    let mut s = 0.0;
    for _ in 0..200 {
        s = 0.5 * (s0 + s1);
        if s == s0 || s == s1 {
            break;
        }
        let ratio0 = n0 / (s + r0);
        let ratio1 = z1 / (s + 1.0);
        let g = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
        if g > 0.0 {
            s0 = s;
        } else if g < 0.0 {
            s1 = s;
        } else {
            break;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Ellipse perimeter via the arithmetic–geometric mean (Gauss–Kummer
    /// route), independent of the quadrature path.
    fn agm_perimeter(a: f64, b: f64) -> f64 {
        // P = 2π/M(a, b) · (a² - Σ_{n≥0} 2^{n-1} c_n²), c_0² = a² - b²
        let (mut x, mut y) = (a, b);
        let mut sum = 0.5 * (a * a - b * b);
        let mut weight = 0.5;
        for _ in 0..40 {
            let c = 0.5 * (x - y);
            let (xn, yn) = (0.5 * (x + y), (x * y).sqrt());
            weight *= 2.0;
            sum += weight * c * c;
            x = xn;
            y = yn;
            if c.abs() < 1e-200 {
                break;
            }
        }
        TAU / x * (a * a - sum)
    }

    #[test]
    fn circle_perimeter() {
        let e = Ellipse::new(Point::ORIGIN, 1.0, 1.0, 0.0).unwrap();
        assert!((e.perimeter() - TAU).abs() < 1e-10 * TAU);
    }

    #[test]
    fn perimeter_matches_agm() {
        for &(a, b) in &[(2.0, 1.0), (1.0, 0.8), (5.0, 0.1), (1.0, 0.999)] {
            let e = Ellipse::new(Point::ORIGIN, a, b, 0.3).unwrap();
            let reference = agm_perimeter(a, b);
            assert!(
                (e.perimeter() - reference).abs() < 1e-10 * reference,
                "a={a} b={b}: {} vs {reference}",
                e.perimeter()
            );
        }
    }

    #[test]
    fn rejects_bad_axes() {
        assert!(Ellipse::new(Point::ORIGIN, 1.0, 2.0, 0.0).is_err());
        assert!(Ellipse::new(Point::ORIGIN, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn nearest_point_matches_dense_boundary_scan() {
        let e = Ellipse::new(Point::new(0.3, -0.2), 2.0, 1.0, 0.7).unwrap();
        for &p in &[
            Point::new(0.3, -0.2),
            Point::new(1.0, 0.1),
            Point::new(-0.5, -0.9),
            Point::new(0.31, 0.5),
        ] {
            assert!(e.contains(p));
            let (y, d) = e.nearest_on_boundary(p);
            assert!((y.dist(p) - d).abs() < 1e-12);
            let brute = (0..200_000)
                .map(|k| e.boundary_point(TAU * k as f64 / 200_000.0).dist(p))
                .fold(f64::INFINITY, f64::min);
            assert!((d - brute).abs() < 1e-8, "{d} vs {brute}");
        }
        // center tie goes to the parameter π/2 end of the minor axis
        let (y, d) = e.nearest_on_boundary(e.center());
        assert!((d - 1.0).abs() < 1e-15);
        assert!(y.dist(e.boundary_point(FRAC_PI_2)) < 1e-12);
    }

    #[test]
    fn proxy_converges() {
        let e = Ellipse::new(Point::ORIGIN, 1.25, 1.0, 0.0).unwrap();
        let p = e.polygon_proxy(DEFAULT_PROXY_N).unwrap();
        assert!(p.perimeter() < e.perimeter());
        assert!((p.perimeter() - e.perimeter()).abs() < 1e-6);
        assert!((p.area() - e.area()).abs() < 1e-5);
    }
}
