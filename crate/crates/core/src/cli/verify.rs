//! The per-body verification suite: Steiner identities, the isoperimetric
//! inequality, the pointwise and boundary-layer bounds, the inequality chain,
//! the comparison window, and Monte Carlo evidence that the disk wins.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::experiments::normalized_ellipse;
use super::input::normalize_to_perimeter;
use super::output::{fmt_f64, fmt_opt, Row};
use crate::bounds::{
    area_upper_bound, boundary_layer_bound, buffon_upper_bound, dyadic_grid, find_epsilon_window,
    g_bound, isoperimetric_deficit,
};
use crate::buffon::{
    boundary_layer_integral, derive_seed, disk_closed_form, mc_buffon, quad_buffon, SamplerConfig,
    DEFAULT_GRID,
};
use crate::error::Result;
use crate::geom::{pointwise_probability_exact, ConvexBody, Point, Polygon, DEFAULT_PROXY_N};
use crate::parallel::steiner_report_with_proxy;
use crate::TAU_GEOM;

/// Slack allowed on the numerically evaluated bounds.
pub const BOUND_TOLERANCE: f64 = 1e-6;

/// Relative tolerance on the Steiner identities.
pub const STEINER_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteBody {
    pub id: String,
    /// Body sampled by Monte Carlo.
    pub body: ConvexBody,
    /// Polygon or disk standing in for `body` where exact directions and
    /// quadrature are needed; equal to `body` unless it is an ellipse.
    pub exact_body: ConvexBody,
}

impl SuiteBody {
    pub fn new(id: &str, body: ConvexBody) -> Self {
        SuiteBody {
            id: id.to_string(),
            exact_body: body.clone(),
            body,
        }
    }
}

/// Disk, square, equilateral triangle, ellipse `e = 0.6` (with its polygon
/// proxy), regular 12-gon, all of perimeter 2π, and a unit segment.
pub fn standard_bodies(proxy_n: usize) -> Result<Vec<SuiteBody>> {
    let norm = |p: Polygon| normalize_to_perimeter(&ConvexBody::Polygon(p));
    let ellipse = normalized_ellipse(0.6)?;
    let proxy = normalize_to_perimeter(&ConvexBody::Polygon(ellipse.polygon_proxy(proxy_n)?))?;
    Ok(vec![
        SuiteBody::new("disk", ConvexBody::unit_disk()),
        SuiteBody::new("square", norm(Polygon::rectangle(0.0, 0.0, 1.0, 1.0)?)?),
        SuiteBody::new(
            "triangle",
            norm(Polygon::regular(3, 1.0, Point::ORIGIN, PI / 2.0)?)?,
        ),
        SuiteBody {
            id: format!("ellipse-e0.6-proxy{proxy_n}"),
            body: ConvexBody::Ellipse(ellipse),
            exact_body: proxy,
        },
        SuiteBody::new(
            "12-gon",
            norm(Polygon::regular(12, 1.0, Point::ORIGIN, 0.0)?)?,
        ),
        SuiteBody::new(
            "segment",
            ConvexBody::segment(Point::new(-0.5, 0.0), Point::new(0.5, 0.0))?,
        ),
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Descending needle lengths for the per-length checks.
    pub l_grid: Vec<f64>,
    /// Grid searched for the comparison window.
    pub window_grid: Vec<f64>,
    pub n_samples: u64,
    pub seed: u64,
    pub quad_grid: usize,
    pub proxy_n: usize,
    /// Random points per `(body, l)` for the pointwise bound.
    pub pointwise_points: usize,
}

impl VerifyConfig {
    pub fn new(n_samples: u64, seed: u64) -> Self {
        VerifyConfig {
            l_grid: vec![0.2, 0.1, 0.05, 0.02],
            window_grid: dyadic_grid(1, 20),
            n_samples,
            seed,
            quad_grid: DEFAULT_GRID,
            proxy_n: DEFAULT_PROXY_N,
            pointwise_points: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub body_id: String,
    pub check: &'static str,
    pub l: Option<f64>,
    pub passed: bool,
    /// Distance from failure; negative means violated.
    pub margin: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
}

impl Row for CheckResult {
    fn header() -> &'static [&'static str] {
        &["body_id", "check", "l", "passed", "margin", "detail"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.body_id.clone(),
            self.check.to_string(),
            fmt_opt(self.l),
            self.passed.to_string(),
            fmt_f64(self.margin),
            self.detail.clone(),
        ]
    }
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Checks<'a> {
    body_id: &'a str,
    out: Vec<CheckResult>,
}

impl Checks<'_> {
    fn push(&mut self, check: &'static str, l: Option<f64>, outcome: Result<(f64, bool, String)>) {
        let (margin, passed, detail) = match outcome {
            Ok(v) => v,
            Err(e) => (f64::NAN, false, e.to_string()),
        };
        self.out.push(CheckResult {
            body_id: self.body_id.to_string(),
            check,
            l,
            passed,
            margin,
            detail,
        });
    }

    /// A check that passes iff `margin >= -tol`.
    fn margin(
        &mut self,
        check: &'static str,
        l: Option<f64>,
        tol: f64,
        margin: Result<(f64, String)>,
    ) {
        self.push(check, l, margin.map(|(m, d)| (m, m >= -tol, d)));
    }
}

/// Runs every check on every body. Failures, including errors, become report
/// entries.
pub fn run_verification_suite(bodies: &[SuiteBody], cfg: &VerifyConfig) -> VerificationReport {
    let mut checks = Vec::new();
    for (body_index, sb) in bodies.iter().enumerate() {
        let mut c = Checks {
            body_id: &sb.id,
            out: Vec::new(),
        };
        if sb.body.is_segment() {
            segment_checks(&mut c, sb, cfg, body_index);
        } else {
            body_checks(&mut c, sb, cfg, body_index);
        }
        checks.extend(c.out);
    }
    VerificationReport {
        passed: checks.iter().all(|c| c.passed),
        config: cfg.clone(),
        checks,
    }
}

fn segment_checks(c: &mut Checks, sb: &SuiteBody, cfg: &VerifyConfig, body_index: usize) {
    for (j, &l) in cfg.l_grid.iter().enumerate() {
        let seed = derive_seed(cfg.seed, &[body_index as u64, j as u64]);
        c.push(
            "segment_probability_zero",
            Some(l),
            mc_buffon(&sb.body, l, &SamplerConfig::new(seed, cfg.n_samples))
                .map(|e| (-e.value, e.value == 0.0, format!("P = {}", e.value))),
        );
    }
}

fn body_checks(c: &mut Checks, sb: &SuiteBody, cfg: &VerifyConfig, body_index: usize) {
    let is_disk = matches!(sb.body, ConvexBody::Disk { .. });
    let exact = &sb.exact_body;
    c.margin(
        "isoperimetric",
        None,
        TAU_GEOM,
        Ok({
            let d = isoperimetric_deficit(&sb.body);
            (d, format!("L^2 - 4 pi A = {d}"))
        }),
    );
    for &l in &cfg.l_grid {
        c.push(
            "steiner",
            Some(l),
            steiner_report_with_proxy(&sb.body, l, cfg.proxy_n).map(|r| {
                let scale_a = STEINER_TOLERANCE * r.area_body;
                let scale_l = STEINER_TOLERANCE * r.perimeter_body;
                let exact_ok =
                    r.area_residual.abs() <= scale_a && r.perimeter_residual.abs() <= scale_l;
                (
                    r.gap_area.min(r.gap_perimeter),
                    exact_ok && r.inequalities_hold(),
                    format!(
                        "gapA = {}, gapL = {}, residuals = ({}, {})",
                        r.gap_area, r.gap_perimeter, r.area_residual, r.perimeter_residual
                    ),
                )
            }),
        );
        c.push(
            "area_bound",
            Some(l),
            area_upper_bound(exact, l).map(|b| {
                (
                    b.slack(),
                    b.holds(),
                    format!("A(X_l) = {}, bound = {}", b.eroded_area, b.bound),
                )
            }),
        );
        c.margin(
            "boundary_layer",
            Some(l),
            BOUND_TOLERANCE,
            boundary_layer_integral(exact, l, cfg.quad_grid).map(|v| {
                let bound = boundary_layer_bound(l);
                (bound - v, format!("integral = {v}, 2 pi l - 2 l = {bound}"))
            }),
        );
        c.margin(
            "pointwise_bound",
            Some(l),
            1e-12,
            pointwise_margin(exact, l, cfg, body_index),
        );
        c.margin(
            "inequality_chain",
            Some(l),
            BOUND_TOLERANCE,
            quad_buffon(exact, l, cfg.quad_grid).and_then(|q| {
                let ub = buffon_upper_bound(exact, l)?;
                Ok((ub - q.value, format!("quad = {}, upper = {ub}", q.value)))
            }),
        );
    }
    if is_disk {
        disk_checks(c, sb, cfg, body_index);
        return;
    }
    c.push(
        "comparison_window",
        None,
        find_epsilon_window(exact, &cfg.window_grid).map(|w| {
            let best = w
                .certified()
                .map(|e| e.margin)
                .fold(f64::NEG_INFINITY, f64::max);
            let certified: Vec<f64> = w.certified().map(|e| e.l).collect();
            (
                best,
                w.delta.is_some() && !certified.is_empty(),
                format!(
                    "h'(0) = {}, delta = {:?}, certified l = {certified:?}",
                    w.h_prime_0, w.delta
                ),
            )
        }),
    );
    let mut best = (f64::NEG_INFINITY, None, String::new());
    let mut error = None;
    for (j, &l) in cfg.l_grid.iter().enumerate() {
        let seed = derive_seed(cfg.seed, &[body_index as u64, j as u64]);
        match mc_buffon(&sb.body, l, &SamplerConfig::new(seed, cfg.n_samples))
            .and_then(|e| Ok((e, disk_closed_form(l)?)))
        {
            Ok((e, pd)) => {
                let m = pd - e.value - 3.0 * e.std_error;
                if m > best.0 {
                    best = (
                        m,
                        Some(l),
                        format!("P = {} +- {}, P_disk = {pd}", e.value, e.std_error),
                    );
                }
            }
            Err(e) => error = Some(e),
        }
    }
    c.push(
        "disk_dominates",
        best.1,
        match error {
            Some(e) => Err(e),
            None => Ok((best.0, best.0 > 0.0, best.2)),
        },
    );
}

fn disk_checks(c: &mut Checks, sb: &SuiteBody, cfg: &VerifyConfig, body_index: usize) {
    for (j, &l) in cfg.l_grid.iter().enumerate() {
        let seed = derive_seed(cfg.seed, &[body_index as u64, j as u64]);
        c.push(
            "disk_closed_form",
            Some(l),
            mc_buffon(&sb.body, l, &SamplerConfig::new(seed, cfg.n_samples)).and_then(|e| {
                let pd = disk_closed_form(l)?;
                let m = 3.0 * e.std_error - (e.value - pd).abs();
                Ok((
                    m,
                    m >= 0.0,
                    format!("P = {} +- {}, closed form {pd}", e.value, e.std_error),
                ))
            }),
        );
    }
}

/// Smallest `g(d, l) - p_X(x, l)` over random points `x` with `d < l`,
/// drawn uniformly from the boundary layer by rejection.
fn pointwise_margin(
    body: &ConvexBody,
    l: f64,
    cfg: &VerifyConfig,
    body_index: usize,
) -> Result<(f64, String)> {
    let seed = derive_seed(cfg.seed, &[body_index as u64, l.to_bits(), u64::MAX]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = body.bounding_box();
    let mut worst = f64::INFINITY;
    let mut found = 0;
    let mut tries = 0usize;
    while found < cfg.pointwise_points && tries < 10_000 * cfg.pointwise_points.max(1) {
        tries += 1;
        let x = Point::new(
            lo.x + (hi.x - lo.x) * rng.random::<f64>(),
            lo.y + (hi.y - lo.y) * rng.random::<f64>(),
        );
        if !body.contains(x) {
            continue;
        }
        let (_, d) = body.nearest_boundary_point(x)?;
        if !(d > 0.0 && d < l) {
            continue;
        }
        found += 1;
        let p = pointwise_probability_exact(body, x, l)?;
        worst = worst.min(g_bound(d, l)? - p);
    }
    Ok((worst, format!("{found} points in the layer of width {l}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn standard_bodies_are_normalized() {
        for sb in standard_bodies(256).unwrap() {
            if sb.body.is_segment() {
                continue;
            }
            assert!((sb.body.perimeter() - TAU).abs() < 1e-9, "{}", sb.id);
            assert!((sb.exact_body.perimeter() - TAU).abs() < 1e-9, "{}", sb.id);
        }
    }

    #[test]
    fn small_suite_passes() {
        let bodies = standard_bodies(256).unwrap();
        let picked: Vec<SuiteBody> = bodies
            .into_iter()
            .filter(|b| ["disk", "square", "segment"].contains(&b.id.as_str()))
            .collect();
        let mut cfg = VerifyConfig::new(200_000, 9);
        cfg.l_grid = vec![0.2, 0.1];
        cfg.quad_grid = 64;
        cfg.pointwise_points = 50;
        let report = run_verification_suite(&picked, &cfg);
        let failures: Vec<_> = report.failures().collect();
        assert!(report.passed, "{failures:#?}");
        let disk_steiner = report
            .checks
            .iter()
            .find(|c| c.body_id == "disk" && c.check == "steiner")
            .unwrap();
        assert!(disk_steiner.margin.abs() < 1e-12);
        assert!(report
            .checks
            .iter()
            .any(|c| c.body_id == "segment" && c.check == "segment_probability_zero" && c.passed));
    }

    #[test]
    fn errors_become_failed_entries() {
        let unit_square = SuiteBody::new(
            "unit",
            ConvexBody::Polygon(Polygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap()),
        );
        let mut cfg = VerifyConfig::new(1000, 1);
        cfg.l_grid = vec![0.1];
        cfg.quad_grid = 16;
        cfg.pointwise_points = 5;
        let report = run_verification_suite(&[unit_square], &cfg);
        assert!(!report.passed);
        assert!(report
            .failures()
            .any(|c| c.check == "inequality_chain" && c.detail.contains("not normalized")));
    }
}
