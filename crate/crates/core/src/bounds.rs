//! The inequality chain comparing `P_X(l)` with the unit disk for bodies of
//! perimeter 2π:
//!
//! ```text
//! P_X(l) <= 𝒜(X_l)/𝒜(X) + (2πl - 2l)/𝒜(X)
//!        <= (𝒜(X) + πl² - 2l + l(2π - ℓ(∂(X_l)^l))) / 𝒜(X)
//! P_𝔻(l) - P_X(l) >= h(l) + l(ℓ(∂(X_l)^l) - 2π)/𝒜(X)
//! ```
//!
//! Everything here refuses bodies whose perimeter is not 2π (within
//! [`PERIMETER_TOLERANCE`]) where the chain depends on it.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::buffon::disk_closed_form;
pub use crate::buffon::PERIMETER_TOLERANCE;
use crate::error::{out_of_range, Error, Result};
use crate::geom::ConvexBody;
use crate::parallel::sandwich;
use crate::TAU_GEOM;

/// Upper bound `(π + 2 arcsin(t/l)) / 2π` on the pointwise probability at
/// distance `t` from the boundary.
pub fn g_bound(t: f64, l: f64) -> Result<f64> {
    if !(l > 0.0) {
        return Err(out_of_range("l", l, "l > 0"));
    }
    if !(0.0..=l).contains(&t) {
        return Err(out_of_range("t", t, "0 <= t <= l"));
    }
    Ok((PI + 2.0 * (t / l).asin()) / TAU)
}

/// `2πl - 2l`, the integral of `2π g(t, l)` over `0 <= t <= l`.
pub fn boundary_layer_bound(l: f64) -> f64 {
    TAU * l - 2.0 * l
}

fn check_normalized(body: &ConvexBody) -> Result<()> {
    let perimeter = body.perimeter();
    if (perimeter - TAU).abs() > PERIMETER_TOLERANCE {
        return Err(Error::NotNormalized { perimeter });
    }
    Ok(())
}

/// `ℓ(∂(X_l)^l)`; fails with `EmptyErosion` when `X_l` is empty.
pub fn sandwich_perimeter(body: &ConvexBody, l: f64) -> Result<f64> {
    Ok(sandwich(body, l)?
        .ok_or(Error::EmptyErosion { r: l })?
        .perimeter())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaBound {
    /// `𝒜(X) + πl² - ℓ(∂(X_l)^l) l`.
    pub bound: f64,
    pub eroded_area: f64,
}

impl AreaBound {
    pub fn slack(&self) -> f64 {
        self.bound - self.eroded_area
    }

    pub fn holds(&self) -> bool {
        self.eroded_area <= self.bound + TAU_GEOM
    }
}

/// Upper bound on `𝒜(X_l)` together with the exact eroded area it bounds.
pub fn area_upper_bound(body: &ConvexBody, l: f64) -> Result<AreaBound> {
    let inner = crate::parallel::interior_parallel(body, l)?.ok_or(Error::EmptyErosion { r: l })?;
    let l_sandwich = crate::parallel::exterior_parallel(&inner.body, l)?.perimeter();
    Ok(AreaBound {
        bound: body.area() + PI * l * l - l_sandwich * l,
        eroded_area: inner.area(),
    })
}

/// `(𝒜(X) + πl² - 2l + l(2π - ℓ(∂(X_l)^l))) / 𝒜(X)`.
pub fn buffon_upper_bound(body: &ConvexBody, l: f64) -> Result<f64> {
    check_normalized(body)?;
    let area = body.area();
    let l_sandwich = sandwich_perimeter(body, l)?;
    Ok((area + PI * l * l - 2.0 * l + l * (TAU - l_sandwich)) / area)
}

fn check_h_domain(area: f64, l: f64) -> Result<()> {
    if !(area > 0.0) {
        return Err(out_of_range("A_X", area, "A_X > 0"));
    }
    if !(l.abs() < 2.0) {
        return Err(out_of_range("l", l, "|l| < 2"));
    }
    Ok(())
}

/// `h(l) = (2/π)(arccos(l/2) - (l/2)√(1 - l²/4)) - (A + πl² - 2l)/A`.
pub fn h_function(area: f64, l: f64) -> Result<f64> {
    check_h_domain(area, l)?;
    let half = 0.5 * l;
    let disk = 2.0 / PI * (half.acos() - half * (1.0 - half * half).sqrt());
    Ok(disk - (area + PI * l * l - 2.0 * l) / area)
}

/// `h'(l) = (2 - 2πl)/A - √(4 - l²)/π`.
pub fn h_prime(area: f64, l: f64) -> Result<f64> {
    check_h_domain(area, l)?;
    Ok((2.0 - 2.0 * PI * l) / area - (4.0 - l * l).sqrt() / PI)
}

/// `ℓ² - 4π𝒜`, nonnegative with equality only for disks.
pub fn isoperimetric_deficit(body: &ConvexBody) -> f64 {
    let perimeter = body.perimeter();
    perimeter * perimeter - 4.0 * PI * body.area()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowEntry {
    pub l: f64,
    /// `|ℓ(∂(X_l)^l) - 2π| / 𝒜(X)`; infinite when `X_l` is empty.
    pub condition_lhs: f64,
    /// `condition_lhs < h'(0)/2`.
    pub condition_holds: bool,
    /// `h(l) - l h'(0)/2`.
    pub margin: f64,
    /// Inside the window and with a positive margin, so `P_𝔻(l) > P_X(l)`.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonWindow {
    pub h_prime_0: f64,
    /// Largest grid value at and below which every grid point meets the
    /// condition; `None` if the smallest grid point already fails.
    pub delta: Option<f64>,
    /// One entry per grid value, in descending `l`.
    pub entries: Vec<WindowEntry>,
}

impl EpsilonWindow {
    pub fn certified(&self) -> impl Iterator<Item = &WindowEntry> {
        self.entries.iter().filter(|e| e.certified)
    }
}

/// `2^{-k}` for `k` in `k_min..=k_max`, descending.
pub fn dyadic_grid(k_min: i32, k_max: i32) -> Vec<f64> {
    (k_min..=k_max).map(|k| 2f64.powi(-k)).collect()
}

/// Grid search for the window `0 < l < δ` on which
/// `|ℓ(∂(X_l)^l) - 2π|/𝒜(X) < h'(0)/2`, with the certified margin
/// `h(l) - l h'(0)/2` at each grid point.
pub fn find_epsilon_window(body: &ConvexBody, l_grid: &[f64]) -> Result<EpsilonWindow> {
    check_normalized(body)?;
    let area = body.area();
    let h0 = h_prime(area, 0.0)?;
    if h0 <= TAU_GEOM {
        return Err(Error::DiskInput);
    }
    let mut grid: Vec<f64> = l_grid.to_vec();
    grid.sort_by(|a, b| b.total_cmp(a));
    grid.dedup();
    if grid.iter().any(|&l| !(l > 0.0 && l < 2.0)) {
        return Err(out_of_range("l", grid[0], "grid values in (0, 2)"));
    }
    let mut entries = Vec::with_capacity(grid.len());
    for &l in &grid {
        let condition_lhs = match sandwich_perimeter(body, l) {
            Ok(ls) => (ls - TAU).abs() / area,
            Err(Error::EmptyErosion { .. }) => f64::INFINITY,
            Err(e) => return Err(e),
        };
        let condition_holds = condition_lhs < 0.5 * h0;
        let margin = h_function(area, l)? - 0.5 * l * h0;
        entries.push(WindowEntry {
            l,
            condition_lhs,
            condition_holds,
            margin,
            certified: false,
        });
    }
    let delta = entries
        .iter()
        .rev()
        .take_while(|e| e.condition_holds)
        .last()
        .map(|e| e.l);
    if let Some(d) = delta {
        for e in entries.iter_mut().filter(|e| e.l <= d) {
            e.certified = e.margin > 0.0;
        }
    }
    Ok(EpsilonWindow {
        h_prime_0: h0,
        delta,
        entries,
    })
}

/// Every quantity of the chain for one `(X, l)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub body_id: String,
    pub l: f64,
    #[serde(rename = "A_X")]
    pub area: f64,
    #[serde(rename = "L_sandwich")]
    pub l_sandwich: f64,
    pub area_bound: f64,
    pub p_upper: f64,
    pub p_disk: f64,
    pub h_l: f64,
    pub h_prime_0: f64,
    /// `P_𝔻(l) - p_upper`.
    pub margin: f64,
}

impl BoundReport {
    pub const CSV_HEADER: [&'static str; 10] = [
        "body_id",
        "l",
        "A_X",
        "L_sandwich",
        "area_bound",
        "p_upper",
        "p_disk",
        "h_l",
        "h_prime_0",
        "margin",
    ];
}

pub fn bound_report(body_id: &str, body: &ConvexBody, l: f64) -> Result<BoundReport> {
    check_normalized(body)?;
    let area = body.area();
    let l_sandwich = sandwich_perimeter(body, l)?;
    let p_upper = buffon_upper_bound(body, l)?;
    let p_disk = disk_closed_form(l)?;
    Ok(BoundReport {
        body_id: body_id.to_string(),
        l,
        area,
        l_sandwich,
        area_bound: area + PI * l * l - l_sandwich * l,
        p_upper,
        p_disk,
        h_l: h_function(area, l)?,
        h_prime_0: h_prime(area, 0.0)?,
        margin: p_disk - p_upper,
    })
}
