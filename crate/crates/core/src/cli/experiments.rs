//! Batch experiments: the disk curve, the ellipse eccentricity sweep,
//! Steiner tables and single-body evaluation.

use rayon::prelude::*;
use serde::Serialize;

use super::input::normalize_to_perimeter;
use super::output::{fmt_f64, fmt_opt, Row};
use crate::bounds::BoundReport;
use crate::buffon::{
    derive_seed, disk_closed_form, disk_probability, mc_buffon, quad_buffon, Estimate, Method,
    SamplerConfig,
};
use crate::error::{out_of_range, Result};
use crate::geom::{ConvexBody, Ellipse};
use crate::parallel::{steiner_report_with_proxy, SteinerReport};

pub const DEFAULT_ECCENTRICITIES: [f64; 7] = [0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95];
pub const DEFAULT_SWEEP_LENGTHS: [f64; 9] = [0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0];
pub const DEFAULT_DISK_LENGTHS: [f64; 9] = [0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskCurveRow {
    pub l: f64,
    pub closed_form: f64,
    pub mc: f64,
    pub mc_std_error: f64,
    pub n: u64,
    pub seed: u64,
    pub quad: f64,
    pub quad_error: f64,
}

impl Row for DiskCurveRow {
    fn header() -> &'static [&'static str] {
        &[
            "l",
            "closed_form",
            "mc",
            "mc_std_error",
            "n",
            "seed",
            "quad",
            "quad_error",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_f64(self.l),
            fmt_f64(self.closed_form),
            fmt_f64(self.mc),
            fmt_f64(self.mc_std_error),
            self.n.to_string(),
            self.seed.to_string(),
            fmt_f64(self.quad),
            fmt_f64(self.quad_error),
        ]
    }
}

/// Unit disk (perimeter 2π): closed form, Monte Carlo and quadrature per `l`.
/// Row `i` uses the seed `derive_seed(seed, [i])`.
pub fn run_disk_curve(l_grid: &[f64], n: u64, seed: u64, grid: usize) -> Result<Vec<DiskCurveRow>> {
    let disk = ConvexBody::unit_disk();
    l_grid
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let closed_form = disk_closed_form(l)?;
            let cell_seed = derive_seed(seed, &[i as u64]);
            let mc = mc_buffon(&disk, l, &SamplerConfig::new(cell_seed, n))?;
            let quad = quad_buffon(&disk, l, grid)?;
            Ok(DiskCurveRow {
                l,
                closed_form,
                mc: mc.value,
                mc_std_error: mc.std_error,
                n,
                seed: cell_seed,
                quad: quad.value,
                quad_error: quad.error_indicator,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub eccentricities: Vec<f64>,
    pub lengths: Vec<f64>,
    pub n_samples: u64,
    pub seed: u64,
}

impl SweepConfig {
    pub fn new(n_samples: u64, seed: u64) -> Self {
        SweepConfig {
            eccentricities: DEFAULT_ECCENTRICITIES.to_vec(),
            lengths: DEFAULT_SWEEP_LENGTHS.to_vec(),
            n_samples,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn ascending(v: &[f64]) -> bool {
            !v.is_empty() && v.windows(2).all(|w| w[0] < w[1])
        }
        if !ascending(&self.eccentricities) {
            return Err(out_of_range(
                "eccentricities",
                f64::NAN,
                "nonempty, strictly ascending",
            ));
        }
        if !ascending(&self.lengths) {
            return Err(out_of_range(
                "lengths",
                f64::NAN,
                "nonempty, strictly ascending",
            ));
        }
        if let Some(&e) = self
            .eccentricities
            .iter()
            .find(|e| !(0.0..1.0).contains(*e))
        {
            return Err(out_of_range("e", e, "0 <= e < 1"));
        }
        if let Some(&l) = self.lengths.iter().find(|l| !(**l > 0.0)) {
            return Err(out_of_range("l", l, "l > 0"));
        }
        if self.n_samples == 0 {
            return Err(out_of_range("n_samples", 0.0, "n_samples >= 1"));
        }
        Ok(())
    }

    pub fn metadata(&self) -> Vec<String> {
        let list = |v: &[f64]| v.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join(" ");
        vec![
            "ellipse-sweep: a = b/sqrt(1-e^2), scaled to perimeter 2pi".to_string(),
            format!("eccentricities = {}", list(&self.eccentricities)),
            format!("lengths = {}", list(&self.lengths)),
            format!("n_samples = {}", self.n_samples),
            format!("master_seed = {}", self.seed),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub e: f64,
    pub a: f64,
    pub b: f64,
    pub l: f64,
    pub value: f64,
    pub std_error: f64,
    pub n: u64,
    pub seed: u64,
    pub p_disk: f64,
    /// Closed form of the body itself; only the `e = 0` control row (the
    /// unit disk) has one.
    pub closed_form: Option<f64>,
}

impl SweepRow {
    pub fn disk_minus_value(&self) -> f64 {
        self.p_disk - self.value
    }
}

impl Row for SweepRow {
    fn header() -> &'static [&'static str] {
        &[
            "e",
            "a",
            "b",
            "l",
            "value",
            "std_error",
            "n",
            "seed",
            "p_disk",
            "disk_minus_value",
            "closed_form",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_f64(self.e),
            fmt_f64(self.a),
            fmt_f64(self.b),
            fmt_f64(self.l),
            fmt_f64(self.value),
            fmt_f64(self.std_error),
            self.n.to_string(),
            self.seed.to_string(),
            fmt_f64(self.p_disk),
            fmt_f64(self.disk_minus_value()),
            fmt_opt(self.closed_form),
        ]
    }
}

/// The ellipse of eccentricity `e` with perimeter 2π.
pub fn normalized_ellipse(e: f64) -> Result<Ellipse> {
    match normalize_to_perimeter(&ConvexBody::Ellipse(Ellipse::with_eccentricity(e, 1.0)?))? {
        ConvexBody::Ellipse(ellipse) => Ok(ellipse),
        _ => unreachable!("scaling keeps the variant"),
    }
}

/// One Monte Carlo cell per `(e, l)`, seeded by
/// `derive_seed(seed, [e_index, l_index])`. Rows are ordered by `e`, then
/// `l`, whatever the thread schedule.
pub fn run_ellipse_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let ellipses = cfg
        .eccentricities
        .iter()
        .map(|&e| normalized_ellipse(e))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(usize, usize)> = (0..ellipses.len())
        .flat_map(|i| (0..cfg.lengths.len()).map(move |j| (i, j)))
        .collect();
    cells
        .par_iter()
        .map(|&(i, j)| {
            let (e, l) = (cfg.eccentricities[i], cfg.lengths[j]);
            let ellipse = &ellipses[i];
            let seed = derive_seed(cfg.seed, &[i as u64, j as u64]);
            let body = ConvexBody::Ellipse(*ellipse);
            let est = mc_buffon(&body, l, &SamplerConfig::new(seed, cfg.n_samples))?;
            let p_disk = if l <= 2.0 { disk_closed_form(l)? } else { 0.0 };
            Ok(SweepRow {
                e,
                a: ellipse.semi_major(),
                b: ellipse.semi_minor(),
                l,
                value: est.value,
                std_error: est.std_error,
                n: cfg.n_samples,
                seed,
                p_disk,
                closed_form: (e == 0.0).then_some(p_disk),
            })
        })
        .collect()
}

/// Smallest swept `l` at which the ellipse beats the disk by more than
/// `3σ`, per eccentricity.
pub fn sweep_crossings(rows: &[SweepRow]) -> Vec<(f64, Option<f64>)> {
    let mut out: Vec<(f64, Option<f64>)> = Vec::new();
    for row in rows {
        if out.last().map(|(e, _)| *e) != Some(row.e) {
            out.push((row.e, None));
        }
        let slot = &mut out.last_mut().expect("just pushed").1;
        if slot.is_none() && row.value - row.p_disk > 3.0 * row.std_error {
            *slot = Some(row.l);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRow {
    pub body_id: String,
    pub l: f64,
    pub method: Method,
    pub value: f64,
    pub std_error: f64,
    pub n: u64,
    pub seed: u64,
}

impl EstimateRow {
    pub fn new(body_id: &str, l: f64, est: &Estimate) -> Self {
        EstimateRow {
            body_id: body_id.to_string(),
            l,
            method: est.method,
            value: est.value,
            std_error: est.std_error,
            n: est.n_samples,
            seed: est.seed,
        }
    }
}

impl Row for EstimateRow {
    fn header() -> &'static [&'static str] {
        &["body_id", "l", "method", "value", "std_error", "n", "seed"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.body_id.clone(),
            fmt_f64(self.l),
            self.method.as_str().to_string(),
            fmt_f64(self.value),
            fmt_f64(self.std_error),
            self.n.to_string(),
            self.seed.to_string(),
        ]
    }
}

/// Every applicable estimate of `P_X(l)` per `l`: the closed form for disks,
/// quadrature for polygons and disks, and Monte Carlo with the seed
/// `derive_seed(seed, [i])` for the `i`th length.
pub fn evaluate_body(
    body_id: &str,
    body: &ConvexBody,
    l_grid: &[f64],
    n: u64,
    seed: u64,
    grid: usize,
) -> Result<Vec<EstimateRow>> {
    let mut rows = Vec::new();
    for (i, &l) in l_grid.iter().enumerate() {
        if let ConvexBody::Disk { radius, .. } = body {
            rows.push(EstimateRow::new(
                body_id,
                l,
                &Estimate::exact(disk_probability(*radius, l)?),
            ));
        }
        if matches!(body, ConvexBody::Polygon(_) | ConvexBody::Disk { .. }) {
            let q = quad_buffon(body, l, grid)?;
            rows.push(EstimateRow::new(
                body_id,
                l,
                &Estimate {
                    value: q.value,
                    std_error: q.error_indicator,
                    n_samples: q.grid as u64,
                    seed: 0,
                    method: Method::Quadrature,
                },
            ));
        }
        let cfg = SamplerConfig::new(derive_seed(seed, &[i as u64]), n);
        rows.push(EstimateRow::new(body_id, l, &mc_buffon(body, l, &cfg)?));
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteinerRow {
    pub body_id: String,
    pub r: f64,
    #[serde(rename = "A_X")]
    pub area_body: f64,
    #[serde(rename = "A_sw")]
    pub area_sandwich: f64,
    #[serde(rename = "L_X")]
    pub perimeter_body: f64,
    #[serde(rename = "L_sw")]
    pub perimeter_sandwich: f64,
    #[serde(rename = "L_int")]
    pub perimeter_interior: f64,
    #[serde(rename = "gapA")]
    pub gap_area: f64,
    #[serde(rename = "gapL")]
    pub gap_perimeter: f64,
    pub area_residual: f64,
    pub perimeter_residual: f64,
}

impl SteinerRow {
    pub fn new(body_id: &str, rep: &SteinerReport) -> Self {
        SteinerRow {
            body_id: body_id.to_string(),
            r: rep.r,
            area_body: rep.area_body,
            area_sandwich: rep.area_sandwich,
            perimeter_body: rep.perimeter_body,
            perimeter_sandwich: rep.perimeter_sandwich,
            perimeter_interior: rep.perimeter_interior,
            gap_area: rep.gap_area,
            gap_perimeter: rep.gap_perimeter,
            area_residual: rep.area_residual,
            perimeter_residual: rep.perimeter_residual,
        }
    }
}

impl Row for SteinerRow {
    fn header() -> &'static [&'static str] {
        &[
            "body_id",
            "r",
            "A_X",
            "A_sw",
            "L_X",
            "L_sw",
            "L_int",
            "gapA",
            "gapL",
            "area_residual",
            "perimeter_residual",
        ]
    }

    fn fields(&self) -> Vec<String> {
        let mut f = vec![self.body_id.clone()];
        f.extend(
            [
                self.r,
                self.area_body,
                self.area_sandwich,
                self.perimeter_body,
                self.perimeter_sandwich,
                self.perimeter_interior,
                self.gap_area,
                self.gap_perimeter,
                self.area_residual,
                self.perimeter_residual,
            ]
            .map(fmt_f64),
        );
        f
    }
}

pub fn steiner_rows(
    body_id: &str,
    body: &ConvexBody,
    radii: &[f64],
    proxy_n: usize,
) -> Result<Vec<SteinerRow>> {
    radii
        .iter()
        .map(|&r| {
            Ok(SteinerRow::new(
                body_id,
                &steiner_report_with_proxy(body, r, proxy_n)?,
            ))
        })
        .collect()
}

impl Row for BoundReport {
    fn header() -> &'static [&'static str] {
        &BoundReport::CSV_HEADER
    }

    fn fields(&self) -> Vec<String> {
        let mut f = vec![self.body_id.clone()];
        f.extend(
            [
                self.l,
                self.area,
                self.l_sandwich,
                self.area_bound,
                self.p_upper,
                self.p_disk,
                self.h_l,
                self.h_prime_0,
                self.margin,
            ]
            .map(fmt_f64),
        );
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::output::to_csv_string;
    use std::f64::consts::TAU;

    #[test]
    fn disk_curve_closed_form_column() {
        let rows = run_disk_curve(&[0.0, 1.0, 2.0], 20_000, 5, 64).unwrap();
        let expect = [
            1.0,
            2.0 / 3.0 - 3f64.sqrt() / (2.0 * std::f64::consts::PI),
            0.0,
        ];
        for (row, want) in rows.iter().zip(expect) {
            assert!((row.closed_form - want).abs() < 1e-12);
            assert!((row.mc - want).abs() <= 3.0 * row.mc_std_error + 1e-12);
            assert!((row.quad - want).abs() < 1e-3);
        }
    }

    #[test]
    fn sweep_validation() {
        let mut cfg = SweepConfig::new(100, 1);
        assert!(cfg.validate().is_ok());
        cfg.eccentricities = vec![0.5, 0.2];
        assert!(cfg.validate().is_err());
        cfg.eccentricities = vec![0.5, 1.0];
        assert!(cfg.validate().is_err());
        cfg.eccentricities = vec![0.0];
        cfg.lengths = vec![];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn sweep_rows_and_control() {
        let cfg = SweepConfig {
            eccentricities: vec![0.0, 0.8],
            lengths: vec![0.1, 1.5],
            n_samples: 5_000,
            seed: 11,
        };
        let rows = run_ellipse_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[1].e, rows[1].l), (0.0, 1.5));
        for r in &rows {
            let perimeter = ConvexBody::Ellipse(
                Ellipse::new(crate::geom::Point::ORIGIN, r.a, r.b, 0.0).unwrap(),
            )
            .perimeter();
            assert!((perimeter - TAU).abs() < 1e-9);
            assert!((0.0..=1.0).contains(&r.value));
        }
        assert_eq!(rows[0].closed_form, Some(disk_closed_form(0.1).unwrap()));
        assert!(rows[2].closed_form.is_none());
        let again = run_ellipse_sweep(&cfg).unwrap();
        assert_eq!(
            to_csv_string(&cfg.metadata(), &rows),
            to_csv_string(&cfg.metadata(), &again)
        );
        assert_eq!(sweep_crossings(&rows).len(), 2);
    }

    #[test]
    fn body_eval_methods() {
        let rows = evaluate_body("disk", &ConvexBody::unit_disk(), &[0.5], 1000, 3, 32).unwrap();
        let methods: Vec<_> = rows.iter().map(|r| r.method).collect();
        assert_eq!(
            methods,
            vec![Method::ClosedForm, Method::Quadrature, Method::MonteCarlo]
        );
        let e = ConvexBody::ellipse(crate::geom::Point::ORIGIN, 1.2, 1.0, 0.0).unwrap();
        assert_eq!(
            evaluate_body("e", &e, &[0.5], 1000, 3, 32).unwrap().len(),
            1
        );
    }

    #[test]
    fn steiner_table() {
        let rows = steiner_rows("disk", &ConvexBody::unit_disk(), &[0.1, 0.5], 64).unwrap();
        assert!(rows
            .iter()
            .all(|r| r.gap_area.abs() < 1e-12 && r.gap_perimeter.abs() < 1e-12));
        assert_eq!(rows[0].fields().len(), SteinerRow::header().len());
    }
}
