use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use buffon_convex::bounds::bound_report;
use buffon_convex::buffon::DEFAULT_GRID;
use buffon_convex::cli::{
    evaluate_body, normalize_to_perimeter, read_body, run_disk_curve, run_ellipse_sweep,
    run_verification_suite, standard_bodies, steiner_rows, sweep_crossings, write_json, write_rows,
    Format, RunConfig, SuiteBody, SweepConfig, VerifyConfig, DEFAULT_DISK_LENGTHS,
    DEFAULT_ECCENTRICITIES, DEFAULT_SWEEP_LENGTHS, STEINER_TOLERANCE,
};
use buffon_convex::geom::DEFAULT_PROXY_N;
use buffon_convex::{ConvexBody, TAU_GEOM};

const DEFAULT_SAMPLES: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(
    name = "buffon-convex",
    version,
    about = "Buffon needle probabilities for convex bodies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Unit disk: closed form, Monte Carlo and quadrature per needle length.
    DiskCurve(Common),
    /// Monte Carlo sweep over ellipse eccentricity and needle length.
    EllipseSweep {
        #[command(flatten)]
        common: Common,
        /// Eccentricities, comma separated.
        #[arg(long, value_delimiter = ',')]
        e: Vec<f64>,
    },
    /// Pass/fail report of every bound and identity on a set of bodies.
    Verify(Common),
    /// Steiner identities and erosion inequalities; `--l` gives the radii.
    SteinerCheck(Common),
    /// Every available estimate of P_X(l) for one body.
    BodyEval {
        #[command(flatten)]
        common: Common,
        /// Emit the inequality-chain quantities instead of estimates.
        #[arg(long)]
        bounds: bool,
        /// Evaluate the body as given instead of scaling it to perimeter 2π.
        #[arg(long)]
        raw: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// JSON body file.
    #[arg(long)]
    body: Option<PathBuf>,
    /// Needle lengths (or radii), comma separated.
    #[arg(long, value_delimiter = ',')]
    l: Vec<f64>,
    /// Monte Carlo samples per cell.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Vertex count of the polygon standing in for ellipses.
    #[arg(long)]
    proxy_n: Option<usize>,
    /// Quadrature cells per side.
    #[arg(long)]
    grid: Option<usize>,
    /// JSON config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Flags merged over the config file.
struct Settings {
    body: Option<ConvexBody>,
    body_id: String,
    l: Option<Vec<f64>>,
    n: u64,
    seed: Option<u64>,
    eccentricities: Option<Vec<f64>>,
    proxy_n: usize,
    grid: usize,
    out: Option<PathBuf>,
    format: Option<Format>,
}

impl Settings {
    fn resolve(common: &Common) -> Result<Self, Failure> {
        let cfg = match &common.config {
            Some(path) => RunConfig::read(path)?,
            None => RunConfig::default(),
        };
        let (body, body_id) = match (&common.body, &cfg.body) {
            (Some(path), _) => (Some(read_body(path)?), file_stem(path)),
            (None, Some(spec)) => (Some(spec.build()?), "config-body".to_string()),
            (None, None) => (None, String::new()),
        };
        Ok(Settings {
            body,
            body_id,
            l: non_empty(&common.l).or(cfg.l),
            n: common.n.or(cfg.n).unwrap_or(DEFAULT_SAMPLES),
            seed: common.seed.or(cfg.seed),
            eccentricities: cfg.eccentricities,
            proxy_n: common.proxy_n.or(cfg.proxy_n).unwrap_or(DEFAULT_PROXY_N),
            grid: common.grid.or(cfg.grid).unwrap_or(DEFAULT_GRID),
            out: common.out.clone(),
            format: common.format.map(|f| match f {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            }),
        })
    }

    fn seed(&self) -> Result<u64, Failure> {
        self.seed
            .ok_or_else(|| Failure::Usage("--seed is required for Monte Carlo runs".into()))
    }

    fn body(&self) -> Result<&ConvexBody, Failure> {
        self.body
            .as_ref()
            .ok_or_else(|| Failure::Usage("--body is required".into()))
    }

    fn writer(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.out {
            Some(path) => {
                Box::new(BufWriter::new(File::create(path).map_err(|e| {
                    Failure::Usage(format!("{}: {e}", path.display()))
                })?))
            }
            None => Box::new(io::stdout().lock()),
        })
    }
}

fn non_empty(v: &[f64]) -> Option<Vec<f64>> {
    (!v.is_empty()).then(|| v.to_vec())
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "body".into())
}

fn disk_curve(s: &Settings) -> Outcome {
    let l_grid = s.l.clone().unwrap_or_else(|| DEFAULT_DISK_LENGTHS.to_vec());
    let rows = run_disk_curve(&l_grid, s.n, s.seed()?, s.grid)?;
    let meta = vec![format!(
        "disk-curve: unit disk, n = {}, grid = {}",
        s.n, s.grid
    )];
    write_rows(s.writer()?, s.format.unwrap_or_default(), &meta, &rows)?;
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| {
            (r.mc - r.closed_form).abs() > 3.0 * r.mc_std_error + TAU_GEOM
                || (r.quad - r.closed_form).abs() > 1e-3
        })
        .map(|r| format!("l = {}", r.l))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "disk curve disagrees at {}",
            bad.join(", ")
        )))
    }
}

fn ellipse_sweep(s: &Settings, e: Option<Vec<f64>>) -> Outcome {
    let cfg = SweepConfig {
        eccentricities: e
            .or_else(|| s.eccentricities.clone())
            .unwrap_or_else(|| DEFAULT_ECCENTRICITIES.to_vec()),
        lengths: s
            .l
            .clone()
            .unwrap_or_else(|| DEFAULT_SWEEP_LENGTHS.to_vec()),
        n_samples: s.n,
        seed: s.seed()?,
    };
    let rows = run_ellipse_sweep(&cfg)?;
    write_rows(
        s.writer()?,
        s.format.unwrap_or_default(),
        &cfg.metadata(),
        &rows,
    )?;
    for (e, l) in sweep_crossings(&rows) {
        match l {
            Some(l) => eprintln!("e = {e}: ellipse exceeds the disk beyond 3 sigma from l = {l}"),
            None => eprintln!("e = {e}: no swept length where the ellipse exceeds the disk"),
        }
    }
    Ok(())
}

fn suite_bodies(s: &Settings) -> Result<Vec<SuiteBody>, Failure> {
    Ok(match &s.body {
        Some(body) => {
            let body = if body.is_segment() {
                body.clone()
            } else {
                normalize_to_perimeter(body)?
            };
            let mut sb = SuiteBody::new(&s.body_id, body.clone());
            if let ConvexBody::Ellipse(e) = &body {
                sb.exact_body =
                    normalize_to_perimeter(&ConvexBody::Polygon(e.polygon_proxy(s.proxy_n)?))?;
            }
            vec![sb]
        }
        None => standard_bodies(s.proxy_n)?,
    })
}

fn verify(s: &Settings) -> Outcome {
    let mut cfg = VerifyConfig::new(s.n, s.seed()?);
    if let Some(l) = &s.l {
        cfg.l_grid = l.clone();
    }
    cfg.quad_grid = s.grid;
    cfg.proxy_n = s.proxy_n;
    let report = run_verification_suite(&suite_bodies(s)?, &cfg);
    let out = s.writer()?;
    match s.format.unwrap_or(Format::Json) {
        Format::Json => write_json(out, &report)?,
        Format::Csv => write_rows(out, Format::Csv, &[], &report.checks)?,
    }
    let failed: Vec<String> = report
        .failures()
        .map(|c| format!("{}/{}", c.body_id, c.check))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn steiner_check(s: &Settings) -> Outcome {
    let radii = s.l.clone().unwrap_or_else(|| vec![0.01, 0.05, 0.1]);
    let bodies: Vec<(String, ConvexBody)> = match &s.body {
        Some(b) => vec![(s.body_id.clone(), b.clone())],
        None => standard_bodies(s.proxy_n)?
            .into_iter()
            .filter(|b| !b.body.is_segment())
            .map(|b| (b.id, b.body))
            .collect(),
    };
    let mut rows = Vec::new();
    for (id, body) in &bodies {
        rows.extend(steiner_rows(id, body, &radii, s.proxy_n)?);
    }
    write_rows(s.writer()?, s.format.unwrap_or_default(), &[], &rows)?;
    let bad = rows.iter().filter(|r| {
        r.gap_area < -TAU_GEOM
            || r.gap_perimeter < -TAU_GEOM
            || r.area_residual.abs() > STEINER_TOLERANCE * r.area_body
            || r.perimeter_residual.abs() > STEINER_TOLERANCE * r.perimeter_body
    });
    match bad.count() {
        0 => Ok(()),
        k => Err(Failure::Check(format!("{k} Steiner rows out of tolerance"))),
    }
}

fn body_eval(s: &Settings, bounds: bool, raw: bool) -> Outcome {
    let body = if raw || s.body()?.is_segment() {
        s.body()?.clone()
    } else {
        normalize_to_perimeter(s.body()?)?
    };
    let l_grid = s.l.clone().unwrap_or_else(|| vec![0.05, 0.1, 0.2]);
    let meta = vec![format!(
        "body-eval: {} ({}), area = {}, perimeter = {}",
        s.body_id,
        body.variant_name(),
        body.area(),
        body.perimeter()
    )];
    let out = s.writer()?;
    let format = s.format.unwrap_or_default();
    if bounds {
        let rows = l_grid
            .iter()
            .map(|&l| bound_report(&s.body_id, &body, l))
            .collect::<Result<Vec<_>, _>>()?;
        write_rows(out, format, &meta, &rows)?;
    } else {
        let rows = evaluate_body(&s.body_id, &body, &l_grid, s.n, s.seed()?, s.grid)?;
        write_rows(out, format, &meta, &rows)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::DiskCurve(c) => disk_curve(&Settings::resolve(&c)?),
        Command::EllipseSweep { common, e } => {
            ellipse_sweep(&Settings::resolve(&common)?, non_empty(&e))
        }
        Command::Verify(c) => verify(&Settings::resolve(&c)?),
        Command::SteinerCheck(c) => steiner_check(&Settings::resolve(&c)?),
        Command::BodyEval {
            common,
            bounds,
            raw,
        } => body_eval(&Settings::resolve(&common)?, bounds, raw),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
