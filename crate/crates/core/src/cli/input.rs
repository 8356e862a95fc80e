//! Body files, run configs and perimeter normalization.

use std::f64::consts::TAU;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geom::{ConvexBody, Point};

/// On-disk description of a body, e.g.
/// `{"type": "ellipse", "a": 2, "b": 1}` or
/// `{"type": "polygon", "vertices": [[0,0],[1,0],[0,1]]}`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodyInput {
    Polygon {
        vertices: Vec<Point>,
    },
    Disk {
        #[serde(default)]
        center: Option<Point>,
        radius: f64,
    },
    Ellipse {
        #[serde(default)]
        center: Option<Point>,
        a: f64,
        b: f64,
        #[serde(default)]
        rotation: f64,
    },
    Segment {
        start: Point,
        end: Point,
    },
}

impl BodyInput {
    pub fn build(&self) -> Result<ConvexBody> {
        match self {
            BodyInput::Polygon { vertices } => ConvexBody::polygon(vertices.clone()),
            BodyInput::Disk { center, radius } => {
                ConvexBody::disk(center.unwrap_or(Point::ORIGIN), *radius)
            }
            BodyInput::Ellipse {
                center,
                a,
                b,
                rotation,
            } => ConvexBody::ellipse(center.unwrap_or(Point::ORIGIN), *a, *b, *rotation),
            BodyInput::Segment { start, end } => ConvexBody::segment(*start, *end),
        }
    }
}

pub fn parse_body(json: &str) -> Result<ConvexBody> {
    serde_json::from_str::<BodyInput>(json)
        .map_err(|e| Error::Parse(format!("body: {e}")))?
        .build()
}

pub fn read_body(path: &Path) -> Result<ConvexBody> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_body(&text)
}

/// Options shared by the subcommands; every field can also come from a JSON
/// config file, with command-line flags taking precedence.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub body: Option<BodyInput>,
    pub l: Option<Vec<f64>>,
    pub n: Option<u64>,
    pub seed: Option<u64>,
    pub eccentricities: Option<Vec<f64>>,
    pub proxy_n: Option<usize>,
    pub grid: Option<usize>,
}

impl RunConfig {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Uniform scaling about the origin to perimeter 2π. The ellipse perimeter
/// comes from numerical quadrature, so its scale is refined by a fixed-point
/// iteration on that quadrature until it agrees to `1e-12`.
pub fn normalize_to_perimeter(body: &ConvexBody) -> Result<ConvexBody> {
    if body.is_segment() {
        return Err(Error::DegenerateBody(
            "a segment has no area and cannot be normalized".into(),
        ));
    }
    let perimeter = body.perimeter();
    if !(perimeter > 0.0 && perimeter.is_finite()) {
        return Err(Error::DegenerateBody(format!("perimeter {perimeter}")));
    }
    let mut scale = TAU / perimeter;
    let mut scaled = body.scaled(scale);
    if matches!(body, ConvexBody::Ellipse(_)) {
        for _ in 0..8 {
            let p = scaled.perimeter();
            if (p - TAU).abs() <= 1e-12 {
                break;
            }
            scale *= TAU / p;
            scaled = body.scaled(scale);
        }
    }
    Ok(scaled)
}
