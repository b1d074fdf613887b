//! JSON and CSV formats.
//!
//! ```text
//! polygon      {"n": 4, "r": 2.0, "vertices": [[0.0, 0.0], ...]}
//! coordinates  {"n": 4, "r": 2.0, "t": [0.0, 1.0], "i0": 2, "x": [0.0, 1.0]}
//! plan         {"spec": {"n": 4, "r": 2.0}, "mode": "oriented", "angle": 1.57,
//!               "frames": [polygon, ...], "from": polygon, "to": polygon}
//! ```
//!
//! Floats are written in shortest round-trip form, so decoding an encoded
//! value gives back the identical bits and equal inputs give equal text.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::Point;
use crate::planner::{PathPlan, PlanMode};
use crate::polygon::{ModuliSpec, PolygonConfig, PolygonError, ValidationReport};
use crate::sphere::{susp_to_cart, SphereVector, SuspensionCoords};

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field {
        field: &'static str,
        message: String,
    },
    #[error("polygon fails validation: {0}")]
    Validation(ValidationReport),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl From<serde_json::Error> for CodecError {
    fn from(e: serde_json::Error) -> Self {
        let (line, column) = (e.line(), e.column());
        let full = e.to_string();
        let suffix = format!(" at line {line} column {column}");
        let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
        CodecError::Parse {
            line,
            column,
            message,
        }
    }
}

fn field(field: &'static str, message: impl ToString) -> CodecError {
    CodecError::Field {
        field,
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecJson {
    pub n: usize,
    pub r: f64,
}

impl From<ModuliSpec> for SpecJson {
    fn from(s: ModuliSpec) -> Self {
        SpecJson { n: s.n(), r: s.r() }
    }
}

impl SpecJson {
    pub fn to_spec(self) -> Result<ModuliSpec, CodecError> {
        ModuliSpec::new(self.n, self.r).map_err(|e| match e {
            PolygonError::InvalidSpec { reason, .. } => field("r", reason),
            other => field("n", other),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonJson {
    pub n: usize,
    pub r: f64,
    pub vertices: Vec<[f64; 2]>,
}

impl From<&PolygonConfig> for PolygonJson {
    fn from(p: &PolygonConfig) -> Self {
        PolygonJson {
            n: p.n(),
            r: p.spec().r(),
            vertices: p.vertices().iter().map(|&v| v.into()).collect(),
        }
    }
}

impl PolygonJson {
    pub fn to_polygon(&self) -> Result<PolygonConfig, CodecError> {
        let spec = SpecJson {
            n: self.n,
            r: self.r,
        }
        .to_spec()?;
        let vertices = self.vertices.iter().copied().map(Point::from).collect();
        PolygonConfig::new(spec, vertices).map_err(|e| field("vertices", e))
    }
}

/// Coordinates document. On input either `t` or `x` may be omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordsJson {
    pub n: usize,
    pub r: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i0: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
}

impl CoordsJson {
    pub fn new(spec: ModuliSpec, s: &SuspensionCoords) -> Self {
        CoordsJson {
            n: spec.n(),
            r: spec.r(),
            t: Some(s.t().to_vec()),
            i0: Some(s.i0()),
            x: Some(susp_to_cart(s).into_vec()),
        }
    }

    pub fn spec(&self) -> Result<ModuliSpec, CodecError> {
        SpecJson {
            n: self.n,
            r: self.r,
        }
        .to_spec()
    }

    /// Suspension coordinates if `t` is present, else the Cartesian vector.
    pub fn to_coords(&self, tol: f64) -> Result<Coords, CodecError> {
        let len = self.n.saturating_sub(2);
        if let Some(t) = &self.t {
            if t.len() != len {
                return Err(field(
                    "t",
                    format!("expected {len} entries, got {}", t.len()),
                ));
            }
            let s = match self.i0 {
                Some(i0) => SuspensionCoords::with_i0(t.clone(), i0),
                None => SuspensionCoords::new(t.clone()),
            }
            .map_err(|e| field("t", e))?;
            return Ok(Coords::Suspension(s));
        }
        let Some(x) = &self.x else {
            return Err(field("t", "one of `t` or `x` is required"));
        };
        if x.len() != len {
            return Err(field(
                "x",
                format!("expected {len} entries, got {}", x.len()),
            ));
        }
        SphereVector::new(x.clone(), tol)
            .map(Coords::Cartesian)
            .map_err(|e| field("x", e))
    }
}

/// Either representation of a sphere point, as read from a document.
#[derive(Debug, Clone, PartialEq)]
pub enum Coords {
    Suspension(SuspensionCoords),
    Cartesian(SphereVector),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanJson {
    pub spec: SpecJson,
    pub mode: PlanMode,
    pub angle: f64,
    pub frames: Vec<PolygonJson>,
    pub from: PolygonJson,
    pub to: PolygonJson,
}

impl From<&PathPlan> for PlanJson {
    fn from(p: &PathPlan) -> Self {
        PlanJson {
            spec: p.spec.into(),
            mode: p.mode,
            angle: p.angle,
            frames: p.frames.iter().map(PolygonJson::from).collect(),
            from: (&p.from).into(),
            to: (&p.to).into(),
        }
    }
}

impl PlanJson {
    pub fn to_plan(&self) -> Result<PathPlan, CodecError> {
        let spec = self.spec.to_spec()?;
        let frames = self
            .frames
            .iter()
            .map(PolygonJson::to_polygon)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PathPlan {
            spec,
            mode: self.mode,
            from: self.from.to_polygon()?,
            to: self.to.to_polygon()?,
            frames,
            angle: self.angle,
        })
    }
}

fn to_text<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

pub fn encode_polygon(p: &PolygonConfig) -> String {
    to_text(&PolygonJson::from(p))
}

/// Parses a polygon, checking `(n, r)` and the vertex count but not the
/// geometry.
pub fn decode_polygon(text: &str) -> Result<PolygonConfig, CodecError> {
    serde_json::from_str::<PolygonJson>(text)?.to_polygon()
}

/// Parses a polygon and requires it to pass validation at `tol`.
pub fn decode_valid_polygon(text: &str, tol: f64) -> Result<PolygonConfig, CodecError> {
    let p = decode_polygon(text)?;
    let report = p.validate(tol);
    if !report.is_empty() {
        return Err(CodecError::Validation(report));
    }
    Ok(p)
}

pub fn encode_polygons(ps: &[PolygonConfig]) -> String {
    to_text(&ps.iter().map(PolygonJson::from).collect::<Vec<_>>())
}

pub fn decode_polygons(text: &str) -> Result<Vec<PolygonConfig>, CodecError> {
    serde_json::from_str::<Vec<PolygonJson>>(text)?
        .iter()
        .map(PolygonJson::to_polygon)
        .collect()
}

pub fn encode_coords(spec: ModuliSpec, s: &SuspensionCoords) -> String {
    to_text(&CoordsJson::new(spec, s))
}

pub fn decode_coords(text: &str) -> Result<CoordsJson, CodecError> {
    Ok(serde_json::from_str(text)?)
}

pub fn encode_plan(plan: &PathPlan) -> String {
    to_text(&PlanJson::from(plan))
}

pub fn decode_plan(text: &str) -> Result<PathPlan, CodecError> {
    serde_json::from_str::<PlanJson>(text)?.to_plan()
}

/// One row per frame: `frame,x0,y0,x1,y1,...`.
pub fn plan_to_csv(plan: &PathPlan) -> Result<String, CodecError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let n = plan.spec.n();
    let mut header = vec!["frame".to_string()];
    for i in 0..n {
        header.push(format!("x{i}"));
        header.push(format!("y{i}"));
    }
    w.write_record(&header)?;
    for (k, frame) in plan.frames.iter().enumerate() {
        let mut row = vec![k.to_string()];
        for v in frame.vertices() {
            row.push(v.x.to_string());
            row.push(v.y.to_string());
        }
        w.write_record(&row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}
