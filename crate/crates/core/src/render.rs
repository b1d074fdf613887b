//! SVG drawings of polygons in the style of a construction diagram: the
//! edges, labelled vertices, and optionally the unit circles `C(x_i, 1)` for
//! `i < i0` together with the constraint arcs about the far vertex.
//!
//! Output is a pure function of the input and options; numbers are written
//! with a fixed number of decimals.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use crate::geom::{cut_arc, wrap_angle, Point, DEFAULT_TOL};
use crate::planner::PathPlan;
use crate::polygon::PolygonConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    /// Draw unit circles and constraint arcs.
    pub overlays: bool,
    /// Pixels per unit length.
    pub scale: f64,
    /// Tolerance for locating the collinear tail.
    pub tol: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            overlays: false,
            scale: 100.0,
            tol: DEFAULT_TOL,
        }
    }
}

/// Fixed-point number without a negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

struct Canvas {
    scale: f64,
    min_x: f64,
    max_y: f64,
}

impl Canvas {
    fn x(&self, x: f64) -> String {
        num((x - self.min_x) * self.scale)
    }

    fn y(&self, y: f64) -> String {
        num((self.max_y - y) * self.scale)
    }
}

/// The polygon as a standalone SVG document.
pub fn render_polygon(p: &PolygonConfig, opts: &RenderOptions) -> String {
    let spec = p.spec();
    let n = p.n();
    let anchor = spec.anchor();
    let vertices = p.vertices();
    let i0 = p.tail_index(opts.tol).unwrap_or(n - 2);

    // bounds: vertices, plus the overlays' reach
    let margin = 0.5;
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (0.0f64, spec.r(), 0.0f64, 0.0f64);
    for v in vertices {
        min_x = min_x.min(v.x);
        max_x = max_x.max(v.x);
        min_y = min_y.min(v.y);
        max_y = max_y.max(v.y);
    }
    if opts.overlays {
        for v in &vertices[..i0] {
            min_x = min_x.min(v.x - 1.0);
            max_x = max_x.max(v.x + 1.0);
            min_y = min_y.min(v.y - 1.0);
            max_y = max_y.max(v.y + 1.0);
        }
    }
    min_x -= margin;
    max_x += margin;
    min_y -= margin;
    max_y += margin;
    let c = Canvas {
        scale: opts.scale,
        min_x,
        max_y,
    };
    let width = num((max_x - min_x) * opts.scale);
    let height = num((max_y - min_y) * opts.scale);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"  <title>polygon n={} r={} i0={}</title>"#,
        n,
        spec.r(),
        i0
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);

    if opts.overlays {
        let _ = writeln!(out, r##"  <g fill="none" stroke="#9aa" stroke-width="1">"##);
        for v in &vertices[..i0] {
            let _ = writeln!(
                out,
                r#"    <circle class="unit-circle" cx="{}" cy="{}" r="{}"/>"#,
                c.x(v.x),
                c.y(v.y),
                num(opts.scale)
            );
        }
        let _ = writeln!(out, "  </g>");
        let _ = writeln!(out, r##"  <g fill="none" stroke="#c84" stroke-width="1">"##);
        for i in 1..=n - 2 {
            let radius = spec.upper_bound(i);
            let (a, b) = constraint_span(vertices[i - 1], anchor, radius, opts.tol);
            let (sa, ca) = a.sin_cos();
            let (sb, cb) = b.sin_cos();
            let large = if b - a > PI { 1 } else { 0 };
            // counterclockwise in the plane is clockwise on screen
            let _ = writeln!(
                out,
                r#"    <path class="constraint-arc" d="M {} {} A {} {} 0 {} 1 {} {}"/>"#,
                c.x(anchor.x + radius * ca),
                c.y(anchor.y + radius * sa),
                num(radius * opts.scale),
                num(radius * opts.scale),
                large,
                c.x(anchor.x + radius * cb),
                c.y(anchor.y + radius * sb),
            );
        }
        let _ = writeln!(out, "  </g>");
    }

    let _ = writeln!(out, r#"  <g stroke="black" stroke-width="2">"#);
    let _ = writeln!(
        out,
        r#"    <line class="base" x1="{}" y1="{}" x2="{}" y2="{}" stroke-dasharray="6 4"/>"#,
        c.x(0.0),
        c.y(0.0),
        c.x(anchor.x),
        c.y(anchor.y)
    );
    for pair in vertices.windows(2) {
        let _ = writeln!(
            out,
            r#"    <line class="edge" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            c.x(pair[0].x),
            c.y(pair[0].y),
            c.x(pair[1].x),
            c.y(pair[1].y)
        );
    }
    let _ = writeln!(out, "  </g>");

    let _ = writeln!(out, r#"  <g font-family="sans-serif" font-size="14">"#);
    for (i, v) in vertices.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"    <circle class="vertex" cx="{}" cy="{}" r="4"/>"#,
            c.x(v.x),
            c.y(v.y)
        );
        let _ = writeln!(
            out,
            r#"    <text class="label" x="{}" y="{}">{i}</text>"#,
            c.x(v.x + 0.06),
            c.y(v.y + 0.06)
        );
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, "</svg>");
    out
}

/// Angular span, about `anchor`, of the constraint circle of `radius`
/// between its two crossings with the unit circle about `prev`, widened by
/// a little. Falls back to a fixed span facing `prev` when the circles only
/// touch.
fn constraint_span(prev: Point, anchor: Point, radius: f64, tol: f64) -> (f64, f64) {
    let facing = anchor.angle_to(prev);
    let half = match cut_arc(prev, anchor, radius, tol) {
        Ok(arc) if arc.half_angle > 1e-6 => {
            let e = arc.end();
            wrap_angle(anchor.angle_to(e) - facing).abs()
        }
        _ => 0.0,
    };
    let half = (half * 1.2).clamp(PI / 12.0, PI - 1e-3);
    (facing - half, facing + half)
}

/// One document per frame.
pub fn render_plan(plan: &PathPlan, opts: &RenderOptions) -> Vec<String> {
    plan.frames
        .iter()
        .map(|f| render_polygon(f, opts))
        .collect()
}

/// Writes `docs` as `<stem>.svg` or `<stem>-0000.svg, <stem>-0001.svg, ...`
/// into `dir`, returning the paths written.
pub fn write_svgs(
    dir: &Path,
    stem: &str,
    docs: &[String],
) -> std::io::Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::with_capacity(docs.len());
    for (k, doc) in docs.iter().enumerate() {
        let name = if docs.len() == 1 {
            format!("{stem}.svg")
        } else {
            format!("{stem}-{k:04}.svg")
        };
        let path = dir.join(name);
        std::fs::write(&path, doc)?;
        paths.push(path);
    }
    Ok(paths)
}
