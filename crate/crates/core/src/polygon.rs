//! Planar polygons with `n - 1` unit sides and one side of length `r`.
//!
//! A polygon is stored in its canonical position: `x_0 = (0, 0)` and
//! `x_{n-1} = (r, 0)`, with the unit edges running `x_0 -> x_1 -> ... ->
//! x_{n-1}`. Sides may cross each other.

use std::fmt;

use thiserror::Error;

use crate::geom::Point;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolygonError {
    #[error("unsupported moduli space (n = {n}, r = {r}): {reason}")]
    InvalidSpec {
        n: usize,
        r: f64,
        reason: &'static str,
    },
    #[error("expected {expected} vertices, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("no collinear tail within tolerance; closest was vertex {index} off by {deviation:e}")]
    TailNotFound { index: usize, deviation: f64 },
}

/// The pair `(n, r)`: `n` sides, `n - 1` of unit length and one of length
/// `r`, with `n >= 4` and `n - 2 <= r < n - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuliSpec {
    n: usize,
    r: f64,
}

impl ModuliSpec {
    pub fn new(n: usize, r: f64) -> Result<Self, PolygonError> {
        let invalid = |reason| PolygonError::InvalidSpec { n, r, reason };
        if n < 4 {
            return Err(invalid("n must be at least 4"));
        }
        if !r.is_finite() {
            return Err(invalid("r must be finite"));
        }
        let nf = n as f64;
        if r < nf - 2.0 {
            return Err(invalid("r must be at least n - 2"));
        }
        if r >= nf - 1.0 {
            return Err(invalid("r must be less than n - 1"));
        }
        Ok(ModuliSpec { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Dimension of the sphere the polygon space is homeomorphic to.
    pub fn sphere_dim(&self) -> usize {
        self.n - 3
    }

    /// Number of coordinates in either sphere representation, `n - 2`.
    pub fn coord_len(&self) -> usize {
        self.n - 2
    }

    /// The fixed far vertex `x_{n-1} = (r, 0)`.
    pub fn anchor(&self) -> Point {
        Point::new(self.r, 0.0)
    }

    /// Largest possible distance from `x_i` to `x_{n-1}`: `n - 1 - i`.
    pub fn upper_bound(&self, i: usize) -> f64 {
        (self.n - 1 - i) as f64
    }

    /// Smallest possible distance from `x_i` to `x_{n-1}`: `n - 2 - i`
    /// (clamped at zero for the last vertices).
    pub fn lower_bound(&self, i: usize) -> f64 {
        (self.n as f64 - 2.0 - i as f64).max(0.0)
    }
}

impl fmt::Display for ModuliSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M(n = {}, r = {})", self.n, self.r)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonConfig {
    spec: ModuliSpec,
    vertices: Vec<Point>,
}

impl PolygonConfig {
    pub fn new(spec: ModuliSpec, vertices: Vec<Point>) -> Result<Self, PolygonError> {
        if vertices.len() != spec.n {
            return Err(PolygonError::WrongArity {
                expected: spec.n,
                found: vertices.len(),
            });
        }
        Ok(PolygonConfig { spec, vertices })
    }

    pub fn spec(&self) -> ModuliSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    /// Distance from `x_i` to the far vertex `x_{n-1}`.
    pub fn anchor_distance(&self, i: usize) -> f64 {
        self.vertices[i].distance(self.spec.anchor())
    }

    /// Checks the canonical endpoints, unit edges and the distance bounds
    /// `n-2-i <= d(x_i, x_{n-1}) <= n-1-i`.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let spec = self.spec;
        let n = spec.n;
        let mut out = Vec::new();

        for (i, v) in self.vertices.iter().enumerate() {
            if !v.is_finite() {
                out.push(Violation::new(ViolationKind::NonFinite, i, f64::NAN, 0.0));
            }
        }
        if !out.is_empty() {
            return ValidationReport { violations: out };
        }

        for (i, expected) in [(0, Point::ORIGIN), (n - 1, spec.anchor())] {
            let off = self.vertices[i].distance(expected);
            if off > tol {
                out.push(Violation::new(ViolationKind::Endpoint, i, off, 0.0));
            }
        }

        for i in 1..n {
            let len = self.vertices[i - 1].distance(self.vertices[i]);
            if (len - 1.0).abs() > tol {
                out.push(Violation::new(ViolationKind::UnitEdge, i, len, 1.0));
            }
            if len <= tol {
                out.push(Violation::new(ViolationKind::Coincident, i, len, 0.0));
            }
        }

        for i in 0..n - 1 {
            let d = self.anchor_distance(i);
            let hi = spec.upper_bound(i);
            let lo = spec.lower_bound(i);
            if d > hi + tol {
                out.push(Violation::new(ViolationKind::UpperBound, i, d, hi));
            }
            if d < lo - tol {
                out.push(Violation::new(ViolationKind::LowerBound, i, d, lo));
            }
        }

        ValidationReport { violations: out }
    }

    /// Mirror image across the x-axis.
    pub fn reflect(&self) -> PolygonConfig {
        PolygonConfig {
            spec: self.spec,
            vertices: self.vertices.iter().map(|v| v.reflect_x()).collect(),
        }
    }

    /// The least `i >= 1` with `d(x_i, x_{n-1}) = n - 1 - i` within `tol`.
    /// From that vertex on, the polygon is a straight run of unit edges.
    pub fn tail_index(&self, tol: f64) -> Result<usize, PolygonError> {
        let mut closest = (0, f64::INFINITY);
        for i in 1..=self.n() - 2 {
            let dev = (self.anchor_distance(i) - self.spec.upper_bound(i)).abs();
            if dev <= tol {
                return Ok(i);
            }
            if dev < closest.1 {
                closest = (i, dev);
            }
        }
        Err(PolygonError::TailNotFound {
            index: closest.0,
            deviation: closest.1,
        })
    }

    /// Largest vertex displacement between two polygons of the same size.
    pub fn max_vertex_distance(&self, other: &PolygonConfig) -> f64 {
        self.vertices
            .iter()
            .zip(&other.vertices)
            .map(|(a, b)| a.distance(*b))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    NonFinite,
    /// `x_0` or `x_{n-1}` away from its canonical position.
    Endpoint,
    /// Edge `x_{i-1} x_i` not of unit length.
    UnitEdge,
    /// `x_{i-1}` and `x_i` coincide.
    Coincident,
    UpperBound,
    LowerBound,
}

/// One failed check. `index` is the vertex (or, for edges, the index of the
/// edge's second vertex); `bound` is the value `measured` was held to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub index: usize,
    pub measured: f64,
    pub bound: f64,
}

impl Violation {
    fn new(kind: ViolationKind, index: usize, measured: f64, bound: f64) -> Self {
        Violation {
            kind,
            index,
            measured,
            bound,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index;
        match self.kind {
            ViolationKind::NonFinite => write!(f, "vertex {i} is not finite"),
            ViolationKind::Endpoint => {
                write!(f, "vertex {i} is {} from its fixed position", self.measured)
            }
            ViolationKind::UnitEdge => {
                write!(f, "edge {i} has length {}, expected 1", self.measured)
            }
            ViolationKind::Coincident => write!(f, "vertices {} and {i} coincide", i - 1),
            ViolationKind::UpperBound => write!(
                f,
                "vertex {i} is {} from the far vertex, above the bound {}",
                self.measured, self.bound
            ),
            ViolationKind::LowerBound => write!(
                f,
                "vertex {i} is {} from the far vertex, below the bound {}",
                self.measured, self.bound
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
