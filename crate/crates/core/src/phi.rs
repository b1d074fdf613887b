//! The reflection-equivariant homeomorphism between the polygon space
//! `M(n, r)` and the sphere `S^{n-3}`, for `n - 2 <= r < n - 1`.
//!
//! Forward: for `i = 1, 2, ...` the disk of radius `n - 1 - i` about the far
//! vertex cuts an arc off the unit circle about `x_{i-1}`; `x_i` lies on it,
//! and `t_i` is its linear counterclockwise parameter. The walk stops at the
//! first `i` with `d(x_i, x_{n-1}) = n - 1 - i`, where `x_i` is an arc
//! endpoint and `t_i = +-1`.
//!
//! Inverse: the same arcs, built vertex by vertex from the coordinates up to
//! the first `+-1`; the remaining vertices are evenly spaced on the segment
//! to `x_{n-1}`.

use thiserror::Error;

use crate::geom::{arc_parameter, arc_point, cut_arc, GeomError};
use crate::polygon::{ModuliSpec, PolygonConfig, PolygonError, ValidationReport};
use crate::sphere::{cart_to_susp, susp_to_cart, SphereError, SphereVector, SuspensionCoords};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhiError {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(ValidationReport),
    #[error("coordinates are for n = {found}, expected n = {expected}")]
    SpecMismatch { expected: usize, found: usize },
    #[error(transparent)]
    InvalidCoords(#[from] SphereError),
    #[error("inconsistent geometry at vertex {vertex}: {source}")]
    InconsistentGeometry { vertex: usize, source: GeomError },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

fn geometry(vertex: usize) -> impl FnOnce(GeomError) -> PhiError {
    move |source| PhiError::InconsistentGeometry { vertex, source }
}

/// Suspension coordinates of a polygon. The returned coordinates are
/// canonical (zero after `i0`), and `i0` equals `p.tail_index(tol)`.
pub fn phi_forward(p: &PolygonConfig, tol: f64) -> Result<SuspensionCoords, PhiError> {
    let report = p.validate(tol);
    if !report.is_empty() {
        return Err(PhiError::InvalidPolygon(report));
    }
    let spec = p.spec();
    let anchor = spec.anchor();
    let mut t = vec![0.0; spec.coord_len()];

    for i in 1..=spec.coord_len() {
        let radius = spec.upper_bound(i);
        let arc = cut_arc(p.vertex(i - 1), anchor, radius, tol).map_err(geometry(i))?;
        let x = p.vertex(i);
        if (x.distance(anchor) - radius).abs() <= tol {
            // x_i is an arc endpoint; the side is read off the angle
            t[i - 1] = if arc.offset_of(x) >= 0.0 { 1.0 } else { -1.0 };
            return Ok(SuspensionCoords::with_i0(t, i)?);
        }
        let ti = arc_parameter(&arc, x, tol).map_err(geometry(i))?;
        if ti.abs() >= 1.0 {
            return Err(PhiError::InconsistentGeometry {
                vertex: i,
                source: GeomError::OutOfRange(ti),
            });
        }
        t[i - 1] = ti;
    }
    // validation guarantees a unit last edge, so the loop returns
    Err(PhiError::InconsistentGeometry {
        vertex: spec.coord_len(),
        source: GeomError::NoIntersection {
            distance: p.anchor_distance(spec.coord_len()),
            radius: 1.0,
        },
    })
}

/// The polygon with the given suspension coordinates.
pub fn phi_inverse(
    spec: ModuliSpec,
    s: &SuspensionCoords,
    tol: f64,
) -> Result<PolygonConfig, PhiError> {
    if s.n() != spec.n() {
        return Err(PhiError::SpecMismatch {
            expected: spec.n(),
            found: s.n(),
        });
    }
    let n = spec.n();
    let anchor = spec.anchor();
    let i0 = s.i0();
    let mut vertices = Vec::with_capacity(n);
    vertices.push(crate::geom::Point::ORIGIN);

    for (i, &ti) in (1..=i0).zip(s.significant()) {
        let arc =
            cut_arc(vertices[i - 1], anchor, spec.upper_bound(i), tol).map_err(geometry(i))?;
        vertices.push(arc_point(&arc, ti).map_err(geometry(i))?);
    }

    let start = vertices[i0];
    let steps = (n - 1 - i0) as f64;
    for k in i0 + 1..n - 1 {
        vertices.push(start.lerp(anchor, (k - i0) as f64 / steps));
    }
    vertices.push(anchor);

    Ok(PolygonConfig::new(spec, vertices)?)
}

/// Cartesian image of a polygon on the unit sphere.
pub fn phi_cartesian(p: &PolygonConfig, tol: f64) -> Result<SphereVector, PhiError> {
    Ok(susp_to_cart(&phi_forward(p, tol)?))
}

/// The polygon whose Cartesian image is `v`.
pub fn phi_inverse_cartesian(
    spec: ModuliSpec,
    v: &SphereVector,
    tol: f64,
) -> Result<PolygonConfig, PhiError> {
    phi_inverse(spec, &cart_to_susp(v, tol)?, tol)
}

/// Largest vertex displacement between `p` and its reconstruction from its
/// own coordinates.
pub fn roundtrip_error(p: &PolygonConfig, tol: f64) -> Result<f64, PhiError> {
    let back = phi_inverse(p.spec(), &phi_forward(p, tol)?, tol)?;
    Ok(p.max_vertex_distance(&back))
}
