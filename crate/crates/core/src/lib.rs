//! Planar polygons with `n - 1` unit sides and one side of length
//! `r` in `[n - 2, n - 1)`, identified with the sphere `S^{n-3}`.
//!
//! The identification is explicit and commutes with the two involutions:
//! reflecting a polygon across the x-axis corresponds to the antipodal map.
//! Passing to the quotient, unoriented polygons form `RP^{n-3}`.
//!
//! - [`geom`]: points, angles, and the arc a disk cuts off a unit circle.
//! - [`polygon`]: the polygon data model and its validation.
//! - [`sphere`]: suspension and Cartesian sphere coordinates, antipode,
//!   projective representatives, geodesics, sampling.
//! - [`phi`]: the homeomorphism and its inverse.
//! - [`planner`]: geodesic morphs between polygons.
//! - [`codec`] and [`render`]: JSON/CSV formats and SVG output.
//! - [`verify`]: the randomized property sweep behind the `check` command.

pub mod codec;
pub mod fixtures;
pub mod geom;
pub mod phi;
pub mod planner;
pub mod polygon;
pub mod render;
pub mod sphere;
pub mod verify;

pub use geom::{ArcSpec, GeomError, Point, DEFAULT_TOL};
pub use phi::{
    phi_cartesian, phi_forward, phi_inverse, phi_inverse_cartesian, roundtrip_error, PhiError,
};
pub use planner::{plan, validate_plan, PathPlan, PlanError, PlanMode};
pub use polygon::{
    ModuliSpec, PolygonConfig, PolygonError, ValidationReport, Violation, ViolationKind,
};
pub use sphere::{
    cart_to_susp, projective_canonical, sample_uniform, slerp, susp_equiv, susp_to_cart,
    SphereError, SphereSampler, SphereVector, SuspensionCoords,
};
