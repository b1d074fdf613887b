//! Randomized property sweep over uniform sphere samples: round trips
//! through the homeomorphism, equivariance, projective canonicalization,
//! polygon validity and the distance bounds.

use serde::{Deserialize, Serialize};

use crate::phi::{phi_cartesian, phi_forward, phi_inverse, PhiError};
use crate::polygon::{ModuliSpec, PolygonConfig};
use crate::sphere::{cart_to_susp, projective_canonical, susp_to_cart, SphereSampler};

/// Working tolerance for exactly constructed polygons. Coordinates within
/// this of `+-1` are read as `+-1`, and the error this introduces into the
/// Cartesian image grows like the square root of the tolerance.
pub const EXACT_TOL: f64 = 1e-12;

/// Tolerance at which produced polygons must validate.
pub const VALIDITY_TOL: f64 = 1e-8;

/// Bound on round-trip errors, both in vertex and sphere coordinates.
pub const ROUNDTRIP_LIMIT: f64 = 1e-8;

/// Bound on `|phi(reflect P) + phi(P)|` and on projective mismatch.
pub const EQUIVARIANCE_LIMIT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub spec: ModuliSpec,
    pub count: usize,
    pub seed: u64,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub n: usize,
    pub r: f64,
    pub count: usize,
    pub seed: u64,
    pub tol: f64,
    /// Max vertex distance between `phi^-1(v)` and `phi^-1(phi(phi^-1(v)))`.
    pub max_roundtrip_vertex_error: f64,
    /// Max coordinate difference between `v` and `phi(phi^-1(v))`.
    pub max_roundtrip_cartesian_error: f64,
    /// Max coordinate of `phi(reflect P) + phi(P)`.
    pub max_equivariance_error: f64,
    /// Max difference of projective representatives of `P` and its mirror.
    pub max_projective_error: f64,
    /// Largest amount by which any distance bound is exceeded.
    pub max_bound_excess: f64,
    /// Smallest slack in the upper distance bound before the tail index.
    pub min_upper_margin: f64,
    pub invalid_polygons: usize,
    pub errors: usize,
    pub passed: bool,
}

/// Per-sample measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleCheck {
    pub polygon: PolygonConfig,
    pub i0: usize,
    pub vertex_error: f64,
    pub cartesian_error: f64,
    pub equivariance_error: f64,
    pub projective_error: f64,
    pub bound_excess: f64,
    pub upper_margin: f64,
    pub valid: bool,
}

/// Runs every check on the polygon whose image is the unit vector `v`.
pub fn check_sample(
    spec: ModuliSpec,
    v: &crate::sphere::SphereVector,
    tol: f64,
) -> Result<SampleCheck, PhiError> {
    let s = cart_to_susp(v, tol)?;
    let p = phi_inverse(spec, &s, tol)?;
    let valid = p.validate(VALIDITY_TOL).is_empty();

    let s2 = phi_forward(&p, tol)?;
    let image = susp_to_cart(&s2);
    let cartesian_error = v.max_diff(&image);
    let vertex_error = p.max_vertex_distance(&phi_inverse(spec, &s2, tol)?);

    let mirror = phi_cartesian(&p.reflect(), tol)?;
    let equivariance_error = mirror
        .as_slice()
        .iter()
        .zip(image.as_slice())
        .map(|(a, b)| (a + b).abs())
        .fold(0.0, f64::max);
    let projective_error =
        projective_canonical(&image, tol).max_diff(&projective_canonical(&mirror, tol));

    let mut bound_excess = 0.0f64;
    let mut upper_margin = f64::INFINITY;
    for i in 0..spec.n() - 1 {
        let d = p.anchor_distance(i);
        let hi = spec.upper_bound(i);
        bound_excess = bound_excess.max(d - hi).max(spec.lower_bound(i) - d);
        if i < s.i0() {
            upper_margin = upper_margin.min(hi - d);
        }
    }

    Ok(SampleCheck {
        polygon: p,
        i0: s.i0(),
        vertex_error,
        cartesian_error,
        equivariance_error,
        projective_error,
        bound_excess,
        upper_margin,
        valid,
    })
}

pub fn run_check(cfg: &CheckConfig) -> CheckSummary {
    let mut sum = CheckSummary {
        n: cfg.spec.n(),
        r: cfg.spec.r(),
        count: cfg.count,
        seed: cfg.seed,
        tol: cfg.tol,
        max_roundtrip_vertex_error: 0.0,
        max_roundtrip_cartesian_error: 0.0,
        max_equivariance_error: 0.0,
        max_projective_error: 0.0,
        max_bound_excess: 0.0,
        min_upper_margin: f64::INFINITY,
        invalid_polygons: 0,
        errors: 0,
        passed: false,
    };
    for v in SphereSampler::new(cfg.spec, cfg.seed).take(cfg.count) {
        match check_sample(cfg.spec, &v, cfg.tol) {
            Ok(c) => {
                sum.max_roundtrip_vertex_error = sum.max_roundtrip_vertex_error.max(c.vertex_error);
                sum.max_roundtrip_cartesian_error =
                    sum.max_roundtrip_cartesian_error.max(c.cartesian_error);
                sum.max_equivariance_error = sum.max_equivariance_error.max(c.equivariance_error);
                sum.max_projective_error = sum.max_projective_error.max(c.projective_error);
                sum.max_bound_excess = sum.max_bound_excess.max(c.bound_excess);
                sum.min_upper_margin = sum.min_upper_margin.min(c.upper_margin);
                if !c.valid {
                    sum.invalid_polygons += 1;
                }
            }
            Err(_) => sum.errors += 1,
        }
    }
    sum.passed = sum.errors == 0
        && sum.invalid_polygons == 0
        && sum.max_roundtrip_vertex_error < ROUNDTRIP_LIMIT
        && sum.max_roundtrip_cartesian_error < ROUNDTRIP_LIMIT
        && sum.max_equivariance_error < EQUIVARIANCE_LIMIT
        && sum.max_projective_error < EQUIVARIANCE_LIMIT
        && sum.max_bound_excess <= VALIDITY_TOL;
    sum
}

/// `count` polygons pulled back from uniform sphere samples.
pub fn sample_polygons(
    spec: ModuliSpec,
    seed: u64,
    count: usize,
    tol: f64,
) -> Result<Vec<PolygonConfig>, PhiError> {
    SphereSampler::new(spec, seed)
        .take(count)
        .map(|v| crate::phi::phi_inverse_cartesian(spec, &v, tol))
        .collect()
}
