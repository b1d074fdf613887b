//! Geodesic morphs between polygons.
//!
//! Both endpoints are mapped to the unit sphere, joined by a great-circle
//! arc, and the evenly spaced points of that arc are pulled back to
//! polygons. In [`PlanMode::Unoriented`] a polygon and its mirror image count
//! as the same configuration, so the goal's image may be replaced by its
//! antipode, whichever is closer; paths then live in projective space.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::phi::{phi_cartesian, phi_inverse_cartesian, PhiError};
use crate::polygon::{ModuliSpec, PolygonConfig, ValidationReport};
use crate::sphere::{slerp, SphereError, SphereVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error(
        "endpoints map to antipodal points (angle {angle}); add a waypoint or plan unoriented"
    )]
    AntipodalEndpoints { angle: f64 },
    #[error("polygon is in {found}, plan is for {expected}")]
    SpecMismatch {
        expected: ModuliSpec,
        found: ModuliSpec,
    },
    #[error("at least one step is required")]
    NoSteps,
    #[error(transparent)]
    Phi(#[from] PhiError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlanMode {
    /// Polygons up to rotation; paths on the sphere.
    Oriented,
    /// Polygons up to rotation and reflection; paths in projective space.
    Unoriented,
}

impl PlanMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PlanMode::Oriented => "oriented",
            PlanMode::Unoriented => "unoriented",
        }
    }

    /// Largest geodesic length a plan in this mode can have.
    pub fn max_angle(self) -> f64 {
        match self {
            PlanMode::Oriented => PI,
            PlanMode::Unoriented => FRAC_PI_2,
        }
    }
}

impl fmt::Display for PlanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PlanMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oriented" => Ok(PlanMode::Oriented),
            "unoriented" => Ok(PlanMode::Unoriented),
            other => Err(format!(
                "unknown mode `{other}`, expected oriented or unoriented"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathPlan {
    pub spec: ModuliSpec,
    pub mode: PlanMode,
    /// Requested start.
    pub from: PolygonConfig,
    /// Requested goal.
    pub to: PolygonConfig,
    pub frames: Vec<PolygonConfig>,
    /// Great-circle length of the path on the sphere, in radians.
    pub angle: f64,
}

impl PathPlan {
    pub fn steps(&self) -> usize {
        self.frames.len().saturating_sub(1)
    }
}

fn check_spec(spec: ModuliSpec, p: &PolygonConfig) -> Result<(), PlanError> {
    if p.spec() != spec {
        return Err(PlanError::SpecMismatch {
            expected: spec,
            found: p.spec(),
        });
    }
    Ok(())
}

/// Plans `steps` equal great-circle steps from `p` to `q`.
pub fn plan(
    spec: ModuliSpec,
    p: &PolygonConfig,
    q: &PolygonConfig,
    steps: usize,
    mode: PlanMode,
    tol: f64,
) -> Result<PathPlan, PlanError> {
    if steps == 0 {
        return Err(PlanError::NoSteps);
    }
    check_spec(spec, p)?;
    check_spec(spec, q)?;

    let u = phi_cartesian(p, tol)?;
    let mut v = phi_cartesian(q, tol)?;
    if mode == PlanMode::Unoriented && u.dot(&v) < 0.0 {
        v = v.antipode();
    }
    let angle = u.angle_to(&v);

    let frames = (0..=steps)
        .map(|k| {
            let w = slerp(&u, &v, k as f64 / steps as f64, tol).map_err(|e| match e {
                SphereError::AntipodalEndpoints { angle } => {
                    PlanError::AntipodalEndpoints { angle }
                }
                other => PlanError::Phi(other.into()),
            })?;
            Ok(phi_inverse_cartesian(spec, &w, tol)?)
        })
        .collect::<Result<Vec<_>, PlanError>>()?;

    Ok(PathPlan {
        spec,
        mode,
        from: p.clone(),
        to: q.clone(),
        frames,
        angle,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlanIssue {
    NoFrames,
    WrongSpec {
        frame: usize,
    },
    InvalidFrame {
        frame: usize,
        report: ValidationReport,
    },
    StartMismatch {
        error: f64,
    },
    EndMismatch {
        error: f64,
    },
    AngleOutOfRange {
        angle: f64,
    },
    UnevenStep {
        step: usize,
        angle: f64,
        expected: f64,
    },
    Unmappable {
        frame: usize,
        error: PhiError,
    },
}

impl fmt::Display for PlanIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanIssue::NoFrames => f.write_str("plan has no frames"),
            PlanIssue::WrongSpec { frame } => write!(f, "frame {frame} has the wrong (n, r)"),
            PlanIssue::InvalidFrame { frame, report } => write!(f, "frame {frame}: {report}"),
            PlanIssue::StartMismatch { error } => {
                write!(f, "first frame is {error} from the requested start")
            }
            PlanIssue::EndMismatch { error } => {
                write!(f, "last frame is {error} from the requested goal")
            }
            PlanIssue::AngleOutOfRange { angle } => write!(f, "angle {angle} out of range"),
            PlanIssue::UnevenStep {
                step,
                angle,
                expected,
            } => write!(f, "step {step} spans {angle} rad, expected {expected}"),
            PlanIssue::Unmappable { frame, error } => write!(f, "frame {frame}: {error}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PlanReport {
    pub issues: Vec<PlanIssue>,
    pub start_error: f64,
    pub end_error: f64,
    /// Largest deviation of a step's sphere angle from `angle / steps`.
    pub max_step_deviation: f64,
}

impl PlanReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for PlanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return f.write_str("valid");
        }
        for (k, issue) in self.issues.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

fn endpoint_error(frame: &PolygonConfig, target: &PolygonConfig, mode: PlanMode) -> f64 {
    let direct = frame.max_vertex_distance(target);
    match mode {
        PlanMode::Oriented => direct,
        PlanMode::Unoriented => direct.min(frame.max_vertex_distance(&target.reflect())),
    }
}

/// Checks frame validity, endpoint reproduction, the angle range and equal
/// step lengths, all to `tol`.
pub fn validate_plan(plan: &PathPlan, tol: f64) -> PlanReport {
    let mut report = PlanReport::default();
    let (Some(first), Some(last)) = (plan.frames.first(), plan.frames.last()) else {
        report.issues.push(PlanIssue::NoFrames);
        return report;
    };

    let mut images: Vec<Option<SphereVector>> = Vec::with_capacity(plan.frames.len());
    for (k, frame) in plan.frames.iter().enumerate() {
        if frame.spec() != plan.spec {
            report.issues.push(PlanIssue::WrongSpec { frame: k });
            images.push(None);
            continue;
        }
        let v = frame.validate(tol);
        if !v.is_empty() {
            report.issues.push(PlanIssue::InvalidFrame {
                frame: k,
                report: v,
            });
            images.push(None);
            continue;
        }
        match phi_cartesian(frame, tol) {
            Ok(img) => images.push(Some(img)),
            Err(error) => {
                report
                    .issues
                    .push(PlanIssue::Unmappable { frame: k, error });
                images.push(None);
            }
        }
    }

    if first.spec() == plan.spec && plan.from.spec() == plan.spec {
        report.start_error = endpoint_error(first, &plan.from, plan.mode);
        if report.start_error > tol {
            report.issues.push(PlanIssue::StartMismatch {
                error: report.start_error,
            });
        }
    }
    if last.spec() == plan.spec && plan.to.spec() == plan.spec {
        report.end_error = endpoint_error(last, &plan.to, plan.mode);
        if report.end_error > tol {
            report.issues.push(PlanIssue::EndMismatch {
                error: report.end_error,
            });
        }
    }

    if !(0.0..=plan.mode.max_angle()).contains(&plan.angle) {
        report
            .issues
            .push(PlanIssue::AngleOutOfRange { angle: plan.angle });
    }

    let steps = plan.steps();
    if steps > 0 {
        let expected = plan.angle / steps as f64;
        for (k, pair) in images.windows(2).enumerate() {
            if let [Some(a), Some(b)] = pair {
                let angle = a.angle_to(b);
                let dev = (angle - expected).abs();
                report.max_step_deviation = report.max_step_deviation.max(dev);
                if dev > tol {
                    report.issues.push(PlanIssue::UnevenStep {
                        step: k + 1,
                        angle,
                        expected,
                    });
                }
            }
        }
    }

    report
}
