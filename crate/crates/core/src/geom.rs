//! Planar primitives: points, angle wrapping, and the arc that a disk cuts
//! off a unit circle.
//!
//! The arc construction works on the triangle formed by the unit circle's
//! center `c`, the disk center `q` (the "target"), and one arc endpoint `e`.
//! Its sides are `|c - e| = 1`, `|q - e| = R` and `|c - q| = d`, so the law
//! of cosines gives the angle at `c` between the directions to `q` and `e`:
//!
//! ```text
//! R^2 = d^2 + 1 - 2 d cos(half_angle)
//! half_angle = arccos((d^2 + 1 - R^2) / (2 d))
//! ```
//!
//! A point `c + (cos a, sin a)` of the unit circle lies within distance `R`
//! of `q` exactly when the wrapped offset `a - theta_c` has magnitude at most
//! `half_angle`, where `theta_c` is the direction from `c` to `q`. The arc is
//! parametrized linearly in angle by `t` in `[-1, 1]`, counterclockwise, with
//! `t = 0` at the point closest to `q`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance used when callers have no better information.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Arcs narrower than this are treated as single points by [`arc_parameter`].
pub const MIN_HALF_ANGLE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeomError {
    #[error(
        "disk of radius {radius} about target at distance {distance} does not meet the unit circle"
    )]
    NoIntersection { distance: f64, radius: f64 },
    #[error("unit circle center coincides with the target (distance {distance})")]
    DegenerateCenter { distance: f64 },
    #[error("arc parameter {0} outside [-1, 1]")]
    OutOfRange(f64),
    #[error("point is {distance} from the arc center, expected 1")]
    NotOnCircle { distance: f64 },
    #[error("angular offset {offset} exceeds half-angle {half_angle}")]
    OutsideArc { offset: f64, half_angle: f64 },
    #[error("arc half-angle {0} is too small to parametrize")]
    DegenerateArc(f64),
}

/// A point of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Direction angle of `other - self`, in `(-pi, pi]`.
    pub fn angle_to(self, other: Point) -> f64 {
        wrap_angle((other.y - self.y).atan2(other.x - self.x))
    }

    /// Mirror image across the x-axis.
    pub fn reflect_x(self) -> Point {
        Point::new(self.x, -self.y)
    }

    /// `self + s * (other - self)`.
    pub fn lerp(self, other: Point, s: f64) -> Point {
        Point::new(
            self.x + s * (other.x - self.x),
            self.y + s * (other.y - self.y),
        )
    }

    /// The point of the unit circle about `self` in direction `angle`.
    pub fn unit_offset(self, angle: f64) -> Point {
        let (sin, cos) = angle.sin_cos();
        Point::new(self.x + cos, self.y + sin)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    if a > -PI && a <= PI {
        return a;
    }
    let mut w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w -= 2.0 * PI;
    }
    w
}

/// An arc of the unit circle about `center`, spanning the directions
/// `theta_c - half_angle ..= theta_c + half_angle`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcSpec {
    pub center: Point,
    pub theta_c: f64,
    pub half_angle: f64,
}

impl ArcSpec {
    /// Endpoint at parameter `-1` (clockwise end).
    pub fn start(&self) -> Point {
        self.center.unit_offset(self.theta_c - self.half_angle)
    }

    /// Endpoint at parameter `+1` (counterclockwise end).
    pub fn end(&self) -> Point {
        self.center.unit_offset(self.theta_c + self.half_angle)
    }

    /// Wrapped angular offset of `p` from the central direction.
    pub fn offset_of(&self, p: Point) -> f64 {
        wrap_angle(self.center.angle_to(p) - self.theta_c)
    }
}

/// The arc of the unit circle about `center` consisting of points within
/// distance `radius` of `target`.
pub fn cut_arc(center: Point, target: Point, radius: f64, tol: f64) -> Result<ArcSpec, GeomError> {
    let d = center.distance(target);
    if d <= tol {
        return Err(GeomError::DegenerateCenter { distance: d });
    }
    if d > radius + 1.0 + tol || d < radius - 1.0 - tol {
        return Err(GeomError::NoIntersection {
            distance: d,
            radius,
        });
    }
    let cos_half = ((d * d + 1.0 - radius * radius) / (2.0 * d)).clamp(-1.0, 1.0);
    Ok(ArcSpec {
        center,
        theta_c: center.angle_to(target),
        half_angle: cos_half.acos(),
    })
}

/// The point with parameter `t` on `arc`.
pub fn arc_point(arc: &ArcSpec, t: f64) -> Result<Point, GeomError> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(GeomError::OutOfRange(t));
    }
    Ok(arc.center.unit_offset(arc.theta_c + t * arc.half_angle))
}

/// The parameter of `p` on `arc`; inverse of [`arc_point`].
pub fn arc_parameter(arc: &ArcSpec, p: Point, tol: f64) -> Result<f64, GeomError> {
    if arc.half_angle <= tol.max(MIN_HALF_ANGLE) {
        return Err(GeomError::DegenerateArc(arc.half_angle));
    }
    let radial = arc.center.distance(p);
    if (radial - 1.0).abs() > tol {
        return Err(GeomError::NotOnCircle { distance: radial });
    }
    let offset = arc.offset_of(p);
    if offset.abs() > arc.half_angle + tol {
        return Err(GeomError::OutsideArc {
            offset,
            half_angle: arc.half_angle,
        });
    }
    Ok((offset / arc.half_angle).clamp(-1.0, 1.0))
}
