//! Two models of the sphere `S^{n-3}` and the maps between them.
//!
//! [`SphereVector`] is a unit vector of `R^{n-2}`. [`SuspensionCoords`] is
//! the iterated unreduced suspension of `S^0`: a tuple `(t_1, ..., t_{n-2})`
//! with every `t_i` in `[-1, 1]`, where everything after the first entry equal
//! to `+-1` carries no information. The two are related by
//!
//! ```text
//! x_i = t_i * prod_{j<i} sqrt(1 - t_j^2)
//! t_i = x_i / sqrt(1 - x_1^2 - ... - x_{i-1}^2)
//! ```
//!
//! and the antipodal map is negation in either model.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::polygon::ModuliSpec;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SphereError {
    #[error("vector has squared norm {norm_sq}, expected 1")]
    NotUnit { norm_sq: f64 },
    #[error("invalid suspension coordinates: {0}")]
    InvalidCoords(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("endpoints are antipodal (angle {angle}); the geodesic is not unique")]
    AntipodalEndpoints { angle: f64 },
}

/// Point of `S^{n-3}` as iterated-suspension coordinates.
///
/// `i0` is the 1-based position of the first entry equal to `+-1`. Entries
/// after it are kept as given; [`SuspensionCoords::canonical`] zeroes them.
#[derive(Debug, Clone, PartialEq)]
pub struct SuspensionCoords {
    t: Vec<f64>,
    i0: usize,
}

impl SuspensionCoords {
    pub fn new(t: Vec<f64>) -> Result<Self, SphereError> {
        if t.len() < 2 {
            return Err(SphereError::InvalidCoords(format!(
                "need at least 2 entries, got {}",
                t.len()
            )));
        }
        if let Some((i, v)) = t
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || v.abs() > 1.0)
        {
            return Err(SphereError::InvalidCoords(format!(
                "entry {} = {v} outside [-1, 1]",
                i + 1
            )));
        }
        let Some(pos) = t.iter().position(|v| v.abs() == 1.0) else {
            return Err(SphereError::InvalidCoords(
                "no entry equals +-1".to_string(),
            ));
        };
        Ok(SuspensionCoords { t, i0: pos + 1 })
    }

    /// Like [`SuspensionCoords::new`], additionally checking the claimed
    /// termination index.
    pub fn with_i0(t: Vec<f64>, i0: usize) -> Result<Self, SphereError> {
        let s = Self::new(t)?;
        if s.i0 != i0 {
            return Err(SphereError::InvalidCoords(format!(
                "i0 = {i0} but the first +-1 entry is at {}",
                s.i0
            )));
        }
        Ok(s)
    }

    /// Polygon size `n`; the sphere has dimension `n - 3`.
    pub fn n(&self) -> usize {
        self.t.len() + 2
    }

    pub fn i0(&self) -> usize {
        self.i0
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    /// The entries that matter: `t_1, ..., t_{i0}`.
    pub fn significant(&self) -> &[f64] {
        &self.t[..self.i0]
    }

    /// Sign of the terminating entry.
    pub fn pole(&self) -> f64 {
        self.t[self.i0 - 1]
    }

    /// Same class with the irrelevant tail set to zero.
    pub fn canonical(&self) -> SuspensionCoords {
        let mut t = self.t.clone();
        t[self.i0..].iter_mut().for_each(|v| *v = 0.0);
        SuspensionCoords { t, i0: self.i0 }
    }

    /// The antipodal point.
    pub fn negate(&self) -> SuspensionCoords {
        SuspensionCoords {
            t: self.t.iter().map(|v| -v).collect(),
            i0: self.i0,
        }
    }

    pub fn to_cartesian(&self) -> SphereVector {
        susp_to_cart(self)
    }
}

/// Unit vector of `R^{n-2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereVector(Vec<f64>);

impl SphereVector {
    pub fn new(x: Vec<f64>, tol: f64) -> Result<Self, SphereError> {
        if x.len() < 2 {
            return Err(SphereError::DimensionMismatch {
                left: x.len(),
                right: 2,
            });
        }
        let norm_sq: f64 = x.iter().map(|v| v * v).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > tol {
            return Err(SphereError::NotUnit { norm_sq });
        }
        Ok(SphereVector(x))
    }

    /// Scales `x` to unit length. `None` for the zero vector.
    pub fn normalized(x: Vec<f64>) -> Option<Self> {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if x.len() < 2 || !norm.is_finite() || norm == 0.0 {
            return None;
        }
        Some(SphereVector(x.into_iter().map(|v| v / norm).collect()))
    }

    /// Polygon size `n` this vector corresponds to.
    pub fn n(&self) -> usize {
        self.0.len() + 2
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn antipode(&self) -> SphereVector {
        SphereVector(self.0.iter().map(|v| -v).collect())
    }

    pub fn dot(&self, other: &SphereVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Great-circle distance, from the rejection of `self` off `other`
    /// and their dot product.
    pub fn angle_to(&self, other: &SphereVector) -> f64 {
        let dot = self.dot(other);
        let rejection = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                let r = a - dot * b;
                r * r
            })
            .sum::<f64>()
            .sqrt();
        rejection.atan2(dot)
    }

    /// Largest coordinate difference.
    pub fn max_diff(&self, other: &SphereVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_suspension(&self, tol: f64) -> Result<SuspensionCoords, SphereError> {
        cart_to_susp(self, tol)
    }
}

impl fmt::Display for SphereVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

fn complement(t: f64) -> f64 {
    ((1.0 - t) * (1.0 + t)).max(0.0).sqrt()
}

/// Suspension coordinates to the unit vector they describe.
pub fn susp_to_cart(s: &SuspensionCoords) -> SphereVector {
    let mut x = vec![0.0; s.t.len()];
    let mut scale = 1.0;
    for (xi, &ti) in x.iter_mut().zip(s.significant()) {
        *xi = ti * scale;
        scale *= complement(ti);
    }
    SphereVector(x)
}

/// Unit vector to canonical suspension coordinates.
///
/// The denominators `1 - x_1^2 - ... - x_{i-1}^2` are evaluated as the
/// trailing sums `x_i^2 + ... + x_{n-2}^2`, which agree for unit vectors and
/// avoid cancellation. The walk stops at the first index whose remaining
/// tail has squared norm below `tol^2`.
pub fn cart_to_susp(v: &SphereVector, tol: f64) -> Result<SuspensionCoords, SphereError> {
    let x = &v.0;
    let m = x.len();
    let mut suffix = vec![0.0; m + 1];
    for i in (0..m).rev() {
        suffix[i] = suffix[i + 1] + x[i] * x[i];
    }
    if (suffix[0] - 1.0).abs() > tol {
        return Err(SphereError::NotUnit { norm_sq: suffix[0] });
    }

    let mut t = vec![0.0; m];
    for i in 0..m {
        let pole = if x[i] < 0.0 { -1.0 } else { 1.0 };
        if suffix[i + 1] < tol * tol {
            t[i] = pole;
            return Ok(SuspensionCoords { t, i0: i + 1 });
        }
        let ti = x[i] / suffix[i].sqrt();
        if ti.abs() >= 1.0 {
            t[i] = pole;
            return Ok(SuspensionCoords { t, i0: i + 1 });
        }
        t[i] = ti;
    }
    unreachable!("the last trailing sum is zero")
}

/// Whether two coordinate tuples name the same point of the sphere: equal
/// termination index and sign, and entries before it within `tol`.
pub fn susp_equiv(
    a: &SuspensionCoords,
    b: &SuspensionCoords,
    tol: f64,
) -> Result<bool, SphereError> {
    if a.n() != b.n() {
        return Err(SphereError::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(a.i0 == b.i0
        && a.pole() == b.pole()
        && a.significant()
            .iter()
            .zip(b.significant())
            .all(|(p, q)| (p - q).abs() <= tol))
}

/// Representative of `{v, -v}` whose first entry above `tol` in magnitude
/// is positive.
pub fn projective_canonical(v: &SphereVector, tol: f64) -> SphereVector {
    let lead = v.0.iter().find(|x| x.abs() > tol).copied().unwrap_or(0.0);
    if lead < 0.0 {
        v.antipode()
    } else {
        v.clone()
    }
}

/// Constant-speed great-circle interpolation from `u` (`s = 0`) to `v`
/// (`s = 1`).
pub fn slerp(
    u: &SphereVector,
    v: &SphereVector,
    s: f64,
    tol: f64,
) -> Result<SphereVector, SphereError> {
    if u.0.len() != v.0.len() {
        return Err(SphereError::DimensionMismatch {
            left: u.n(),
            right: v.n(),
        });
    }
    let angle = u.angle_to(v);
    if angle >= PI - tol {
        return Err(SphereError::AntipodalEndpoints { angle });
    }
    if s == 0.0 {
        return Ok(u.clone());
    }
    if s == 1.0 {
        return Ok(v.clone());
    }
    // unit tangent at u pointing toward v
    let dot = u.dot(v);
    let Some(tangent) =
        SphereVector::normalized(v.0.iter().zip(&u.0).map(|(b, a)| b - dot * a).collect())
    else {
        return Ok(u.clone());
    };
    let (sin, cos) = (s * angle).sin_cos();
    let w =
        u.0.iter()
            .zip(&tangent.0)
            .map(|(a, e)| cos * a + sin * e)
            .collect();
    Ok(SphereVector::normalized(w).expect("rotation of a unit vector"))
}

/// Deterministic stream of uniformly distributed unit vectors: normalized
/// vectors of independent standard normals.
#[derive(Debug, Clone)]
pub struct SphereSampler {
    len: usize,
    rng: ChaCha8Rng,
}

impl SphereSampler {
    pub fn new(spec: ModuliSpec, seed: u64) -> Self {
        SphereSampler {
            len: spec.coord_len(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn sample(&mut self) -> SphereVector {
        loop {
            let x: Vec<f64> = (0..self.len)
                .map(|_| self.rng.sample(StandardNormal))
                .collect();
            if let Some(v) = SphereVector::normalized(x) {
                return v;
            }
        }
    }
}

impl Iterator for SphereSampler {
    type Item = SphereVector;

    fn next(&mut self) -> Option<SphereVector> {
        Some(self.sample())
    }
}

/// One uniform sample of `S^{n-3}` determined by `seed`.
pub fn sample_uniform(spec: ModuliSpec, seed: u64) -> SphereVector {
    SphereSampler::new(spec, seed).sample()
}
