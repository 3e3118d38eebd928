//! Metric circles and spheres.
//!
//! Circles of `s` are traced with the candidate-point construction in
//! [`s_circle`]; `j*` (and therefore `j`) circles have an explicit
//! description in [`jstar`]; hyperbolic balls are Euclidean balls with a
//! shifted centre. [`mesh`] turns a planar trace into a 3D sphere by
//! revolving it about the line through the origin and the centre.

pub mod jstar;
pub mod mesh;
pub mod s_circle;

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::error::{domain, Result};
use crate::geometry::PointB;
use crate::metrics::{self, MetricKind};

pub use jstar::{trace_j_circle, trace_jstar_circle, upsilon_radii};
pub use mesh::{revolve_3d, Mesh};
pub use s_circle::{
    candidate_points, s_line_intersections, s_midcircle_intersections, trace_s_circle, Candidate,
    CandidateSet, MidcircleIntersections,
};

/// An ordered polyline approximating a metric circle `S_d(center, radius)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trace {
    pub center: PointB,
    pub metric: MetricKind,
    pub radius: f64,
    /// Sorted by the argument of `v - center` on `[0, 2π)`, ties by distance.
    pub vertices: Vec<PointB>,
    /// `|d(center, v) - radius|` per vertex.
    pub residuals: Vec<f64>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// `re,im,residual` records, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,residual\n");
        for (v, r) in self.vertices.iter().zip(&self.residuals) {
            let c = v.coords();
            let _ = writeln!(out, "{},{},{:e}", c[0], c[1], r);
        }
        out
    }

    pub(crate) fn from_planar(
        center: &PointB,
        metric: MetricKind,
        radius: f64,
        mut pts: Vec<(Complex64, f64)>,
    ) -> Result<Self> {
        let x = center.planar()?;
        sort_by_argument(x, &mut pts);
        let mut vertices = Vec::with_capacity(pts.len());
        let mut residuals = Vec::with_capacity(pts.len());
        for (w, r) in pts {
            vertices.push(PointB::from_complex(w)?);
            residuals.push(r);
        }
        Ok(Self { center: center.clone(), metric, radius, vertices, residuals })
    }
}

/// Argument of `w - x` mapped to `[0, 2π)`.
pub(crate) fn argument_from(x: Complex64, w: Complex64) -> f64 {
    let d = w - x;
    let a = d.im.atan2(d.re);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

pub(crate) fn sort_by_argument(x: Complex64, pts: &mut [(Complex64, f64)]) {
    pts.sort_by(|p, q| {
        argument_from(x, p.0)
            .total_cmp(&argument_from(x, q.0))
            .then((p.0 - x).norm().total_cmp(&(q.0 - x).norm()))
    });
}

/// `n` points of the circle `|w - c| = r`, starting at angle `phase`.
pub(crate) fn circle_points(c: Complex64, r: f64, n: usize, phase: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let t = phase + TAU * k as f64 / n as f64;
            c + Complex64::new(r * t.cos(), r * t.sin())
        })
        .collect()
}

/// A Euclidean ball `B(center, radius)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EuclideanBall {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// The hyperbolic ball `B_ρ(x, R)` as a Euclidean ball: with `k = th(R/2)`
/// the centre is `x(1 - k²)/(1 - |x|²k²)` and the radius
/// `(1 - |x|²)k/(1 - |x|²k²)`.
pub fn rho_ball_euclidean(x: &PointB, big_r: f64) -> Result<EuclideanBall> {
    if !(big_r > 0.0 && big_r.is_finite()) {
        return domain(format!("hyperbolic radius {big_r} must be positive"));
    }
    if x.is_boundary() {
        return domain("centre must be an interior point");
    }
    let k = (big_r / 2.0).tanh();
    let ax2 = x.norm().powi(2);
    let den = 1.0 - ax2 * k * k;
    let scale = (1.0 - k * k) / den;
    Ok(EuclideanBall {
        center: x.coords().iter().map(|c| c * scale).collect(),
        radius: (1.0 - ax2) * k / den,
    })
}

/// `n` samples of the hyperbolic circle `S_ρ(x, R)` in the disk.
pub fn trace_rho_circle(x: &PointB, big_r: f64, n: usize) -> Result<Trace> {
    if n < 3 {
        return domain(format!("need at least 3 samples, got {n}"));
    }
    let xc = x.planar()?;
    let ball = rho_ball_euclidean(x, big_r)?;
    let c = Complex64::new(ball.center[0], ball.center[1]);
    let mut pts = Vec::with_capacity(n);
    for w in circle_points(c, ball.radius, n, xc.im.atan2(xc.re)) {
        let y = PointB::from_complex(w)?;
        pts.push((w, (metrics::rho_ball(x, &y)? - big_r).abs()));
    }
    Trace::from_planar(x, MetricKind::Rho, big_r, pts)
}

/// `n` samples of the Euclidean circle `S(x, r)`; every sample must stay
/// inside the unit disk.
pub fn trace_euclidean_circle(x: &PointB, r: f64, n: usize) -> Result<Trace> {
    if n < 3 || r.is_nan() || r <= 0.0 {
        return domain(format!("bad Euclidean circle: r = {r}, n = {n}"));
    }
    let xc = x.planar()?;
    let mut pts = Vec::with_capacity(n);
    for w in circle_points(xc, r, n, 0.0) {
        pts.push((w, ((w - xc).norm() - r).abs()));
    }
    Trace::from_planar(x, MetricKind::Euclidean, r, pts)
}
