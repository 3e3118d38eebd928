//! Independent oracles and sampling harnesses.
//!
//! [`brute_force_s`] evaluates the triangular ratio metric by plain
//! discretisation and shares no code with the production evaluator beyond
//! planar reduction. [`check_inclusion`] samples the sphere of one ball and
//! measures how far the other metric overshoots its radius there.
//! [`suite`] runs every inclusion statement over a grid and [`conjecture`]
//! sweeps the `s`/hyperbolic conjecture.

pub mod conjecture;
pub mod report;
pub mod suite;

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{domain, Result};
use crate::geometry::{reduce_to_plane, PointB};
use crate::metrics::{self, MetricKind, SolveOpts};
use crate::spheres::{self, circle_points};

pub use conjecture::{verify_conjecture, ConjectureCell, ConjectureReport};
pub use report::{render_conjecture, render_suite};
pub use suite::{explore_enclosing_below_threshold, verify_theorem_suite, ExploreCell, SuiteConfig};

/// Default pass tolerance of an inclusion check.
pub const TOL_DEFAULT: f64 = 1e-7;
/// Tolerance when the sampled sphere is a traced `s`-circle.
pub const TOL_TRACED_S: f64 = 1e-4;
/// Acceptance filter used when tracing `s`-circles for checks.
pub const TRACE_EPS: f64 = 1e-5;

/// `s(x, y)` from `M` uniform boundary samples plus one parabolic step.
pub fn brute_force_s(x: &PointB, y: &PointB, m: usize) -> Result<f64> {
    if m < 360 {
        return domain(format!("brute force needs M >= 360, got {m}"));
    }
    let pair = reduce_to_plane(x, y)?;
    let d = x.dist(y);
    if d == 0.0 {
        return Ok(0.0);
    }
    let f = |theta: f64| {
        let z = Complex64::new(theta.cos(), theta.sin());
        (pair.a - z).norm() + (z - pair.b).norm()
    };
    let h = TAU / m as f64;
    let (mut best_k, mut best) = (0, f64::INFINITY);
    for k in 0..m {
        let v = f(k as f64 * h);
        if v < best {
            best = v;
            best_k = k;
        }
    }
    let t0 = best_k as f64 * h;
    let (fm, fp) = (f(t0 - h), f(t0 + h));
    let curv = fm - 2.0 * best + fp;
    if curv > 0.0 {
        let shift = 0.5 * h * (fm - fp) / curv;
        best = best.min(f(t0 + shift));
    }
    Ok(d / best)
}

/// A metric ball `B_metric(center, radius)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallSpec {
    pub metric: MetricKind,
    pub center: PointB,
    pub radius: f64,
}

impl BallSpec {
    pub fn new(metric: MetricKind, center: PointB, radius: f64) -> Self {
        Self { metric, center, radius }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.metric {
            MetricKind::S | MetricKind::JStar => self.radius > 0.0 && self.radius < 1.0,
            _ => self.radius > 0.0 && self.radius.is_finite(),
        };
        if !ok {
            return domain(format!("{} radius {} out of range", self.metric, self.radius));
        }
        Ok(())
    }

    /// Balls of the bounded metrics with radius >= 1 are the whole unit ball.
    fn is_everything(&self) -> bool {
        matches!(self.metric, MetricKind::S | MetricKind::JStar) && self.radius >= 1.0
    }
}

/// The worst sample of an inclusion check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub center: Vec<f64>,
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub point: Vec<f64>,
}

/// Outcome of checking one claim, possibly over a grid of cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InclusionReport {
    pub claim: String,
    pub grid: Vec<usize>,
    /// Cells actually evaluated (vacuous or inapplicable cells are skipped).
    pub cells: usize,
    pub tolerance: f64,
    /// Maximum over samples of `outer metric - outer radius`.
    pub worst_violation: f64,
    pub witness: Option<Witness>,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl InclusionReport {
    pub(crate) fn empty(claim: impl Into<String>, grid: Vec<usize>, tolerance: f64) -> Self {
        Self {
            claim: claim.into(),
            grid,
            cells: 0,
            tolerance,
            worst_violation: f64::NEG_INFINITY,
            witness: None,
            pass: true,
            notes: Vec::new(),
        }
    }

    /// Fold one cell's worst sample into the report.
    pub(crate) fn absorb(&mut self, violation: f64, witness: Witness) {
        self.cells += 1;
        if violation > self.worst_violation || self.witness.is_none() {
            self.worst_violation = violation.max(self.worst_violation);
            self.witness = Some(witness);
        }
        self.pass = self.worst_violation <= self.tolerance;
    }

    pub(crate) fn fail_note(&mut self, note: String) {
        self.notes.push(note);
        self.pass = false;
    }
}

/// Points on the sphere of `spec`; `None` marks a sample outside the unit
/// disk (possible only for Euclidean spheres).
fn sphere_samples(spec: &BallSpec, samples: usize, opts: &SolveOpts) -> Result<Vec<Option<PointB>>> {
    let x = &spec.center;
    let trace = match spec.metric {
        MetricKind::S => spheres::trace_s_circle(x, spec.radius, samples, TRACE_EPS, opts)?,
        MetricKind::JStar => spheres::trace_jstar_circle(x, spec.radius, samples)?,
        MetricKind::J => spheres::trace_j_circle(x, spec.radius, samples)?,
        MetricKind::Rho => spheres::trace_rho_circle(x, spec.radius, samples)?,
        MetricKind::Euclidean => {
            let xc = x.planar()?;
            let phase = xc.im.atan2(xc.re);
            return Ok(circle_points(xc, spec.radius, samples, phase)
                .into_iter()
                .map(|w| PointB::from_complex(w).ok())
                .collect());
        }
    };
    Ok(trace.vertices.into_iter().map(Some).collect())
}

/// Tolerance for a check whose sampled sphere belongs to `inner`.
pub fn default_tolerance(inner: MetricKind) -> f64 {
    if inner == MetricKind::S {
        TOL_TRACED_S
    } else {
        TOL_DEFAULT
    }
}

/// Worst `(outer metric - outer radius)` over the sampled inner sphere, and
/// the point where it occurs. `None` when the outer ball is the whole disk.
pub(crate) fn worst_sample(
    inner: &BallSpec,
    outer: &BallSpec,
    samples: usize,
    opts: &SolveOpts,
) -> Result<Option<(f64, Vec<f64>)>> {
    inner.validate()?;
    if inner.center != outer.center {
        return domain("inclusion checks need a common centre");
    }
    if outer.is_everything() {
        return Ok(None);
    }
    outer.validate()?;
    let x = &inner.center;
    // even counts put samples on both ends of the axis L(0, x)
    let n = samples + samples % 2;
    let mut worst: Option<(f64, Vec<f64>)> = None;
    for p in sphere_samples(inner, n, opts)? {
        let (v, point) = match p {
            Some(y) => (metrics::distance(outer.metric, x, &y, opts)? - outer.radius, y.coords().to_vec()),
            None => (f64::INFINITY, Vec::new()),
        };
        if worst.as_ref().is_none_or(|w| v > w.0) {
            worst = Some((v, point));
        }
    }
    Ok(worst)
}

/// Check `inner ⊆ outer` by sampling the sphere of `inner` (planar centres).
pub fn check_inclusion(inner: &BallSpec, outer: &BallSpec, samples: usize, opts: &SolveOpts) -> Result<InclusionReport> {
    if samples < 100 {
        return domain(format!("need at least 100 samples, got {samples}"));
    }
    let claim = format!(
        "B_{}(x, {}) in B_{}(x, {})",
        inner.metric, inner.radius, outer.metric, outer.radius
    );
    let mut rep = InclusionReport::empty(claim, vec![1], default_tolerance(inner.metric));
    match worst_sample(inner, outer, samples, opts)? {
        Some((v, point)) => rep.absorb(
            v,
            Witness {
                center: inner.center.coords().to_vec(),
                inner_radius: inner.radius,
                outer_radius: outer.radius,
                point,
            },
        ),
        None => rep.notes.push("outer ball is the whole unit ball".into()),
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inclusions;

    fn p(c: &[f64]) -> PointB {
        PointB::new(c.to_vec()).unwrap()
    }

    #[test]
    fn brute_force_closed_forms() {
        let v = brute_force_s(&p(&[0.6, 0.0]), &p(&[-0.2, 0.0]), 10_000).unwrap();
        assert!((v - 0.5).abs() < 1e-6);
        let v = brute_force_s(&p(&[0.3, 0.4]), &p(&[0.3, -0.4]), 10_000).unwrap();
        assert!((v - 0.4961389383568338).abs() < 1e-6);
        assert_eq!(brute_force_s(&p(&[0.1, 0.2]), &p(&[0.1, 0.2]), 360).unwrap(), 0.0);
        assert!(brute_force_s(&p(&[0.1, 0.2]), &p(&[0.0, 0.2]), 100).is_err());
    }

    #[test]
    fn jstar_ball_inside_s_ball() {
        let x = p(&[0.3, 0.0]);
        let t = 0.5;
        let inner = BallSpec::new(MetricKind::JStar, x.clone(), t / (1.0 + t));
        let outer = BallSpec::new(MetricKind::S, x, t);
        let rep = check_inclusion(&inner, &outer, 400, &SolveOpts::default()).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn s_ball_inside_its_euclidean_hull_is_tight() {
        let x = p(&[0.6, 0.0]);
        let b = inclusions::s_vs_euclid(&x, 0.5).unwrap();
        let inner = BallSpec::new(MetricKind::S, x.clone(), 0.5);
        let outer = BallSpec::new(MetricKind::Euclidean, x.clone(), b.outer_radius);
        let rep = check_inclusion(&inner, &outer, 2000, &SolveOpts::default()).unwrap();
        assert!(rep.pass);
        assert!(rep.worst_violation.abs() < 1e-9, "{}", rep.worst_violation);
        let w = rep.witness.unwrap();
        assert!((w.point[0] + 0.2).abs() < 1e-6);

        let inner = BallSpec::new(MetricKind::Euclidean, x.clone(), b.inner_radius + 0.01);
        let outer = BallSpec::new(MetricKind::S, x, 0.5);
        let rep = check_inclusion(&inner, &outer, 400, &SolveOpts::default()).unwrap();
        assert!(!rep.pass);
    }

    #[test]
    fn euclidean_sample_outside_the_disk_is_a_violation() {
        let x = p(&[0.6, 0.0]);
        let inner = BallSpec::new(MetricKind::Euclidean, x.clone(), 0.5);
        let outer = BallSpec::new(MetricKind::Rho, x, 50.0);
        let rep = check_inclusion(&inner, &outer, 100, &SolveOpts::default()).unwrap();
        assert_eq!(rep.worst_violation, f64::INFINITY);
        assert!(!rep.pass);
    }

    #[test]
    fn check_rejects_bad_specs() {
        let o = SolveOpts::default();
        let x = p(&[0.1, 0.0]);
        let a = BallSpec::new(MetricKind::S, x.clone(), 1.5);
        let b = BallSpec::new(MetricKind::Rho, x.clone(), 1.0);
        assert!(check_inclusion(&a, &b, 100, &o).is_err());
        let c = BallSpec::new(MetricKind::Rho, p(&[0.2, 0.0]), 1.0);
        assert!(check_inclusion(&b, &c, 100, &o).is_err());
        assert!(check_inclusion(&b, &b, 10, &o).is_err());
    }
}
