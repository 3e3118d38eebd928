//! Hyperbolic-type metrics of the unit ball.
//!
//! * `s`, the triangular ratio metric (see [`triangular`]),
//! * `j(x, y) = log(1 + |x - y| / min{1 - |x|, 1 - |y|})`,
//! * `j*(x, y) = th(j/2) = |x - y| / (|x - y| + 2 min{1 - |x|, 1 - |y|})`,
//! * `ρ(x, y) = 2 arsh(|x - y| / sqrt((1 - |x|²)(1 - |y|²)))`.

pub mod triangular;

use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::geometry::PointB;

pub use triangular::{
    collinear_bound, cross_norm, s_ball, s_collinear, s_conjugate, s_value, SValue, SolveOpts,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MetricKind {
    S,
    J,
    JStar,
    Rho,
    Euclidean,
}

impl MetricKind {
    pub const ALL: [MetricKind; 5] =
        [MetricKind::S, MetricKind::J, MetricKind::JStar, MetricKind::Rho, MetricKind::Euclidean];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::S => "s",
            MetricKind::J => "j",
            MetricKind::JStar => "jstar",
            MetricKind::Rho => "rho",
            MetricKind::Euclidean => "euclid",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(MetricKind::S),
            "j" => Ok(MetricKind::J),
            "jstar" | "j*" => Ok(MetricKind::JStar),
            "rho" => Ok(MetricKind::Rho),
            "euclid" | "euclidean" => Ok(MetricKind::Euclidean),
            other => domain(format!("unknown metric '{other}'")),
        }
    }
}

fn interior_pair(x: &PointB, y: &PointB) -> Result<()> {
    if x.dim() != y.dim() {
        return domain(format!("dimension mismatch: {} vs {}", x.dim(), y.dim()));
    }
    for p in [x, y] {
        if p.is_boundary() || p.norm() >= 1.0 {
            return domain(format!("|x| = {} is not inside the open unit ball", p.norm()));
        }
    }
    Ok(())
}

/// `min{d(x), d(y)}` with `d(x) = 1 - |x|`.
fn min_boundary_distance(x: &PointB, y: &PointB) -> f64 {
    (1.0 - x.norm()).min(1.0 - y.norm())
}

/// The distance ratio metric.
pub fn j_ball(x: &PointB, y: &PointB) -> Result<f64> {
    interior_pair(x, y)?;
    Ok((x.dist(y) / min_boundary_distance(x, y)).ln_1p())
}

/// The j*-metric.
pub fn jstar_ball(x: &PointB, y: &PointB) -> Result<f64> {
    interior_pair(x, y)?;
    let d = x.dist(y);
    Ok(d / (d + 2.0 * min_boundary_distance(x, y)))
}

/// The hyperbolic metric of the unit ball.
pub fn rho_ball(x: &PointB, y: &PointB) -> Result<f64> {
    interior_pair(x, y)?;
    let (ax, ay) = (x.norm(), y.norm());
    let den = ((1.0 - ax * ax) * (1.0 - ay * ay)).sqrt();
    Ok(2.0 * (x.dist(y) / den).asinh())
}

/// Evaluate any metric. For `s`, a missed residual target is not an error
/// here; the best value found is returned (see [`s_value`]).
pub fn distance(kind: MetricKind, x: &PointB, y: &PointB, opts: &SolveOpts) -> Result<f64> {
    match kind {
        MetricKind::S => s_value(x, y, opts),
        MetricKind::J => j_ball(x, y),
        MetricKind::JStar => jstar_ball(x, y),
        MetricKind::Rho => rho_ball(x, y),
        MetricKind::Euclidean => {
            interior_pair(x, y)?;
            Ok(x.dist(y))
        }
    }
}
