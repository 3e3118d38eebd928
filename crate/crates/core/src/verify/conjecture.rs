//! Sweep of the conjectured sharp `s`/hyperbolic inclusion radii.
//!
//! For each cell `(|x|, t)` the circle `S_s(x, t)` is traced and the
//! hyperbolic distance from `x` is minimised and maximised over it. The
//! conjecture says these extremes are exactly
//! `R0 = log(1 + 4t/((1 - t)(1 + |x|)))` and `R1 = 2 arsh(2t/sqrt(l(t, |x|)))`.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::geometry::PointB;
use crate::inclusions::{self, Direction};
use crate::metrics::{self, SolveOpts};
use crate::spheres::trace_s_circle;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureCell {
    pub norm: f64,
    pub t: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    pub r0_conjectured: f64,
    pub r1_conjectured: f64,
    /// Vertices of the trace used (all passed the residual filter).
    pub vertices: usize,
    /// `max(|rho_min - R0|, |rho_max - R1|)`.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub grid_n: usize,
    pub trace_n: usize,
    pub eps: f64,
    /// Row-major over `|x|` then `t`; the `|x| = 0` column comes first.
    pub cells: Vec<ConjectureCell>,
    /// Cells where `l(t, |x|) <= 0`, as `(|x|, t)`.
    pub skipped: Vec<(f64, f64)>,
    pub max_deviation: f64,
}

impl ConjectureReport {
    pub fn origin_cells(&self) -> impl Iterator<Item = &ConjectureCell> {
        self.cells.iter().filter(|c| c.norm == 0.0)
    }
}

/// `n` points evenly spread over `[0.05, 0.95]`.
pub fn sweep_axis(n: usize) -> Vec<f64> {
    (0..n).map(|i| 0.05 + 0.9 * i as f64 / (n - 1) as f64).collect()
}

fn cell(norm: f64, t: f64, trace_n: usize, eps: f64, opts: &SolveOpts) -> Result<Option<ConjectureCell>> {
    let x = PointB::new(vec![norm, 0.0])?;
    if inclusions::l_factor(t, norm) <= 0.0 {
        return Ok(None);
    }
    let bound = inclusions::conjecture_bounds(&x, t, Direction::FixFirst)?;
    let trace = trace_s_circle(&x, t, trace_n, eps, opts)?;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in &trace.vertices {
        let r = metrics::rho_ball(&x, v)?;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    let deviation = (lo - bound.inner_radius).abs().max((hi - bound.outer_radius).abs());
    Ok(Some(ConjectureCell {
        norm,
        t,
        rho_min: lo,
        rho_max: hi,
        r0_conjectured: bound.inner_radius,
        r1_conjectured: bound.outer_radius,
        vertices: trace.len(),
        deviation,
    }))
}

/// Sweep a `grid_n × grid_n` grid over `(0.05, 0.95)²` plus the `|x| = 0`
/// column at the same radii.
pub fn verify_conjecture(grid_n: usize, trace_n: usize, eps: f64, opts: &SolveOpts) -> Result<ConjectureReport> {
    if grid_n < 5 {
        return domain(format!("grid_n = {grid_n} < 5"));
    }
    let axis = sweep_axis(grid_n);
    let norms = std::iter::once(0.0).chain(axis.iter().copied());
    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    for norm in norms {
        for &t in &axis {
            match cell(norm, t, trace_n, eps, opts)? {
                Some(c) => cells.push(c),
                None => skipped.push((norm, t)),
            }
        }
    }
    let max_deviation = cells.iter().map(|c| c.deviation).fold(0.0, f64::max);
    Ok(ConjectureReport { grid_n, trace_n, eps, cells, skipped, max_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_cell_is_exact() {
        let c = cell(0.0, 0.5, 64, 1e-5, &SolveOpts::default()).unwrap().unwrap();
        let exact = 5f64.ln();
        assert!((c.rho_min - exact).abs() < 1e-12);
        assert!((c.rho_max - exact).abs() < 1e-12);
        assert!((c.r0_conjectured - exact).abs() < 1e-12);
        assert!((c.r1_conjectured - exact).abs() < 1e-12);
    }

    #[test]
    fn off_centre_minimum() {
        let c = cell(0.6, 0.5, 400, 1e-5, &SolveOpts::default()).unwrap().unwrap();
        assert!((c.rho_min - 3.5f64.ln()).abs() < 1e-3);
        assert!(c.deviation < 1e-3, "{c:?}");
    }

    #[test]
    fn small_sweep() {
        let rep = verify_conjecture(5, 200, 1e-5, &SolveOpts::default()).unwrap();
        assert_eq!(rep.cells.len() + rep.skipped.len(), 30);
        assert_eq!(rep.origin_cells().count(), 5);
        assert!(rep.max_deviation < 1e-3);
        assert!(verify_conjecture(4, 200, 1e-5, &SolveOpts::default()).is_err());
    }
}
