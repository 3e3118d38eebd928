//! Surfaces of revolution from planar traces.
//!
//! Every metric here is invariant under rotations fixing the line `L(0, x)`,
//! so the sphere `S_d(x, r)` in three dimensions is the planar circle spun
//! about that line.

use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashSet;
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use super::{argument_from, Trace};
use crate::error::{domain, Result};

/// Profile points closer than this to the axis are treated as poles.
const AXIS_TOL: f64 = 1e-12;

/// A closed triangulated surface.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    /// Counter-clockwise seen from outside.
    pub faces: Vec<[usize; 3]>,
}

impl Mesh {
    /// `v x y z` records followed by 1-based `f i j k` records.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let _ = writeln!(out, "v {} {} {}", v[0], v[1], v[2]);
        }
        for f in &self.faces {
            let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        let mut edges = HashSet::new();
        for f in &self.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        edges.len()
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }
}

/// Revolve a planar trace about `L(0, x)` in `m` uniform steps.
///
/// The profile is the half of the trace on one side of the axis; its two
/// axis crossings become the poles. For `x = 0` the axis runs through the
/// first vertex, and the antipodal pole is supplied when the trace lacks it.
pub fn revolve_3d(trace: &Trace, m: usize) -> Result<Mesh> {
    if m < 3 {
        return domain(format!("need at least 3 revolution steps, got {m}"));
    }
    let x = trace.center.planar()?;
    let pts: Vec<Complex64> = trace
        .vertices
        .iter()
        .map(|v| v.planar())
        .collect::<Result<_>>()?;
    if pts.len() < 3 {
        return domain("trace too short to revolve");
    }

    let axis = if x.norm() > 0.0 { x / x.norm() } else { pts[0] / pts[0].norm() };
    // axis-aligned frame: along = Re(w conj(axis)), height = Im(w conj(axis))
    let local: Vec<Complex64> = pts.iter().map(|w| w * axis.conj()).collect();
    let xl = x * axis.conj();

    let mut north: Option<Complex64> = None;
    let mut south: Option<Complex64> = None;
    let mut profile: Vec<(f64, Complex64)> = Vec::new();
    for &w in &local {
        if w.im.abs() <= AXIS_TOL {
            if w.re > xl.re {
                north = Some(north.map_or(w, |n: Complex64| if w.re > n.re { w } else { n }));
            } else {
                south = Some(south.map_or(w, |s: Complex64| if w.re < s.re { w } else { s }));
            }
        } else if w.im > 0.0 {
            profile.push((argument_from(xl, w), w));
        }
    }
    if south.is_none() && x.norm() == 0.0 {
        south = north.map(|n| -n);
    }
    let (Some(north), Some(south)) = (north, south) else {
        return domain("trace has no vertices on the revolution axis");
    };
    if profile.is_empty() {
        return domain("trace has no vertices off the revolution axis");
    }
    profile.sort_by(|a, b| a.0.total_cmp(&b.0));
    debug_assert!(profile.iter().all(|p| p.0 > 0.0 && p.0 < PI));

    let e1 = [axis.re, axis.im, 0.0];
    let e2 = [-axis.im, axis.re, 0.0];
    let e3 = [0.0, 0.0, 1.0];
    let place = |along: f64, h: f64, psi: f64| -> [f64; 3] {
        let (s, c) = psi.sin_cos();
        std::array::from_fn(|i| along * e1[i] + h * (c * e2[i] + s * e3[i]))
    };

    let mut vertices = vec![place(north.re, 0.0, 0.0)];
    for &(_, w) in &profile {
        for j in 0..m {
            vertices.push(place(w.re, w.im, TAU * j as f64 / m as f64));
        }
    }
    let south_idx = vertices.len();
    vertices.push(place(south.re, 0.0, 0.0));

    let ring = |r: usize, j: usize| 1 + r * m + j % m;
    let rings = profile.len();
    let mut faces = Vec::with_capacity(2 * m * rings);
    for j in 0..m {
        faces.push([0, ring(0, j), ring(0, j + 1)]);
    }
    for r in 0..rings - 1 {
        for j in 0..m {
            let (a, b) = (ring(r, j), ring(r, j + 1));
            let (c, d) = (ring(r + 1, j), ring(r + 1, j + 1));
            faces.push([a, d, b]);
            faces.push([a, c, d]);
        }
    }
    for j in 0..m {
        faces.push([south_idx, ring(rings - 1, j + 1), ring(rings - 1, j)]);
    }
    Ok(Mesh { vertices, faces })
}
