//! Points of the unit ball, reduction of a point pair to the complex plane,
//! and the angle utilities shared by the rest of the crate.
//!
//! All four metrics of this crate are invariant under rotations about the
//! origin, so a pair `(x, y)` in any dimension can be moved into the plane
//! spanned by `0, x, y` without changing any distance. [`reduce_to_plane`]
//! performs that move and remembers the orthonormal frame so that planar
//! results (for example the optimal boundary point of the triangular ratio
//! metric) can be lifted back.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Tolerance on `|z| = 1` for points flagged as boundary points.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Vectors shorter than this are treated as zero by [`angle_at`].
pub const DEGENERATE_TOL: f64 = 1e-15;

/// A point of the closed unit ball in `n >= 2` dimensions.
///
/// Interior points satisfy `|x| < 1`. Boundary points (`|z| = 1` up to
/// [`BOUNDARY_TOL`]) share the representation and carry `boundary = true`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointB {
    coords: Vec<f64>,
    boundary: bool,
}

impl PointB {
    /// An interior point. Fails unless `n >= 2` and `|x| < 1`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        check_dim(&coords)?;
        let r = norm(&coords);
        if !r.is_finite() || r >= 1.0 {
            return domain(format!("|x| = {r} is not inside the open unit ball"));
        }
        Ok(Self { coords, boundary: false })
    }

    /// A point of the unit sphere. Fails unless `||z| - 1| <= 1e-12`.
    pub fn boundary(coords: Vec<f64>) -> Result<Self> {
        check_dim(&coords)?;
        let r = norm(&coords);
        if (r - 1.0).abs() > BOUNDARY_TOL {
            return domain(format!("|z| = {r} is not on the unit sphere"));
        }
        Ok(Self { coords, boundary: true })
    }

    pub fn origin(dim: usize) -> Result<Self> {
        Self::new(vec![0.0; dim])
    }

    /// A planar interior point from a complex number.
    pub fn from_complex(w: Complex64) -> Result<Self> {
        Self::new(vec![w.re, w.im])
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }

    pub fn is_boundary(&self) -> bool {
        self.boundary
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    /// The point as a complex number, if it is planar.
    pub fn to_complex(&self) -> Option<Complex64> {
        match self.coords[..] {
            [re, im] => Some(Complex64::new(re, im)),
            _ => None,
        }
    }

    /// The planar coordinates, or a domain error for `n != 2`.
    pub fn planar(&self) -> Result<Complex64> {
        self.to_complex()
            .ok_or_else(|| Error::Domain(format!("expected a planar point, got dimension {}", self.dim())))
    }

    /// Euclidean distance to another point of the same dimension.
    pub fn dist(&self, other: &PointB) -> f64 {
        dist(&self.coords, &other.coords)
    }
}

fn check_dim(coords: &[f64]) -> Result<()> {
    if coords.len() < 2 {
        return domain(format!("dimension {} < 2", coords.len()));
    }
    if coords.iter().any(|c| !c.is_finite()) {
        return domain("non-finite coordinate");
    }
    Ok(())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

/// Orthonormal pair spanning a plane through the origin.
#[derive(Debug, Clone, PartialEq)]
struct Frame {
    e1: Vec<f64>,
    e2: Vec<f64>,
}

impl Frame {
    fn lift(&self, w: Complex64) -> Vec<f64> {
        self.e1.iter().zip(&self.e2).map(|(a, b)| w.re * a + w.im * b).collect()
    }
}

/// A point pair moved into the complex plane: `a = |x|` on the non-negative
/// real axis and `b` in the closed upper half-plane with `|b| = |y|` and
/// `|a - b| = |x - y|`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarPair {
    pub a: Complex64,
    pub b: Complex64,
    frame: Frame,
}

impl PlanarPair {
    /// Map a point of the reduction plane back to the original space.
    pub fn lift(&self, w: Complex64) -> Vec<f64> {
        self.frame.lift(w)
    }
}

/// Rotate `(x, y)` into the plane through `0, x, y`; see [`PlanarPair`].
pub fn reduce_to_plane(x: &PointB, y: &PointB) -> Result<PlanarPair> {
    for p in [x, y] {
        if p.is_boundary() || p.norm() >= 1.0 {
            return domain(format!("|x| = {} is not inside the open unit ball", p.norm()));
        }
    }
    if x.dim() != y.dim() {
        return domain(format!("dimension mismatch: {} vs {}", x.dim(), y.dim()));
    }
    let n = x.dim();
    let xn = x.norm();
    let yn = y.norm();

    let e1: Vec<f64> = if xn > 0.0 {
        x.coords().iter().map(|c| c / xn).collect()
    } else if yn > 0.0 {
        y.coords().iter().map(|c| c / yn).collect()
    } else {
        unit(n, 0)
    };

    let along = dot(y.coords(), &e1);
    let resid: Vec<f64> = y.coords().iter().zip(&e1).map(|(c, e)| c - along * e).collect();
    let mut across = norm(&resid);
    // residuals at rounding level carry no direction
    if across <= 4.0 * f64::EPSILON * yn {
        across = 0.0;
    }
    let e2 = if across > 0.0 {
        resid.iter().map(|c| c / across).collect()
    } else {
        orthogonal_unit(&e1)
    };

    Ok(PlanarPair {
        a: Complex64::new(xn, 0.0),
        b: Complex64::new(along, across),
        frame: Frame { e1, e2 },
    })
}

fn unit(n: usize, k: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[k] = 1.0;
    v
}

/// A unit vector orthogonal to the unit vector `e`.
fn orthogonal_unit(e: &[f64]) -> Vec<f64> {
    let k = e
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(k, _)| k)
        .unwrap_or(0);
    let mut v = unit(e.len(), k);
    let c = e[k];
    for (vi, ei) in v.iter_mut().zip(e) {
        *vi -= c * ei;
    }
    let r = norm(&v);
    v.iter_mut().for_each(|vi| *vi /= r);
    v
}

/// The angle in `[0, π]` at `vertex` between the rays towards `p` and `q`.
///
/// Fails with [`Error::Degenerate`] when either ray is shorter than
/// [`DEGENERATE_TOL`].
pub fn angle_at(vertex: &[f64], p: &[f64], q: &[f64]) -> Result<f64> {
    let u: Vec<f64> = p.iter().zip(vertex).map(|(a, b)| a - b).collect();
    let v: Vec<f64> = q.iter().zip(vertex).map(|(a, b)| a - b).collect();
    let (nu, nv) = (norm(&u), norm(&v));
    if nu < DEGENERATE_TOL || nv < DEGENERATE_TOL {
        return Err(Error::Degenerate(format!(
            "angle arm of length {:.3e}",
            nu.min(nv)
        )));
    }
    // the arccosine of a clamped cosine loses half the digits near 0 and π,
    // where sharpness witnesses sit; the wedge/dot form keeps them
    Ok(wedge_norm(&u, &v).atan2(dot(&u, &v)))
}

/// Norm of the wedge product `u ∧ v`.
pub fn wedge_norm(u: &[f64], v: &[f64]) -> f64 {
    let n = u.len();
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let w = u[i] * v[j] - u[j] * v[i];
            acc += w * w;
        }
    }
    acc.sqrt()
}

/// Planar convenience wrapper around [`angle_at`].
pub fn angle_at_c(vertex: Complex64, p: Complex64, q: Complex64) -> Result<f64> {
    angle_at(&[vertex.re, vertex.im], &[p.re, p.im], &[q.re, q.im])
}
